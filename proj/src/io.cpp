#include "fusionkit/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fusionkit/errors.hpp"

namespace fusionkit {

json read_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw InputError(path + ": malformed JSON at byte " + std::to_string(e.byte) + ": " +
                         e.what());
    }
}

namespace {

template <class T>
T field(const json& j, const char* key, const char* what)
{
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string(what) + ": missing field \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InputError(std::string(what) + ": field \"" + key + "\" has the wrong type (" +
                         e.what() + ")");
    }
}

} // namespace

FusionRing ring_from_json(const json& j)
{
    auto labels = field<std::vector<std::string>>(j, "labels", "fusion ring");
    auto dual = field<std::vector<int>>(j, "dual", "fusion ring");
    auto rows = field<std::vector<std::vector<int>>>(j, "N", "fusion ring");
    std::vector<std::array<int, 4>> triples;
    triples.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.size() != 4)
            throw InputError("fusion ring: each N entry must be [i, j, k, value]");
        triples.push_back({r[0], r[1], r[2], r[3]});
    }
    return FusionRing::from_triples(std::move(labels), std::move(dual), triples);
}

json ring_to_json(const FusionRing& ring)
{
    json n = json::array();
    for (const auto& t : ring.triples())
        n.push_back({t[0], t[1], t[2], t[3]});
    return json{{"labels", ring.labels()}, {"dual", ring.duals()}, {"N", n}};
}

FusionRing load_ring(const std::string& path)
{
    return ring_from_json(read_json_file(path));
}

PointedCochain cochain_from_json(const json& j)
{
    PointedCochain chi;
    const long long order = field<long long>(j, "group_order", "cochain");
    if (order < 1)
        throw InputError("cochain: group_order must be positive");
    chi.group_order = std::size_t(order);
    chi.values.assign(chi.group_order * chi.group_order, 0);
    for (const auto& r : field<std::vector<std::vector<int>>>(j, "values", "cochain")) {
        if (r.size() != 3)
            throw InputError("cochain: each value must be [a, b, invertible_index]");
        if (r[0] < 0 || r[1] < 0 || r[0] >= order || r[1] >= order)
            throw InputError("cochain: group element out of range in [" + std::to_string(r[0]) +
                             ", " + std::to_string(r[1]) + "]");
        chi.values[std::size_t(r[0]) * chi.group_order + r[1]] = r[2];
    }
    if (j.contains("symmetric"))
        chi.symmetric_asserted = field<bool>(j, "symmetric", "cochain");
    return chi;
}

PointedCochain load_cochain(const std::string& path)
{
    return cochain_from_json(read_json_file(path));
}

namespace {

double rational(const json& v)
{
    if (v.is_number())
        return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos)
                return std::stod(s);
            const double den = std::stod(s.substr(slash + 1));
            if (den == 0)
                throw InputError("modular data: zero denominator in \"" + s + "\"");
            return std::stod(s.substr(0, slash)) / den;
        } catch (const std::logic_error&) {
            throw InputError("modular data: cannot parse coefficient \"" + s + "\"");
        }
    }
    throw InputError("modular data: coefficient must be a number or \"a/b\" string");
}

Complex exact_entry(const json& terms, int order, const std::string& where)
{
    if (!terms.is_array())
        throw InputError("modular data: " + where + " must be a list of [coefficient, exponent]");
    Complex z = 0;
    for (const auto& t : terms) {
        if (!t.is_array() || t.size() != 2 || !t[1].is_number_integer())
            throw InputError("modular data: " + where + " has a malformed term");
        const long long e = t[1].get<long long>();
        z += rational(t[0]) * std::polar(1.0, 2.0 * std::numbers::pi * double(e % order) / order);
    }
    return z;
}

Complex float_entry(const json& v, const std::string& where)
{
    if (v.is_number())
        return v.get<double>();
    if (!v.is_object() || !v.contains("re"))
        throw InputError("modular data: " + where + " must be {\"re\": .., \"im\": ..}");
    try {
        return {v.at("re").get<double>(), v.value("im", 0.0)};
    } catch (const json::exception& e) {
        throw InputError("modular data: " + where + ": " + e.what());
    }
}

} // namespace

ModularData modular_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("S") || !j.contains("T"))
        throw InputError("modular data: needs \"S\" and \"T\"");
    const bool exact = j.contains("root_order");
    int order = 0;
    if (exact) {
        order = field<int>(j, "root_order", "modular data");
        if (order < 1)
            throw InputError("modular data: root_order must be positive");
    }
    auto entry = [&](const json& v, const std::string& where) {
        return exact ? exact_entry(v, order, where) : float_entry(v, where);
    };
    const json& S = j.at("S");
    const json& T = j.at("T");
    if (!S.is_array() || !T.is_array())
        throw InputError("modular data: S and T must be arrays");
    ModularData md;
    const std::size_t n = S.size();
    md.S.resize(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        if (!S[a].is_array() || S[a].size() != n)
            throw InputError("modular data: S row " + std::to_string(a) + " has the wrong length");
        for (std::size_t b = 0; b < n; ++b)
            md.S(a, b) = entry(S[a][b], "S[" + std::to_string(a) + "][" + std::to_string(b) + "]");
    }
    for (std::size_t a = 0; a < T.size(); ++a)
        md.T.push_back(entry(T[a], "T[" + std::to_string(a) + "]"));
    if (j.contains("tolerance"))
        md.tolerance = field<double>(j, "tolerance", "modular data");
    if (j.contains("labels"))
        md.labels = field<std::vector<std::string>>(j, "labels", "modular data");
    check_shape(md);
    return md;
}

json modular_to_json(const ModularData& md)
{
    auto cj = [](Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; };
    json S = json::array();
    for (Eigen::Index a = 0; a < md.S.rows(); ++a) {
        json row = json::array();
        for (Eigen::Index b = 0; b < md.S.cols(); ++b)
            row.push_back(cj(md.S(a, b)));
        S.push_back(row);
    }
    json T = json::array();
    for (const auto& t : md.T)
        T.push_back(cj(t));
    json out{{"S", S}, {"T", T}, {"tolerance", md.tolerance}};
    if (!md.labels.empty())
        out["labels"] = md.labels;
    return out;
}

ModularData load_modular(const std::string& path)
{
    return modular_from_json(read_json_file(path));
}

FiniteGroup group_from_json(const json& j)
{
    if (!j.is_object())
        throw InputError("group: expected a JSON object");
    if (j.contains("omega") || j.contains("cocycle"))
        throw NotApplicableError("group: twisted doubles (nontrivial omega) are unsupported");
    if (j.contains("permutation_generators"))
        return FiniteGroup::from_permutations(
            field<std::vector<std::vector<int>>>(j, "permutation_generators", "group"));
    auto table = field<std::vector<std::vector<int>>>(j, "table", "group");
    if (j.contains("order") && field<std::size_t>(j, "order", "group") != table.size())
        throw InputError("group: order does not match the table size");
    return FiniteGroup(std::move(table));
}

FiniteGroup load_group(const std::string& path)
{
    return group_from_json(read_json_file(path));
}

namespace {

std::vector<std::array<int, 4>> quads(const json& rows, const char* what)
{
    std::vector<std::array<int, 4>> out;
    for (const auto& r : rows) {
        if (!r.is_array() || r.size() != 4)
            throw InputError(std::string("search spec: each ") + what + " entry must be [i, j, k, value]");
        out.push_back({r[0].get<int>(), r[1].get<int>(), r[2].get<int>(), r[3].get<int>()});
    }
    return out;
}

} // namespace

SearchSpec search_spec_from_json(const json& j)
{
    SearchSpec s;
    try {
        s.labels = field<std::vector<std::string>>(j, "labels", "search spec");
        for (const auto& d : field<json>(j, "dual", "search spec"))
            s.dual.push_back(d.is_null() ? -1 : d.get<int>());
        s.dims = field<std::vector<long long>>(j, "dims", "search spec");
        if (j.contains("grading")) {
            const json& g = j.at("grading");
            if (g.is_array()) {
                s.grading = g.get<std::vector<int>>();
            } else {
                s.grading = field<std::vector<int>>(g, "assignment", "grading");
                if (g.contains("table"))
                    s.grading_table = field<std::vector<std::vector<int>>>(g, "table", "grading");
            }
        }
        if (j.contains("pointed_action"))
            for (const auto& a : j.at("pointed_action"))
                s.pointed_action.push_back({field<int>(a, "generator", "pointed_action"),
                                            field<std::vector<int>>(a, "permutation", "pointed_action")});
        if (j.contains("commutative"))
            s.commutative = field<bool>(j, "commutative", "search spec");
        if (j.contains("N"))
            s.fixed = quads(j.at("N"), "N");
        if (j.contains("free")) {
            s.free.emplace();
            for (const auto& c : j.at("free")) {
                if (!c.is_array() || c.size() != 3)
                    throw InputError("search spec: each free entry must be [i, j, k]");
                s.free->push_back({c[0].get<int>(), c[1].get<int>(), c[2].get<int>()});
            }
        }
        if (j.contains("bounds")) {
            if (j.at("bounds").is_number())
                s.global_bound = j.at("bounds").get<int>();
            else
                s.bounds = quads(j.at("bounds"), "bounds");
        }
        if (j.contains("relabel_group"))
            s.relabel_group = field<std::vector<std::vector<int>>>(j, "relabel_group", "search spec");
    } catch (const json::exception& e) {
        throw InputError(std::string("search spec: wrong type (") + e.what() + ")");
    }
    return s;
}

json search_spec_to_json(const SearchSpec& s)
{
    json j{{"labels", s.labels}, {"dims", s.dims}, {"commutative", s.commutative}};
    json dual = json::array();
    for (int d : s.dual)
        dual.push_back(d < 0 ? json(nullptr) : json(d));
    j["dual"] = dual;
    if (!s.grading.empty()) {
        j["grading"] = {{"assignment", s.grading}};
        if (!s.grading_table.empty())
            j["grading"]["table"] = s.grading_table;
    }
    json acts = json::array();
    for (const auto& a : s.pointed_action)
        acts.push_back({{"generator", a.generator}, {"permutation", a.permutation}});
    j["pointed_action"] = acts;
    j["N"] = s.fixed;
    if (s.free)
        j["free"] = *s.free;
    if (s.global_bound)
        j["bounds"] = *s.global_bound;
    else if (!s.bounds.empty())
        j["bounds"] = s.bounds;
    if (s.relabel_group)
        j["relabel_group"] = *s.relabel_group;
    return j;
}

SearchSpec load_search_spec(const std::string& path)
{
    return search_spec_from_json(read_json_file(path));
}

json classification_to_json(const Classification& c)
{
    const DimensionProfile& pr = c.report.profile;
    json cases = json::array();
    for (const auto& v : c.report.cases) {
        json e{{"pt_dim", v.pt_dim},
               {"verdict", verdict_name(v.verdict)},
               {"rule", v.rule},
               {"rule_name", v.rule_name},
               {"case", v.case_label},
               {"witness", v.witness},
               {"cited", v.cited},
               {"corroborating", v.corroborating},
               {"type_solutions", v.type_solutions}};
        if (v.verdict == Verdict::Survives)
            e["survivor_label"] = v.survivor_label;
        cases.push_back(std::move(e));
    }
    return json{{"profile", {{"p", pr.p}, {"q", pr.q}, {"shape", pr.shape_name()}, {"N", pr.global()}}},
                {"cases", cases},
                {"overall", c.overall},
                {"survivors", c.survivors}};
}

std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

} // namespace fusionkit
