#include "fusionkit/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fusionkit/errors.hpp"
#include "fusionkit/grading.hpp"
#include "fusionkit/io.hpp"
#include "fusionkit/report.hpp"
#include "fusionkit/ring_search.hpp"

namespace fusionkit {

namespace {

struct Options {
    std::optional<double> tol;
    bool json = false;
    std::string out_dir;

    std::string file;
    long long p = 0, q = 0;
    std::string shape;
    std::string spec, group, ring, cochain;
    unsigned workers = 1;
    std::uint64_t node_cap = 10'000'000;
    bool no_action = false;
};

std::string num(double x)
{
    if (std::abs(x) < 1e-12)
        x = 0.0;
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

std::string complex_str(Complex z, double tol)
{
    if (std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z)))
        return num(z.real());
    std::ostringstream os;
    os << num(z.real()) << (z.imag() < 0 ? " - " : " + ") << num(std::abs(z.imag())) << "i";
    return os.str();
}

json complex_json(Complex z)
{
    return {{"re", z.real()}, {"im", z.imag()}};
}

std::vector<std::string> labels_of(const FusionRing& ring, const SubBasis& sub)
{
    std::vector<std::string> out;
    for (int i : sub.members)
        out.push_back(ring.label(i));
    return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i)
        s += (i ? sep : "") + xs[i];
    return s;
}

void digest(Report& report, const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return;
    std::ostringstream buf;
    buf << in.rdbuf();
    report.inputs.push_back({path, fnv1a_hex(buf.str())});
}

void write_json(const std::string& dir, const std::string& name, const json& j)
{
    if (dir.empty())
        return;
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write " + path.string());
    out << j.dump(1) << "\n";
}

std::optional<std::string> key_if_small(const FusionRing& ring)
{
    if (ring.rank() > 16)
        return std::nullopt;
    return canonical_form(ring).key;
}

json certificate_json(const ModularData& md, const FusionRing& ring, Report& report,
                      bool as_check)
{
    json j;
    try {
        const Certificate c = group_theoretical_certificate(md);
        j = {{"found", c.found}, {"lattice_size", c.lattice_size}};
        std::vector<std::string> symmetric;
        for (const auto& s : c.symmetric)
            symmetric.push_back("{" + join(labels_of(ring, s.sub), ",") + "}");
        j["symmetric_subbases"] = symmetric;
        if (c.found) {
            j["L"] = labels_of(ring, c.L);
            j["L_prime"] = labels_of(ring, c.L_prime);
            j["fpdim_L"] = c.fpdim_L;
            report.summary.push_back("group-theoretical certificate: L = {" +
                                     join(labels_of(ring, c.L), ",") + "}, FPdim " +
                                     num(c.fpdim_L));
        } else {
            report.summary.push_back("no group-theoretical certificate in " +
                                     std::to_string(c.lattice_size) + " fusion sub-bases");
        }
        if (as_check)
            report.checks.push_back({"certificate", c.found, std::nullopt, {},
                                     c.found ? "" : "no symmetric L with (L')_ad inside L"});
    } catch (const NotApplicableError& e) {
        j = {{"not_applicable", e.what()}};
        report.summary.push_back(std::string("certificate search not applicable: ") + e.what());
        if (as_check)
            report.checks.push_back({"certificate", false, std::nullopt, {}, e.what()});
    }
    return j;
}

void cmd_check(const Options& o, Report& r)
{
    digest(r, o.file);
    const FusionRing ring = load_ring(o.file);
    const ValidationReport v = validate_fusion_ring(ring);
    add_checks(r, v);
    r.data["rank"] = ring.rank();
    r.data["labels"] = ring.labels();
    if (!v.valid()) {
        for (const auto& c : v.checks)
            if (!c.passed)
                r.summary.push_back(c.name + " fails: " + c.detail);
        return;
    }
    const DimensionVector dims = fp_dimensions(ring);
    r.data["fp_dimensions"] = dims.dims;
    r.data["global_dimension"] = dims.global;
    r.data["integral"] = dims.integral;
    const InvertibleGroup inv = invertibles(ring);
    r.data["invertibles"] = {{"members", labels_of(ring, inv.elements)}, {"structure", inv.structure}};
    std::string grading_name = "?";
    try {
        const Grading g = universal_grading(ring);
        r.data["universal_grading"] = {
            {"structure", g.structure}, {"order", g.order()}, {"assignment", g.assignment}};
        grading_name = g.structure;
    } catch (const Error& e) {
        r.data["universal_grading"] = {{"error", e.what()}};
    }
    const NilpotencyResult nil = is_nilpotent(ring);
    std::vector<std::size_t> chain;
    for (const auto& s : nil.chain)
        chain.push_back(s.size());
    r.data["nilpotent"] = nil.nilpotent;
    r.data["upper_central_series_sizes"] = chain;
    if (const auto key = key_if_small(ring))
        r.data["canonical_key"] = *key;
    r.summary.push_back("rank " + std::to_string(ring.rank()) + ", FPdim " + num(dims.global) +
                        ", invertibles " + inv.structure + ", universal grading " + grading_name +
                        (nil.nilpotent ? ", nilpotent" : ", not nilpotent"));
    write_json(o.out_dir, "ring.json", ring_to_json(ring));
}

void cmd_modular(const Options& o, Report& r)
{
    digest(r, o.file);
    ModularData md = load_modular(o.file);
    if (o.tol)
        md.tolerance = *o.tol;
    const ModularReport rep = verify_modular(md);
    add_checks(r, rep, true);
    r.data["rank"] = md.rank();
    r.data["tolerance"] = md.tolerance;
    r.data["global_dimension"] = rep.global;
    r.data["t_order"] = rep.t_order;
    r.data["gauss_sums"] = {{"p_plus", complex_json(rep.gauss.p_plus)},
                            {"p_minus", complex_json(rep.gauss.p_minus)},
                            {"residual", rep.gauss.residual}};
    r.summary.push_back("D = " + num(rep.global) + " (sum of d^2), T order " +
                        std::to_string(rep.t_order));
    r.summary.push_back("p+ = " + complex_str(rep.gauss.p_plus, md.tolerance) +
                        ", p- = " + complex_str(rep.gauss.p_minus, md.tolerance) +
                        ", p+ p- = " + complex_str(rep.gauss.p_plus * rep.gauss.p_minus, md.tolerance));

    const Check* verlinde = rep.find("verlinde_integrality");
    if (verlinde && verlinde->passed) {
        const FusionRing ring = verlinde_fusion(md);
        const double twist = twist_equation_check(md, ring);
        r.checks.push_back({"twist_equation", twist < md.tolerance, twist, {}, ""});
        const DimensionVector dims = fp_dimensions(ring);
        json vj{{"rank", ring.rank()}, {"fp_dimensions", dims.dims}};
        if (const auto key = key_if_small(ring))
            vj["canonical_key"] = *key;
        r.data["verlinde"] = vj;
        r.data["certificate"] = certificate_json(md, ring, r, false);
        write_json(o.out_dir, "verlinde_ring.json", ring_to_json(ring));
    }
}

void cmd_classify(const Options& o, Report& r)
{
    const DimensionProfile profile = make_profile(o.p, o.q, parse_shape(o.shape));
    const Classification cls = classify(profile);
    r.data = classification_to_json(cls);
    bool covered = true;
    for (const auto& c : cls.report.cases)
        covered = covered && !c.witness.empty() &&
                  (c.verdict == Verdict::Survives || !c.rule.empty());
    r.checks.push_back({"verdict_coverage", covered, std::nullopt, {},
                        covered ? "" : "a candidate lacks a rule or witness"});
    std::ostringstream head;
    head << "profile p = " << profile.p << ", q = " << profile.q << ", shape "
         << profile.shape_name() << ", N = " << profile.global();
    r.summary.push_back(head.str());
    for (const auto& c : cls.report.cases) {
        std::ostringstream os;
        os << "FPdim(C_pt) = " << std::left << std::setw(6) << c.pt_dim << " "
           << std::setw(17) << verdict_name(c.verdict) << " ";
        if (c.verdict == Verdict::Survives)
            os << c.survivor_label;
        else
            os << c.rule << " " << c.rule_name;
        if (!c.case_label.empty())
            os << " [" << c.case_label << "]";
        if (c.cited)
            os << " (cited)";
        os << ": " << c.witness;
        if (!c.corroborating.empty())
            os << " (also " << join(c.corroborating, ", ") << ")";
        r.summary.push_back(os.str());
    }
    r.summary.push_back("verdict: " + cls.overall);
    write_json(o.out_dir, "classification.json", r.data);
}

void cmd_search(const Options& o, Report& r)
{
    digest(r, o.spec);
    const SearchSpec spec = load_search_spec(o.spec);
    SearchOptions opt;
    opt.workers = o.workers;
    opt.node_cap = o.node_cap;
    opt.use_pointed_action = !o.no_action;
    const SearchResult res = complete_fusion_rings(spec, opt);

    bool sound = true;
    for (const auto& ring : res.raw)
        sound = sound && validate_fusion_ring(ring).valid();
    r.checks.push_back({"soundness", sound, std::nullopt, {}, ""});
    r.data["raw_completions"] = res.raw.size();
    r.data["classes"] = res.rings.size();
    r.data["canonical_keys"] = res.keys;
    r.data["stats"] = {{"nodes", res.stats.nodes},
                       {"leaves", res.stats.leaves},
                       {"contradictions", res.stats.contradictions},
                       {"rejected_leaves", res.stats.rejected_leaves},
                       {"forced_cells", res.stats.forced_cells},
                       {"free_orbits", res.stats.free_orbits},
                       {"dual_choices", res.stats.dual_choices}};
    json rings = json::array();
    for (std::size_t i = 0; i < res.rings.size(); ++i) {
        rings.push_back(ring_to_json(res.rings[i]));
        write_json(o.out_dir, "ring_" + std::to_string(i + 1) + ".json", ring_to_json(res.rings[i]));
    }
    r.data["rings"] = rings;
    r.summary.push_back(std::to_string(res.raw.size()) + " raw completions, " +
                        std::to_string(res.rings.size()) + " classes, " +
                        std::to_string(res.stats.nodes) + " nodes, " +
                        std::to_string(res.stats.contradictions) + " branches cut by propagation");
}

void cmd_double(const Options& o, Report& r)
{
    digest(r, o.group);
    const FiniteGroup g = load_group(o.group);
    DoubleData dd = double_modular_data(g);
    if (o.tol)
        dd.md.tolerance = *o.tol;
    const ModularReport rep = verify_modular(dd.md);
    add_checks(r, rep, true);

    const long long n = (long long)g.order();
    long long sum = 0;
    std::vector<int> dims;
    json labels = json::array();
    for (std::size_t i = 0; i < dd.labels.size(); ++i) {
        const auto& l = dd.labels[i];
        sum += 1LL * l.dimension * l.dimension;
        dims.push_back(l.dimension);
        labels.push_back({{"label", dd.md.label(i)},
                          {"class", l.conjugacy_class},
                          {"representative", l.representative},
                          {"character", l.character},
                          {"dimension", l.dimension}});
    }
    r.checks.push_back({"dimension_sum", sum == n * n, double(std::llabs(sum - n * n)), {},
                        "sum d^2 = " + std::to_string(sum) + ", |G|^2 = " + std::to_string(n * n)});
    r.data["group_order"] = n;
    r.data["rank"] = dd.labels.size();
    r.data["dimensions"] = dims;
    r.data["simples"] = labels;
    json twists = json::array();
    for (const auto& t : dd.md.T)
        twists.push_back(complex_json(t));
    r.data["twists"] = twists;
    r.data["certificate"] = certificate_json(dd.md, dd.ring, r, true);

    std::vector<std::string> ds;
    for (int d : dims)
        ds.push_back(std::to_string(d));
    r.summary.insert(r.summary.begin(), "D(G) for |G| = " + std::to_string(n) + ": rank " +
                                            std::to_string(dims.size()) + ", dims (" +
                                            join(ds, ",") + ")");
    write_json(o.out_dir, "double_modular.json", modular_to_json(dd.md));
    write_json(o.out_dir, "double_ring.json", ring_to_json(dd.ring));
}

void cmd_twist(const Options& o, Report& r)
{
    digest(r, o.ring);
    digest(r, o.cochain);
    const FusionRing ring = load_ring(o.ring);
    const PointedCochain chi = load_cochain(o.cochain);
    const Grading grading = universal_grading(ring);
    const ValidationReport v = validate_cochain(ring, grading, chi);
    add_checks(r, v);
    r.data["grading"] = {{"structure", grading.structure}, {"assignment", grading.assignment}};
    if (!v.valid())
        return;
    const FusionRing twisted = graded_twist(ring, chi);
    const ValidationReport tv = validate_fusion_ring(twisted);
    for (const auto& c : tv.checks)
        r.checks.push_back({"twisted_" + c.name, c.passed, std::nullopt, c.witness, c.detail});
    json duals = json::object();
    for (std::size_t i = 0; i < twisted.rank(); ++i) {
        duals[twisted.label(i)] = twisted.label(twisted.dual(i));
        if (twisted.dual(i) != ring.dual(i))
            r.summary.push_back("dual of " + ring.label(i) + ": " + ring.label(ring.dual(i)) +
                                " -> " + twisted.label(twisted.dual(i)));
    }
    r.data["twisted_duals"] = duals;
    if (const auto key = key_if_small(ring))
        r.data["input_canonical_key"] = *key;
    if (const auto key = key_if_small(twisted))
        r.data["twisted_canonical_key"] = *key;
    r.data["twisted_ring"] = ring_to_json(twisted);
    write_json(o.out_dir, "twisted_ring.json", ring_to_json(twisted));
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"fusionkit: fusion rings, modular data and classification checks"};
    app.name("fusionkit");
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--tol", o.tol, "numerical tolerance (default 1e-9, or the file's own)");
        sub->add_flag("--json", o.json, "machine-readable JSON report");
        sub->add_option("--out", o.out_dir, "directory for output files");
    };
    auto* check = app.add_subcommand("check", "validate a fusion-ring file");
    check->add_option("file", o.file, "fusion ring JSON")->required();
    common(check);
    auto* modular = app.add_subcommand("modular", "verify a modular-data file");
    modular->add_option("file", o.file, "modular data JSON")->required();
    common(modular);
    auto* classify_cmd = app.add_subcommand("classify", "case analysis for dimension pq^4 or p^2q^2");
    classify_cmd->add_option("--p", o.p, "prime p")->required();
    classify_cmd->add_option("--q", o.q, "prime q")->required();
    classify_cmd->add_option("--shape", o.shape, "pq4 or p2q2")
        ->required()
        ->check(CLI::IsMember({"pq4", "p2q2"}));
    common(classify_cmd);
    auto* search = app.add_subcommand("search", "complete a partially specified fusion ring");
    search->add_option("--spec", o.spec, "search spec JSON")->required();
    search->add_option("--workers", o.workers, "worker threads");
    search->add_option("--node-cap", o.node_cap, "node budget");
    search->add_flag("--no-action", o.no_action, "drop the pointed-action constraints");
    common(search);
    auto* dbl = app.add_subcommand("double", "modular data of the Drinfeld double of a group");
    dbl->add_option("--group", o.group, "group JSON")->required();
    common(dbl);
    auto* twist = app.add_subcommand("twist", "graded twist of a ring by a cochain");
    twist->add_option("--ring", o.ring, "fusion ring JSON")->required();
    twist->add_option("--cochain", o.cochain, "cochain JSON")->required();
    common(twist);

    std::vector<std::string> storage{"fusionkit"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage)
        argv.push_back(s.data());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Report r;
    r.command = app.get_subcommands().front()->get_name();
    r.argv = args;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (r.command == "check")
            cmd_check(o, r);
        else if (r.command == "modular")
            cmd_modular(o, r);
        else if (r.command == "classify")
            cmd_classify(o, r);
        else if (r.command == "search")
            cmd_search(o, r);
        else if (r.command == "double")
            cmd_double(o, r);
        else
            cmd_twist(o, r);
        r.exit_code = r.all_passed() ? 0 : 1;
    } catch (const InputError& e) {
        r.error_kind = "input";
        r.error_message = e.what();
        r.exit_code = 2;
    } catch (const InconsistencyError& e) {
        r.error_kind = "inconsistency";
        r.error_message = e.what();
        r.exit_code = 1;
    } catch (const CapacityError& e) {
        r.error_kind = "capacity";
        r.error_message = e.what();
        r.exit_code = 3;
    } catch (const NumericalError& e) {
        r.error_kind = "numerical";
        r.error_message = e.what();
        r.exit_code = 3;
    } catch (const std::filesystem::filesystem_error& e) {
        r.error_kind = "input";
        r.error_message = e.what();
        r.exit_code = 2;
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!o.out_dir.empty()) {
        try {
            write_json(o.out_dir, "report.json", report_to_json(r));
        } catch (const std::exception& e) {
            err << "fusionkit " << r.command << ": cannot write report: " << e.what() << "\n";
            if (r.exit_code == 0)
                r.exit_code = 2;
        }
    }
    if (o.json)
        out << report_to_json(r).dump(2) << "\n";
    else
        out << render_human(r);
    if (!r.error_kind.empty())
        err << "fusionkit " << r.command << ": " << r.error_message << "\n";
    return r.exit_code;
}

} // namespace fusionkit
