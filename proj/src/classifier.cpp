#include "fusionkit/classifier.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <tuple>
#include <sstream>

#include "fusionkit/errors.hpp"

namespace fusionkit {

namespace {

bool is_prime(long long n)
{
    if (n < 2)
        return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

bool is_prime_power(long long n)
{
    if (n == 1)
        return true;
    long long d = 2;
    while (n % d != 0)
        ++d;
    while (n % d == 0)
        n /= d;
    return n == 1;
}

std::vector<long long> divisors(long long n)
{
    std::vector<long long> out;
    for (long long d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n)
                out.push_back(n / d);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::string power_name(int e, const std::string& sym)
{
    if (e == 0)
        return "";
    return e == 1 ? sym : sym + "^" + std::to_string(e);
}

int valuation(long long n, long long p)
{
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

// Symbolic form of a divisor of p^x q^y, e.g. "pq^2".
std::string symbolic(long long n, const DimensionProfile& pr)
{
    const std::string s = power_name(valuation(n, pr.p), "p") +
                          power_name(valuation(n, pr.q), "q");
    return s.empty() ? "1" : s;
}

// Solutions x_d >= 0 of sum x_d d^2 = target over `dims` (all > 1), as
// multiplicity vectors aligned with dims.
void solve_rest(const std::vector<long long>& dims, std::size_t idx, long long target,
                std::vector<long long>& cur, const std::vector<long long>& caps,
                const std::function<bool(const std::vector<long long>&)>& emit, bool& stop)
{
    if (stop)
        return;
    if (idx == dims.size()) {
        if (target == 0 && !emit(cur))
            stop = true;
        return;
    }
    const long long sq = dims[idx] * dims[idx];
    const long long hi = std::min(target / sq, caps.empty() ? target / sq : caps[idx]);
    for (long long m = 0; m <= hi && !stop; ++m) {
        cur[idx] = m;
        solve_rest(dims, idx + 1, target - m * sq, cur, caps, emit, stop);
    }
    cur[idx] = 0;
}

bool solvable_rest(const std::vector<long long>& dims, long long target)
{
    if (target < 0)
        return false;
    std::vector<long long> cur(dims.size(), 0);
    bool found = false, stop = false;
    solve_rest(dims, 0, target, cur, {}, [&](const std::vector<long long>&) {
        found = true;
        return false;
    }, stop);
    return found;
}

std::vector<long long> nonunit(const std::vector<long long>& dims)
{
    return {dims.begin() + 1, dims.end()};
}

// "a + 9b + 81c = 162" style equation over the given dims.
std::string equation(const std::vector<long long>& dims, const std::string& first, long long target)
{
    std::ostringstream os;
    os << first;
    const char* names = "bcdefghijk";
    for (std::size_t i = 1; i < dims.size(); ++i)
        os << " + " << dims[i] * dims[i] << (i - 1 < 10 ? std::string(1, names[i - 1]) : "x");
    os << " = " << target;
    return os.str();
}

TypeSignature make_signature(const std::vector<long long>& dims, long long a,
                             const std::vector<long long>& rest)
{
    TypeSignature s;
    if (a > 0)
        s.entries.emplace_back(1, a);
    for (std::size_t i = 0; i < rest.size(); ++i)
        if (rest[i] > 0)
            s.entries.emplace_back(dims[i + 1], rest[i]);
    return s;
}

} // namespace

long long DimensionProfile::global() const
{
    return shape == Shape::PQ4 ? p * q * q * q * q : p * p * q * q;
}

std::string DimensionProfile::shape_name() const
{
    return shape == Shape::PQ4 ? "pq4" : "p2q2";
}

Shape parse_shape(const std::string& name)
{
    if (name == "pq4")
        return Shape::PQ4;
    if (name == "p2q2")
        return Shape::P2Q2;
    throw InputError("unknown shape '" + name + "' (expected pq4 or p2q2)");
}

DimensionProfile make_profile(long long p, long long q, Shape shape)
{
    if (!is_prime(p) || !is_prime(q))
        throw InputError("p and q must be primes (got " + std::to_string(p) + ", " +
                         std::to_string(q) + ")");
    if (p == q)
        throw InputError("p and q must be distinct");
    if (std::max(p, q) > 1000)
        throw InputError("primes above 1000 are not supported");
    DimensionProfile pr{p, q, shape};
    if (shape == Shape::P2Q2 && p > q)
        std::swap(pr.p, pr.q);
    return pr;
}

long long TypeSignature::multiplicity(long long d) const
{
    for (const auto& [dim, m] : entries)
        if (dim == d)
            return m;
    return 0;
}

long long TypeSignature::total() const
{
    long long t = 0;
    for (const auto& [d, m] : entries)
        t += m * d * d;
    return t;
}

std::string TypeSignature::str() const
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < entries.size(); ++i)
        os << (i ? "; " : "") << entries[i].first << "," << entries[i].second;
    os << ")";
    return os.str();
}

std::vector<long long> allowed_dimensions(long long n)
{
    if (n < 1)
        throw InputError("dimension must be positive");
    std::vector<long long> out{1};
    for (long long d = 2; d * d < n; ++d)
        if (n % (d * d) == 0)
            out.push_back(d);
    return out;
}

std::vector<TypeSignature> enumerate_types(long long n, std::size_t cap)
{
    const std::vector<long long> dims = allowed_dimensions(n);
    const std::vector<long long> rest = nonunit(dims);
    std::vector<TypeSignature> out;
    std::vector<long long> cur(rest.size(), 0);
    for (long long a : divisors(n)) {
        bool stop = false;
        solve_rest(rest, 0, n - a, cur, {}, [&](const std::vector<long long>& v) {
            if (out.size() >= cap)
                throw CapacityError("enumerate_types: more than " + std::to_string(cap) +
                                    " signatures for N = " + std::to_string(n));
            out.push_back(make_signature(dims, a, v));
            return true;
        }, stop);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TypeSignature> enumerate_types(const DimensionProfile& profile)
{
    return enumerate_types(profile.global());
}

Refinement graded_refinement(long long n, const TypeSignature& signature, long long u,
                             bool pt_in_adjoint)
{
    if (u < 1 || n % u != 0)
        throw InputError("graded_refinement: u must divide N");
    if (signature.multiplicity(1) != u)
        throw InputError("graded_refinement: u must equal the number of invertibles");
    if (signature.total() != n)
        throw InputError("graded_refinement: signature does not sum to N");

    Refinement r;
    r.components = u;
    r.component_dim = n / u;
    const long long m = r.component_dim;

    // every dimension of the signature, 1 first
    std::vector<long long> dims{1};
    std::vector<long long> caps{u};
    for (const auto& [d, mult] : signature.entries)
        if (d > 1) {
            dims.push_back(d);
            caps.push_back(mult);
        }
    const std::size_t k = dims.size();

    auto local = [&](bool trivial) {
        std::vector<std::vector<long long>> sols;
        long long lo = trivial ? 1 : 0, hi = std::min(u, m);
        if (pt_in_adjoint)
            lo = hi = trivial ? u : 0;
        for (long long a = lo; a <= hi && a <= m; ++a) {
            std::vector<long long> rest_dims(dims.begin() + 1, dims.end());
            std::vector<long long> rest_caps(caps.begin() + 1, caps.end());
            std::vector<long long> cur(rest_dims.size(), 0);
            bool stop = false;
            solve_rest(rest_dims, 0, m - a, cur, rest_caps, [&](const std::vector<long long>& v) {
                std::vector<long long> sol{a};
                sol.insert(sol.end(), v.begin(), v.end());
                sols.push_back(std::move(sol));
                return true;
            }, stop);
        }
        return sols;
    };
    auto as_signature = [&](const std::vector<long long>& sol) {
        TypeSignature s;
        for (std::size_t i = 0; i < k; ++i)
            if (sol[i] > 0)
                s.entries.emplace_back(dims[i], sol[i]);
        return s;
    };
    auto eq_text = [&](const std::string& first) {
        std::ostringstream os;
        os << first;
        for (std::size_t i = 1; i < k; ++i)
            os << " + " << dims[i] * dims[i] << "*m_" << dims[i];
        os << " = " << m;
        return os.str();
    };

    const auto triv = local(true);
    const auto oth = u > 1 ? local(false) : std::vector<std::vector<long long>>{};
    if (triv.empty()) {
        r.contradiction = true;
        r.witness = "trivial component: " + eq_text(pt_in_adjoint ? std::to_string(u) : "a_e") +
                    " has no solution with a_e >= 1";
        return r;
    }
    if (u > 1 && oth.empty()) {
        r.contradiction = true;
        r.witness = "component g != e: " + eq_text(pt_in_adjoint ? "0" : "a_g") + " has no solution";
        return r;
    }

    // can `count` components drawn from oth[idx..] use up exactly `rem`?
    std::map<std::tuple<std::size_t, long long, std::vector<long long>>, bool> memo;
    std::function<bool(std::size_t, long long, const std::vector<long long>&)> fill =
        [&](std::size_t idx, long long count, const std::vector<long long>& rem) -> bool {
        if (count == 0)
            return std::all_of(rem.begin(), rem.end(), [](long long x) { return x == 0; });
        if (idx == oth.size())
            return false;
        auto key = std::make_tuple(idx, count, rem);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        bool ok = fill(idx + 1, count, rem);
        std::vector<long long> next = rem;
        for (long long used = 1; used <= count && !ok; ++used) {
            bool fits = true;
            for (std::size_t i = 0; i < k; ++i) {
                next[i] -= oth[idx][i];
                fits = fits && next[i] >= 0;
            }
            if (!fits)
                break;
            ok = fill(idx + 1, count - used, next);
        }
        return memo[key] = ok;
    };

    auto minus = [&](std::vector<long long> v, const std::vector<long long>& s) {
        for (std::size_t i = 0; i < k; ++i)
            v[i] -= s[i];
        return v;
    };
    auto nonneg = [](const std::vector<long long>& v) {
        return std::all_of(v.begin(), v.end(), [](long long x) { return x >= 0; });
    };

    std::vector<bool> other_ok(oth.size(), false);
    for (const auto& t : triv) {
        const std::vector<long long> rem = minus(caps, t);
        if (!nonneg(rem) || !fill(0, u - 1, rem))
            continue;
        r.trivial.push_back(as_signature(t));
        for (std::size_t o = 0; o < oth.size(); ++o) {
            if (other_ok[o])
                continue;
            const std::vector<long long> rem2 = minus(rem, oth[o]);
            if (nonneg(rem2) && fill(0, u - 2, rem2))
                other_ok[o] = true;
        }
    }
    for (std::size_t o = 0; o < oth.size(); ++o)
        if (other_ok[o])
            r.other.push_back(as_signature(oth[o]));

    if (r.trivial.empty()) {
        r.contradiction = true;
        long long min_a = std::numeric_limits<long long>::max();
        for (const auto& o : oth)
            min_a = std::min(min_a, o[0]);
        std::ostringstream os;
        if (u > 1 && min_a > 0) {
            long long min_e = std::numeric_limits<long long>::max();
            for (const auto& t : triv)
                min_e = std::min(min_e, t[0]);
            os << "every component g != e needs a_g >= " << min_a << "; invertibles >= " << min_e
               << " + " << (u - 1) << "*" << min_a << " = " << min_e + (u - 1) * min_a << " > "
               << u;
        } else {
            os << "signature " << signature.str() << " cannot be distributed over " << u
               << " components of dimension " << m;
        }
        r.witness = os.str();
    }
    return r;
}

std::string verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Eliminated:
        return "eliminated";
    case Verdict::GroupTheoretical:
        return "group_theoretical";
    case Verdict::Survives:
        return "survives";
    }
    return "?";
}

namespace {

struct RuleHit {
    std::string rule, name, case_label, witness;
    Verdict verdict = Verdict::Eliminated;
    bool cited = false;
};

struct Context {
    const DimensionProfile& pr;
    long long n, a, m;
    std::vector<long long> dims; // allowed dims of n, 1 first
    bool pq4;
};

std::string case_label(const Context& c)
{
    const DimensionProfile& pr = c.pr;
    const long long p = pr.p, q = pr.q, a = c.a;
    if (c.pq4) {
        if (a == q * q * q)
            return "case (i)";
        if (a == q * q)
            return "case (vi)";
        if (a == q * q * q * q || a == p * q * q || a == p * q * q * q || a == c.n)
            return "case (ii-v)";
        return "";
    }
    if (a == p * q)
        return "case (vi)";
    if (a == q)
        return "case (vii)";
    if (a == p)
        return "case (viii)";
    if (a == p * p || a == q * q || a == p * p * q || a == p * q * q || a == c.n)
        return "case (i-v)";
    return "";
}

std::optional<RuleHit> rule_r1(const Context& c)
{
    if (c.a != 1 || c.n == 1)
        return std::nullopt;
    return RuleHit{"R1", "nontrivial-invertible", "",
                   "FPdim(C_pt) = 1, but a category of dimension " + std::to_string(c.n) +
                       " = p^x q^y > 1 has a non-trivial invertible object",
                   Verdict::Eliminated};
}

std::optional<RuleHit> rule_r0(const Context& c)
{
    if (solvable_rest(nonunit(c.dims), c.n - c.a))
        return std::nullopt;
    return RuleHit{"R0", "type-equation", "",
                   equation(c.dims, std::to_string(c.a), c.n) + " has no nonnegative solution",
                   Verdict::Eliminated};
}

std::optional<RuleHit> rule_r2(const Context& c)
{
    if (!is_prime_power(c.m))
        return std::nullopt;
    std::ostringstream os;
    if (c.m == 1)
        os << "FPdim(C_ad) = " << c.n << "/" << c.a << " = 1, so C is pointed";
    else
        os << "FPdim(C_ad) = " << c.n << "/" << c.a << " = " << c.m << " = " << symbolic(c.m, c.pr)
           << " is a prime power, so C_ad is nilpotent";
    return RuleHit{"R2", "prime-power-adjoint", "", os.str(), Verdict::GroupTheoretical};
}

// Smallest a_g >= lo with a_g + sum x_d d^2 = m solvable, or -1.
long long min_invertibles(const Context& c, long long lo)
{
    for (long long x = lo; x <= c.m; ++x)
        if (solvable_rest(nonunit(c.dims), c.m - x))
            return x;
    return -1;
}

std::optional<RuleHit> rule_r3(const Context& c)
{
    if (c.m == 1 || c.a == 1)
        return std::nullopt;
    const long long min_e = min_invertibles(c, 2);
    const long long min_g = min_invertibles(c, 0);
    if (min_e < 0 || min_g < 0)
        return std::nullopt;
    const long long total = min_e + (c.a - 1) * min_g;
    if (total <= c.a)
        return std::nullopt;
    std::ostringstream os;
    os << c.a << " components of dimension " << c.m << "; " << equation(c.dims, "a_g", c.m)
       << " forces a_g >= " << min_g << " and a_e >= " << min_e << "; invertibles >= " << min_e
       << " + " << (c.a - 1) << "*" << min_g << " = " << total << " > " << c.a;
    return RuleHit{"R3", "invertible-counting", "", os.str(), Verdict::Eliminated};
}

std::optional<RuleHit> rule_r4(const Context& c)
{
    if (c.m == 1 || std::gcd(c.a, c.m) != 1)
        return std::nullopt;
    std::ostringstream os;
    os << "the invertibles of C_ad need 2 <= a_e with a_e | " << c.a << " and a_e | " << c.m
       << ", but gcd(" << c.a << ", " << c.m << ") = 1";
    return RuleHit{"R4", "remark-elimination", "remark", os.str(), Verdict::Eliminated};
}

std::optional<RuleHit> rule_r5(const Context& c)
{
    if (c.a == c.n)
        return std::nullopt;
    for (std::size_t i = 1; i < c.dims.size(); ++i)
        if (c.dims[i] * c.dims[i] <= c.m)
            return std::nullopt;
    std::ostringstream os;
    os << "components have dimension " << c.m << " but the smallest non-invertible has d^2 = "
       << (c.dims.size() > 1 ? c.dims[1] * c.dims[1] : 0)
       << "; no component can hold a non-invertible object";
    return RuleHit{"R5", "component-capacity", "remark", os.str(), Verdict::Eliminated};
}

std::optional<RuleHit> rule_r6(const Context& c)
{
    if (!is_prime(c.a) || c.a == c.n)
        return std::nullopt;
    if (solvable_rest(nonunit(c.dims), c.m - c.a))
        return std::nullopt;
    std::ostringstream os;
    const long long p = c.pr.p, q = c.pr.q;
    if (!c.pq4 && c.a == q)
        os << "C_pt lies in C_ad; " << equation(c.dims, std::to_string(c.a), c.m)
           << " reduces to c_e*q = (p-1)(p+1): c_e*" << q << " = " << (p - 1) * (p + 1)
           << " has no integer solution";
    else if (!c.pq4 && c.a == p)
        os << "C_pt lies in C_ad; " << equation(c.dims, std::to_string(c.a), c.m)
           << " reduces to b_e*p = (q-1)(q+1): b_e*" << p << " = " << (q - 1) * (q + 1)
           << " has no integer solution";
    else
        os << "C_pt lies in C_ad; " << equation(c.dims, std::to_string(c.a), c.m)
           << " has no nonnegative solution";
    return RuleHit{"R6", "trivial-component-arithmetic", "", os.str(), Verdict::Eliminated};
}

std::optional<RuleHit> rule_r7(const Context& c)
{
    if (c.pq4 || c.a != c.pr.p || (c.pr.q - 1) % c.pr.p == 0)
        return std::nullopt;
    std::ostringstream os;
    os << "(q-1)/p must be an algebraic integer: (" << c.pr.q << "-1)/" << c.pr.p << " = "
       << c.pr.q - 1 << "/" << c.pr.p << " is not an integer";
    return RuleHit{"R7", "gauss-sum-integrality", "", os.str(), Verdict::Eliminated};
}

std::optional<RuleHit> rule_r8(const Context& c)
{
    const long long p = c.pr.p, q = c.pr.q;
    if (c.pq4 && c.a == q * q)
        return RuleHit{"R8", "de-equivariantization", "",
                       "FPdim(C_pt) = q^2 = " + std::to_string(c.a) +
                           ": a Tannakian subcategory de-equivariantizes to a pointed category "
                           "(cited, not proven)",
                       Verdict::GroupTheoretical, true};
    if (!c.pq4 && c.a == p && p % 2 == 1)
        return RuleHit{"R8", "de-equivariantization", "",
                       "FPdim(C_pt) = p = " + std::to_string(p) +
                           " is odd and p | q-1: C is group-theoretical (cited, not proven)",
                       Verdict::GroupTheoretical, true};
    return std::nullopt;
}

std::string survivor_label(const Context& c)
{
    if (!c.pq4 && c.a == c.pr.p && c.pr.p == 2)
        return "E(zeta,+-)";
    if (!c.pq4 && c.a == c.pr.q && c.pr.p == 2 && c.pr.q == 3)
        return "dimension-36 family";
    return "unresolved";
}

} // namespace

CaseReport apply_elimination_rules(const DimensionProfile& profile)
{
    CaseReport report;
    report.profile = profile;
    const long long n = profile.global();
    const std::vector<long long> dims = allowed_dimensions(n);

    using Rule = std::optional<RuleHit> (*)(const Context&);
    const Rule rules[] = {rule_r1, rule_r0, rule_r2, rule_r3, rule_r4,
                          rule_r5, rule_r6, rule_r7, rule_r8};

    for (long long a : divisors(n)) {
        const Context c{profile, n, a, n / a, dims, profile.shape == Shape::PQ4};
        CaseVerdict v;
        v.pt_dim = a;
        v.case_label = case_label(c);
        {
            // signature count for this candidate
            std::vector<long long> cur(dims.size() - 1, 0);
            bool stop = false;
            solve_rest(nonunit(dims), 0, n - a, cur, {}, [&](const std::vector<long long>&) {
                ++v.type_solutions;
                return true;
            }, stop);
        }
        bool decided = false;
        for (Rule rule : rules) {
            const auto hit = rule(c);
            if (!hit)
                continue;
            if (decided) {
                v.corroborating.push_back(hit->rule);
                continue;
            }
            decided = true;
            v.verdict = hit->verdict;
            v.rule = hit->rule;
            v.rule_name = hit->name;
            v.witness = hit->witness;
            v.cited = hit->cited;
            if (!hit->case_label.empty() && v.case_label.empty())
                v.case_label = hit->case_label;
        }
        if (!decided) {
            v.verdict = Verdict::Survives;
            v.survivor_label = survivor_label(c);
            std::ostringstream os;
            if (v.survivor_label == "E(zeta,+-)")
                os << "FPdim(C_pt) = p = 2 divides q-1 = " << profile.q - 1
                   << "; no rule eliminates this case";
            else if (v.survivor_label == "dimension-36 family")
                os << "c_e*q = (p-1)(p+1): c_e*3 = 3 gives c_e = 1";
            else
                os << "no rule applies to FPdim(C_pt) = " << a;
            v.witness = os.str();
        }
        report.cases.push_back(std::move(v));
    }
    return report;
}

Classification classify(const DimensionProfile& profile)
{
    Classification out;
    out.report = apply_elimination_rules(profile);
    for (const auto& c : out.report.cases)
        if (c.verdict == Verdict::Survives)
            out.survivors.push_back(c.survivor_label + " (FPdim(C_pt) = " +
                                    std::to_string(c.pt_dim) + ")");
    if (out.survivors.empty()) {
        out.overall = "group-theoretical";
    } else {
        out.overall = "group-theoretical, or one of: ";
        for (std::size_t i = 0; i < out.survivors.size(); ++i)
            out.overall += (i ? "; " : "") + out.survivors[i];
    }
    return out;
}

} // namespace fusionkit
