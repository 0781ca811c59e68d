#include "fusionkit/modular_data.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "fusionkit/errors.hpp"

namespace fusionkit {

namespace {

Check make_check(const std::string& name, double residual, double tol, const std::string& detail)
{
    Check c{name};
    c.residual = residual;
    c.passed = residual <= tol;
    if (!c.passed)
        c.detail = detail;
    return c;
}

Eigen::VectorXd dimension_row(const ModularData& md)
{
    Eigen::VectorXd d(md.rank());
    for (std::size_t i = 0; i < md.rank(); ++i)
        d[i] = md.S(0, i).real();
    return d;
}

double global_dimension(const ModularData& md)
{
    return dimension_row(md).squaredNorm();
}

std::string tuple_str(std::initializer_list<int> v)
{
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (int x : v) {
        os << (first ? "" : ",") << x;
        first = false;
    }
    os << ')';
    return os.str();
}

// Verlinde coefficients: entry (j, k) of the i-th matrix is sum_r s_ir s_jr conj(s_kr) / s_0r.
std::vector<Eigen::MatrixXcd> verlinde_matrices(const Eigen::MatrixXcd& s)
{
    const Eigen::Index n = s.rows();
    std::vector<Eigen::MatrixXcd> out(n);
    const Eigen::MatrixXcd sh = s.adjoint();
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXcd w(n);
        for (Eigen::Index r = 0; r < n; ++r)
            w[r] = s(i, r) / s(0, r);
        out[i] = s * w.asDiagonal() * sh;
    }
    return out;
}

} // namespace

std::string ModularData::label(std::size_t i) const
{
    if (i < labels.size())
        return labels[i];
    return i == 0 ? "1" : "x" + std::to_string(i);
}

void check_shape(const ModularData& md)
{
    if (md.T.empty())
        throw InputError("modular data needs at least one simple");
    if (md.S.rows() != md.S.cols())
        throw InputError("S is not square (" + std::to_string(md.S.rows()) + "x" +
                         std::to_string(md.S.cols()) + ")");
    if (std::size_t(md.S.rows()) != md.T.size())
        throw InputError("S has size " + std::to_string(md.S.rows()) + " but T has " +
                         std::to_string(md.T.size()) + " entries");
    if (!(md.tolerance > 0))
        throw InputError("tolerance must be positive");
    if (!md.labels.empty() && md.labels.size() != md.T.size())
        throw InputError("labels length does not match rank");
}

GaussSums gauss_sums(const ModularData& md)
{
    check_shape(md);
    GaussSums g;
    const Eigen::VectorXd d = dimension_row(md);
    for (std::size_t k = 0; k < md.rank(); ++k) {
        g.p_plus += md.T[k] * d[k] * d[k];
        g.p_minus += std::conj(md.T[k]) / std::norm(md.T[k]) * d[k] * d[k];
    }
    g.global = d.squaredNorm();
    g.residual = std::abs(g.p_plus * g.p_minus - g.global);
    return g;
}

ModularReport verify_modular(const ModularData& md, const ModularOptions& options)
{
    check_shape(md);
    const std::size_t n = md.rank();
    const double tol = md.tolerance;
    ModularReport rep;

    rep.checks.push_back(make_check("symmetry", (md.S - md.S.transpose()).cwiseAbs().maxCoeff(),
                                    tol, "S is not symmetric"));

    {
        double res = std::abs(md.S(0, 0) - Complex(1.0));
        double min_dim = md.S(0, 0).real();
        for (std::size_t i = 0; i < n; ++i) {
            res = std::max(res, std::abs(md.S(0, i).imag()));
            min_dim = std::min(min_dim, md.S(0, i).real());
        }
        Check c = make_check("dimension_row", res, tol, "first row is not real with S(0,0) = 1");
        if (min_dim <= tol) {
            c.passed = false;
            c.detail = "first row has a nonpositive entry";
        }
        rep.checks.push_back(c);
    }

    {
        double res = std::abs(md.T[0] - Complex(1.0));
        for (const auto& t : md.T)
            res = std::max(res, std::abs(std::abs(t) - 1.0));
        rep.checks.push_back(make_check("twists", res, tol, "twists are not unit-modulus with theta_0 = 1"));
    }

    const double D = global_dimension(md);
    rep.global = D;
    const Eigen::MatrixXcd s = md.S / std::sqrt(D);
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
    rep.checks.push_back(make_check("unitarity", (s * s.adjoint() - eye).cwiseAbs().maxCoeff(),
                                    tol, "S / sqrt(D) is not unitary"));

    {
        Check c{"verlinde_integrality"};
        const Check& unit = rep.checks.back();
        if (!unit.passed || rep.checks[1].passed == false) {
            c.passed = false;
            c.detail = "not checked: unitarity or dimension row failed";
        } else {
            const auto N = verlinde_matrices(s);
            double worst = 0.0;
            int wi = 0, wj = 0, wk = 0;
            bool negative = false;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex v = N[i](j, k);
                        const double rounded = std::round(v.real());
                        const double res = std::abs(v - Complex(rounded));
                        if (rounded < 0 && !negative) {
                            negative = true;
                            c.witness = {int(i), int(j), int(k)};
                        }
                        if (res > worst) {
                            worst = res;
                            wi = int(i), wj = int(j), wk = int(k);
                        }
                    }
            c.residual = worst;
            c.passed = worst <= options.verlinde_residual && !negative;
            if (negative)
                c.detail = "negative fusion coefficient at " +
                           tuple_str({c.witness[0], c.witness[1], c.witness[2]});
            else if (!c.passed) {
                c.witness = {wi, wj, wk};
                c.detail = "non-integral fusion coefficient at " + tuple_str({wi, wj, wk});
            }
        }
        rep.checks.push_back(c);
    }

    {
        Check c{"t_order"};
        rep.t_order = 0;
        for (int m = 1; m <= options.t_order_cap && rep.t_order == 0; ++m) {
            bool all = true;
            for (const auto& t : md.T)
                if (std::abs(std::polar(1.0, m * std::arg(t)) - Complex(1.0)) > tol) {
                    all = false;
                    break;
                }
            if (all)
                rep.t_order = m;
        }
        c.passed = rep.t_order > 0;
        if (c.passed) {
            for (const auto& t : md.T)
                c.residual = std::max(c.residual,
                                      std::abs(std::polar(1.0, rep.t_order * std::arg(t)) - Complex(1.0)));
            c.detail = "order " + std::to_string(rep.t_order);
        } else
            c.detail = "T has no finite order <= " + std::to_string(options.t_order_cap);
        rep.checks.push_back(c);
    }

    rep.gauss = gauss_sums(md);
    rep.checks.push_back(make_check("gauss_sums", rep.gauss.residual, tol * std::max(1.0, D),
                                    "p+ p- differs from the global dimension"));

    {
        Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
        for (std::size_t i = 0; i < n; ++i)
            t(i, i) = md.T[i];
        const Eigen::MatrixXcd st = s * t;
        const Eigen::MatrixXcd lhs = st * st * st;
        const Eigen::MatrixXcd rhs = (rep.gauss.p_plus / std::sqrt(D)) * (s * s);
        rep.checks.push_back(make_check("modular_relation", (lhs - rhs).cwiseAbs().maxCoeff(), tol,
                                        "(st)^3 differs from (p+/sqrt D) s^2"));
    }
    return rep;
}

FusionRing verlinde_fusion(const ModularData& md, const ModularOptions& options)
{
    check_shape(md);
    const std::size_t n = md.rank();
    if (n > kMaxDenseRank)
        throw CapacityError("rank " + std::to_string(n) + " exceeds dense tensor cap");
    const double D = global_dimension(md);
    const Eigen::MatrixXcd s = md.S / std::sqrt(D);
    for (std::size_t r = 0; r < n; ++r)
        if (std::abs(s(0, r)) < 1e-12)
            throw InconsistencyError("not a modular fusion datum: S(0," + std::to_string(r) +
                                     ") vanishes");

    const auto N = verlinde_matrices(s);
    std::vector<int> tensor(n * n * n);
    double worst = 0.0;
    int wi = 0, wj = 0, wk = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Complex v = N[i](j, k);
                const double rounded = std::round(v.real());
                const double res = std::abs(v - Complex(rounded));
                if (res > worst) {
                    worst = res;
                    wi = int(i), wj = int(j), wk = int(k);
                }
                if (rounded < 0)
                    throw InconsistencyError("not a modular fusion datum: negative coefficient " +
                                             std::to_string(rounded) + " at " +
                                             tuple_str({int(i), int(j), int(k)}));
                tensor[(i * n + j) * n + k] = int(rounded);
            }
    if (worst > options.verlinde_residual) {
        std::ostringstream os;
        os << "not a modular fusion datum: coefficient at " << tuple_str({wi, wj, wk})
           << " is off an integer by " << worst;
        throw InconsistencyError(os.str());
    }

    std::vector<int> dual(n, -1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (tensor[(i * n + j) * n] == 1) {
                if (dual[i] >= 0)
                    throw InconsistencyError("not a modular fusion datum: " + md.label(i) +
                                             " has two duals");
                dual[i] = int(j);
            }
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (dual[i] < 0)
            throw InconsistencyError("not a modular fusion datum: " + md.label(i) + " has no dual");
        labels[i] = md.label(i);
    }
    FusionRing ring;
    try {
        ring = FusionRing(labels, dual, std::move(tensor));
    } catch (const InputError& e) {
        throw InconsistencyError(std::string("not a modular fusion datum: ") + e.what());
    }
    for (const auto& c : validate_fusion_ring(ring).checks)
        if (!c.passed)
            throw InconsistencyError("Verlinde ring fails " + c.name + ": " + c.detail);
    return ring;
}

double twist_equation_check(const ModularData& md, const FusionRing& ring)
{
    check_shape(md);
    const std::size_t n = md.rank();
    if (ring.rank() != n)
        throw InputError("ring rank " + std::to_string(ring.rank()) +
                         " does not match modular data rank " + std::to_string(n));
    const DimensionVector d = fp_dimensions(ring);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex sum = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (int m = ring(i, ring.dual(j), k))
                    sum += double(m) * md.T[k] * d.dims[k];
            const Complex rhs = sum / (md.T[i] * md.T[j]);
            worst = std::max(worst, std::abs(md.S(i, j) - rhs));
        }
    return worst;
}

namespace {

SubBasis centralizer_members(const ModularData& md, const SubBasis& sub)
{
    const std::size_t n = md.rank();
    const Eigen::VectorXd d = dimension_row(md);
    SubBasis out;
    for (std::size_t i = 0; i < n; ++i) {
        bool ok = true;
        for (int j : sub.members) {
            const double target = d[i] * d[j];
            if (std::abs(md.S(i, j) - Complex(target)) > md.tolerance * std::max(1.0, target)) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.members.push_back(int(i));
    }
    return out;
}

double sub_dim(const Eigen::VectorXd& d, const SubBasis& sub)
{
    double s = 0.0;
    for (int i : sub.members)
        s += d[i] * d[i];
    return s;
}

bool is_nondegenerate_data(const ModularData& md)
{
    const double D = global_dimension(md);
    const Eigen::MatrixXcd s = md.S / std::sqrt(D);
    const std::size_t n = md.rank();
    return (s * s.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <=
           std::max(md.tolerance, 1e-9);
}

} // namespace

CentralizerResult centralizer(const ModularData& md, const FusionRing& ring, const SubBasis& sub)
{
    check_shape(md);
    if (ring.rank() != md.rank())
        throw InputError("ring rank does not match modular data rank");
    for (int i : sub.members)
        if (i < 0 || std::size_t(i) >= md.rank())
            throw InputError("sub-basis index " + std::to_string(i) + " out of range");
    if (!is_closed(ring, sub))
        throw InputError("sub-basis is not closed under fusion and duals");
    CentralizerResult out;
    out.sub = centralizer_members(md, sub);
    if (is_nondegenerate_data(md)) {
        const Eigen::VectorXd d = dimension_row(md);
        const double D = d.squaredNorm();
        out.dimension_residual = std::abs(sub_dim(d, sub) * sub_dim(d, out.sub) - D) / D;
        out.double_centralizer = centralizer_members(md, out.sub) == sub;
    }
    return out;
}

CentralizerResult centralizer(const ModularData& md, const SubBasis& sub)
{
    return centralizer(md, verlinde_fusion(md), sub);
}

std::vector<SubBasis> fusion_subcategory_lattice(const FusionRing& ring, std::size_t rank_cap)
{
    const std::size_t n = ring.rank();
    if (n > rank_cap)
        throw CapacityError("fusion_subcategory_lattice: rank " + std::to_string(n) +
                            " exceeds cap " + std::to_string(rank_cap));
    // every sub-basis is the join of the sub-bases generated by its members
    std::vector<SubBasis> singles;
    for (std::size_t i = 0; i < n; ++i)
        singles.push_back(generated_subbasis(ring, std::vector<int>{int(i)}));

    std::set<SubBasis> seen{SubBasis{{0}}};
    std::vector<SubBasis> queue{SubBasis{{0}}};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const SubBasis cur = queue[head];
        for (std::size_t i = 0; i < n; ++i) {
            if (cur.contains(int(i)))
                continue;
            std::vector<int> seeds = cur.members;
            seeds.insert(seeds.end(), singles[i].members.begin(), singles[i].members.end());
            SubBasis join = generated_subbasis(ring, seeds);
            if (seen.insert(join).second)
                queue.push_back(std::move(join));
        }
    }
    std::vector<SubBasis> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [](const SubBasis& a, const SubBasis& b) {
        return a.size() != b.size() ? a.size() < b.size() : a.members < b.members;
    });
    return out;
}

Certificate group_theoretical_certificate(const ModularData& md, const ModularOptions& options)
{
    const FusionRing ring = verlinde_fusion(md, options);
    const DimensionVector dims = fp_dimensions(ring);
    if (!dims.integral)
        throw NotApplicableError("group_theoretical_certificate needs integral dimensions");

    Certificate cert;
    const std::vector<SubBasis> lattice = fusion_subcategory_lattice(ring);
    cert.lattice_size = lattice.size();
    for (const SubBasis& L : lattice) {
        const SubBasis Lp = centralizer_members(md, L);
        if (!L.subset_of(Lp))
            continue;
        SymmetricSubcategory sym;
        sym.sub = L;
        sym.fpdim = subbasis_dimension(dims, L);
        sym.tannakian_candidate = std::all_of(L.members.begin(), L.members.end(), [&](int i) {
            return std::abs(md.T[i] - Complex(1.0)) <= md.tolerance;
        });
        sym.certifies = adjoint_subbasis(ring, Lp).subset_of(L);
        if (sym.certifies && (!cert.found || sym.fpdim > cert.fpdim_L + 0.5)) {
            cert.found = true;
            cert.L = L;
            cert.L_prime = Lp;
            cert.fpdim_L = sym.fpdim;
        }
        cert.symmetric.push_back(std::move(sym));
    }
    return cert;
}

void check_metric_group(const MetricGroup& mg)
{
    const std::size_t n = mg.order();
    if (n == 0 || mg.q.size() != n)
        throw InputError("metric group: q must have one value per group element");
    for (const auto& row : mg.table)
        if (row.size() != n)
            throw InputError("metric group: table is not square");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (mg.table[a][b] < 0 || std::size_t(mg.table[a][b]) >= n)
                throw InputError("metric group: table entry out of range");
    const double tol = mg.tolerance;
    for (std::size_t a = 0; a < n; ++a) {
        if (std::abs(std::abs(mg.q[a]) - 1.0) > tol)
            throw InputError("metric group: q(" + std::to_string(a) + ") is not unit-modulus");
        int inv = -1;
        for (std::size_t b = 0; b < n; ++b)
            if (mg.table[a][b] == 0)
                inv = int(b);
        if (inv < 0)
            throw InputError("metric group: element " + std::to_string(a) + " has no inverse");
        if (std::abs(mg.q[a] - mg.q[inv]) > tol)
            throw InputError("metric group: q(-a) != q(a) at a = " + std::to_string(a));
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const Complex lhs = mg.bilinear(int(a), mg.table[b][c]);
                const Complex rhs = mg.bilinear(int(a), int(b)) * mg.bilinear(int(a), int(c));
                if (std::abs(lhs - rhs) > tol)
                    throw InputError("metric group: b is not a bicharacter at " +
                                     tuple_str({int(a), int(b), int(c)}));
            }
}

bool is_nondegenerate(const MetricGroup& mg)
{
    const std::size_t n = mg.order();
    for (std::size_t a = 1; a < n; ++a) {
        bool trivial = true;
        for (std::size_t b = 0; b < n && trivial; ++b)
            trivial = std::abs(mg.bilinear(int(a), int(b)) - Complex(1.0)) <= mg.tolerance;
        if (trivial)
            return false;
    }
    return true;
}

ModularData metric_group_data(const MetricGroup& mg)
{
    check_metric_group(mg);
    if (!is_nondegenerate(mg))
        throw DegeneracyError("metric group: bilinear form is degenerate");
    const std::size_t n = mg.order();
    ModularData md;
    md.S.resize(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            md.S(a, b) = std::conj(mg.bilinear(int(a), int(b)));
    md.T = mg.q;
    md.tolerance = mg.tolerance;
    return md;
}

} // namespace fusionkit
