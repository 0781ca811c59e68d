#include "fusionkit/fusion_ring.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "fusionkit/errors.hpp"

namespace fusionkit {

namespace {

std::string tuple_string(std::initializer_list<int> idx)
{
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (int i : idx) {
        if (!first)
            os << ',';
        os << i;
        first = false;
    }
    os << ')';
    return os.str();
}

} // namespace

FusionRing::FusionRing(std::vector<std::string> labels, std::vector<int> dual, std::vector<int> tensor)
    : labels_(std::move(labels)), dual_(std::move(dual)), n_(std::move(tensor))
{
    const std::size_t n = labels_.size();
    if (n == 0)
        throw InputError("fusion ring needs at least one basis element");
    if (n > kMaxDenseRank)
        throw CapacityError("rank " + std::to_string(n) + " exceeds dense tensor cap " +
                            std::to_string(kMaxDenseRank));
    if (dual_.size() != n)
        throw InputError("dual has length " + std::to_string(dual_.size()) + ", expected " +
                         std::to_string(n));
    if (n_.size() != n * n * n)
        throw InputError("structure tensor is not " + std::to_string(n) + "^3");
    std::vector<bool> hit(n, false);
    for (int d : dual_) {
        if (d < 0 || static_cast<std::size_t>(d) >= n)
            throw InputError("dual entry " + std::to_string(d) + " out of range");
        if (hit[d])
            throw InputError("dual is not a permutation (repeated " + std::to_string(d) + ")");
        hit[d] = true;
    }
    for (std::size_t c = 0; c < n_.size(); ++c) {
        if (n_[c] < 0) {
            const std::size_t i = c / (n * n), j = (c / n) % n, k = c % n;
            throw InputError("negative structure constant at " +
                             tuple_string({int(i), int(j), int(k)}));
        }
    }
}

FusionRing FusionRing::from_triples(std::vector<std::string> labels, std::vector<int> dual,
                                    std::span<const std::array<int, 4>> triples)
{
    const std::size_t n = labels.size();
    if (n > kMaxDenseRank)
        throw CapacityError("rank " + std::to_string(n) + " exceeds dense tensor cap " +
                            std::to_string(kMaxDenseRank));
    std::vector<int> tensor(n * n * n, 0);
    for (const auto& t : triples) {
        for (int a = 0; a < 3; ++a)
            if (t[a] < 0 || static_cast<std::size_t>(t[a]) >= n)
                throw InputError("triple index out of range: " +
                                 tuple_string({t[0], t[1], t[2]}));
        if (t[3] < 0)
            throw InputError("negative structure constant at " +
                             tuple_string({t[0], t[1], t[2]}));
        tensor[(std::size_t(t[0]) * n + t[1]) * n + t[2]] = t[3];
    }
    return FusionRing(std::move(labels), std::move(dual), std::move(tensor));
}

std::vector<std::array<int, 4>> FusionRing::triples() const
{
    std::vector<std::array<int, 4>> out;
    const std::size_t n = rank();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (int v = (*this)(i, j, k); v != 0)
                    out.push_back({int(i), int(j), int(k), v});
    return out;
}

FusionRing FusionRing::relabeled(std::span<const int> perm) const
{
    const std::size_t n = rank();
    if (perm.size() != n)
        throw InputError("relabeling has wrong length");
    std::vector<std::string> labels(n);
    std::vector<int> dual(n);
    std::vector<int> tensor(n * n * n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[perm[i]] = labels_[i];
        dual[perm[i]] = perm[dual_[i]];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                tensor[(std::size_t(perm[i]) * n + perm[j]) * n + perm[k]] = (*this)(i, j, k);
    return FusionRing(std::move(labels), std::move(dual), std::move(tensor));
}

int FusionRing::find(const std::string& label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    return it == labels_.end() ? -1 : int(it - labels_.begin());
}

bool SubBasis::contains(int i) const
{
    return std::binary_search(members.begin(), members.end(), i);
}

bool SubBasis::subset_of(const SubBasis& other) const
{
    return std::includes(other.members.begin(), other.members.end(), members.begin(),
                         members.end());
}

ValidationReport validate_fusion_ring(const FusionRing& ring)
{
    const int n = int(ring.rank());
    ValidationReport report;

    Check unit{"unit"};
    for (int j = 0; j < n && unit.passed; ++j)
        for (int k = 0; k < n && unit.passed; ++k) {
            const int want = j == k ? 1 : 0;
            if (ring(0, j, k) != want) {
                unit.passed = false;
                unit.witness = {0, j, k};
            } else if (ring(j, 0, k) != want) {
                unit.passed = false;
                unit.witness = {j, 0, k};
            }
        }
    if (!unit.passed)
        unit.detail = "N" + tuple_string({unit.witness[0], unit.witness[1], unit.witness[2]}) +
                      " breaks the unit axiom";
    report.checks.push_back(unit);

    Check dual{"dual"};
    if (ring.dual(0) != 0) {
        dual.passed = false;
        dual.witness = {0};
        dual.detail = "dual of the unit is not the unit";
    }
    for (int i = 0; i < n && dual.passed; ++i)
        if (ring.dual(ring.dual(i)) != i) {
            dual.passed = false;
            dual.witness = {i};
            dual.detail = "dual is not an involution at " + std::to_string(i);
        }
    for (int i = 0; i < n && dual.passed; ++i)
        for (int j = 0; j < n && dual.passed; ++j)
            if (ring(i, j, 0) != (j == ring.dual(i) ? 1 : 0)) {
                dual.passed = false;
                dual.witness = {i, j, 0};
                dual.detail = "N" + tuple_string({i, j, 0}) + " = " +
                              std::to_string(ring(i, j, 0)) + " breaks the dual axiom";
            }
    report.checks.push_back(dual);

    Check assoc{"associativity"};
    for (int i = 0; i < n && assoc.passed; ++i)
        for (int j = 0; j < n && assoc.passed; ++j)
            for (int k = 0; k < n && assoc.passed; ++k)
                for (int l = 0; l < n && assoc.passed; ++l) {
                    long long lhs = 0, rhs = 0;
                    for (int m = 0; m < n; ++m) {
                        lhs += 1LL * ring(i, j, m) * ring(m, k, l);
                        rhs += 1LL * ring(j, k, m) * ring(i, m, l);
                    }
                    if (lhs != rhs) {
                        assoc.passed = false;
                        assoc.witness = {i, j, k, l};
                        assoc.residual = double(std::llabs(lhs - rhs));
                        assoc.detail = "((i j) k) and (i (j k)) differ in multiplicity of l at " +
                                       tuple_string({i, j, k, l}) + ": " + std::to_string(lhs) +
                                       " vs " + std::to_string(rhs);
                    }
                }
    report.checks.push_back(assoc);

    Check frob{"frobenius_reciprocity"};
    if (dual.passed) {
        for (int i = 0; i < n && frob.passed; ++i)
            for (int j = 0; j < n && frob.passed; ++j)
                for (int k = 0; k < n && frob.passed; ++k) {
                    const int v = ring(i, j, k);
                    if (v != ring(ring.dual(i), k, j) || v != ring(k, ring.dual(j), i)) {
                        frob.passed = false;
                        frob.witness = {i, j, k};
                        frob.detail = "N" + tuple_string({i, j, k}) +
                                      " differs from its reciprocal cells";
                    }
                }
    } else {
        frob.passed = false;
        frob.detail = "not checked: dual axiom failed";
    }
    report.checks.push_back(frob);
    return report;
}

DimensionVector fp_dimensions(const FusionRing& ring, const FpOptions& options)
{
    const std::size_t n = ring.rank();
    // Sum of all fusion matrices: strictly positive for a fusion ring, and the
    // dimension vector is its Perron eigenvector.
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                m[j * n + k] += ring(i, j, k);

    std::vector<double> v(n, 1.0), w(n);
    DimensionVector out;
    bool converged = false;
    double change = 0.0;
    for (int it = 1; it <= options.max_iterations; ++it) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += m[j * n + k] * v[k];
            w[j] = s;
        }
        if (w[0] <= 0.0)
            throw NumericalError("power iteration collapsed on the unit coordinate");
        const double scale = w[0];
        change = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            w[j] /= scale;
            change = std::max(change, std::abs(w[j] - v[j]) / std::max(1.0, std::abs(w[j])));
        }
        v.swap(w);
        out.iterations = it;
        if (change < options.tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream os;
        os << "FP dimension iteration did not converge after " << options.max_iterations
           << " iterations (last relative change " << change << ")";
        throw NumericalError(os.str());
    }
    out.dims = v;
    out.global = 0.0;
    for (double d : v)
        out.global += d * d;

    bool near_integer = true;
    std::vector<long long> ints(n);
    for (std::size_t i = 0; i < n; ++i) {
        ints[i] = std::llround(v[i]);
        if (ints[i] < 1 || std::abs(v[i] - double(ints[i])) > 1e-6)
            near_integer = false;
    }
    if (near_integer) {
        bool exact = true;
        for (std::size_t i = 0; i < n && exact; ++i)
            for (std::size_t j = 0; j < n && exact; ++j) {
                long long s = 0;
                for (std::size_t k = 0; k < n; ++k)
                    s += ring(i, j, k) * ints[k];
                exact = s == ints[i] * ints[j];
            }
        if (exact) {
            out.integral = true;
            out.integer_dims = ints;
            out.integer_global = 0;
            for (long long d : ints)
                out.integer_global += d * d;
            for (std::size_t i = 0; i < n; ++i)
                out.dims[i] = double(ints[i]);
            out.global = double(out.integer_global);
        }
    }
    return out;
}

std::string abelian_group_name(const std::vector<std::vector<int>>& table)
{
    const int n = int(table.size());
    if (n == 1)
        return "Z1";
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (table[a][b] != table[b][a])
                return "nonabelian group of order " + std::to_string(n);

    auto order_of = [&](int x) {
        int o = 1, y = x;
        while (y != 0 && o <= n) {
            y = table[y][x];
            ++o;
        }
        return o;
    };
    std::vector<int> orders(n);
    for (int x = 0; x < n; ++x)
        orders[x] = order_of(x);

    std::vector<int> factors;
    int rest = n;
    for (int p = 2; rest > 1; ++p) {
        if (rest % p != 0)
            continue;
        int pk = 1;
        while (rest % p == 0) {
            rest /= p;
            pk *= p;
        }
        // s[k] = log_p #{x : ord(x) | p^k}; factors of order >= p^k = s[k] - s[k-1]
        std::vector<int> s{0};
        for (int q = p; q <= pk; q *= p) {
            int count = 0;
            for (int x = 0; x < n; ++x)
                if (q % orders[x] == 0)
                    ++count;
            int e = 0;
            while (count > 1) {
                count /= p;
                ++e;
            }
            s.push_back(e);
        }
        std::vector<int> at_least;
        for (std::size_t k = 1; k < s.size(); ++k)
            at_least.push_back(s[k] - s[k - 1]);
        for (std::size_t k = 0; k < at_least.size(); ++k) {
            const int exact = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
            int ord = 1;
            for (std::size_t t = 0; t <= k; ++t)
                ord *= p;
            for (int r = 0; r < exact; ++r)
                factors.push_back(ord);
        }
    }
    std::string name;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i)
            name += "x";
        name += "Z" + std::to_string(factors[i]);
    }
    return name;
}

InvertibleGroup invertibles(const FusionRing& ring)
{
    const int n = int(ring.rank());
    InvertibleGroup g;
    std::vector<int> image(n);
    for (int i = 0; i < n; ++i) {
        bool perm = true;
        std::vector<int> colsum(n, 0);
        for (int j = 0; j < n && perm; ++j) {
            int row = 0;
            for (int k = 0; k < n; ++k) {
                const int v = ring(i, j, k);
                row += v;
                colsum[k] += v;
            }
            perm = row == 1;
        }
        for (int k = 0; k < n && perm; ++k)
            perm = colsum[k] == 1;
        if (perm)
            g.elements.members.push_back(i);
    }
    const auto& els = g.elements.members;
    std::map<int, int> position;
    for (std::size_t a = 0; a < els.size(); ++a)
        position[els[a]] = int(a);
    g.table.assign(els.size(), std::vector<int>(els.size(), -1));
    std::vector<std::vector<int>> pos_table(els.size(), std::vector<int>(els.size(), 0));
    for (std::size_t a = 0; a < els.size(); ++a)
        for (std::size_t b = 0; b < els.size(); ++b)
            for (int k = 0; k < n; ++k)
                if (ring(els[a], els[b], k) == 1) {
                    g.table[a][b] = k;
                    pos_table[a][b] = position.count(k) ? position[k] : 0;
                }
    for (std::size_t a = 0; a < els.size(); ++a)
        for (std::size_t b = 0; b < els.size(); ++b)
            if (g.table[a][b] != g.table[b][a])
                g.abelian = false;
    g.structure = abelian_group_name(pos_table);
    return g;
}

SubBasis generated_subbasis(const FusionRing& ring, std::span<const int> seeds)
{
    const int n = int(ring.rank());
    std::vector<bool> in(n, false);
    std::vector<int> members{0};
    in[0] = true;
    auto add = [&](int x) {
        if (x < 0 || x >= n)
            throw InputError("seed index " + std::to_string(x) + " out of range");
        if (!in[x]) {
            in[x] = true;
            members.push_back(x);
        }
    };
    for (int s : seeds) {
        add(s);
        add(ring.dual(s));
    }
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<int> snapshot = members;
        for (int i : snapshot)
            for (int j : snapshot)
                for (int k = 0; k < n; ++k)
                    if (!in[k] && ring(i, j, k) > 0) {
                        add(k);
                        add(ring.dual(k));
                        grew = true;
                    }
    }
    std::sort(members.begin(), members.end());
    return SubBasis{members};
}

SubBasis adjoint_subbasis(const FusionRing& ring, const SubBasis& within)
{
    const int n = int(ring.rank());
    std::vector<int> seeds;
    for (int i : within.members)
        for (int k = 0; k < n; ++k)
            if (ring(i, ring.dual(i), k) > 0)
                seeds.push_back(k);
    return generated_subbasis(ring, seeds);
}

SubBasis adjoint_subbasis(const FusionRing& ring)
{
    SubBasis all;
    all.members.resize(ring.rank());
    std::iota(all.members.begin(), all.members.end(), 0);
    return adjoint_subbasis(ring, all);
}

bool is_closed(const FusionRing& ring, const SubBasis& sub)
{
    if (!sub.contains(0))
        return false;
    for (int i : sub.members) {
        if (!sub.contains(ring.dual(i)))
            return false;
        for (int j : sub.members)
            for (std::size_t k = 0; k < ring.rank(); ++k)
                if (ring(i, j, k) > 0 && !sub.contains(int(k)))
                    return false;
    }
    return true;
}

NilpotencyResult is_nilpotent(const FusionRing& ring)
{
    NilpotencyResult out;
    SubBasis current;
    current.members.resize(ring.rank());
    std::iota(current.members.begin(), current.members.end(), 0);
    out.chain.push_back(current);
    while (true) {
        SubBasis next = adjoint_subbasis(ring, current);
        if (next == current)
            break;
        out.chain.push_back(next);
        current = std::move(next);
    }
    out.nilpotent = current.size() == 1;
    return out;
}

double subbasis_dimension(const DimensionVector& dims, const SubBasis& sub)
{
    double s = 0.0;
    for (int i : sub.members)
        s += dims.dims[i] * dims.dims[i];
    return s;
}

} // namespace fusionkit
