#include "fusionkit/grading.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "fusionkit/errors.hpp"

namespace fusionkit {

namespace {

int find_root(std::vector<int>& parent, int x)
{
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

// Product of two invertible basis elements, or -1 if a * b is not a single
// basis element.
int invertible_product(const FusionRing& ring, int a, int b)
{
    int found = -1;
    for (std::size_t k = 0; k < ring.rank(); ++k) {
        const int v = ring(a, b, k);
        if (v == 0)
            continue;
        if (v != 1 || found >= 0)
            return -1;
        found = int(k);
    }
    return found;
}

} // namespace

int Grading::inverse(int a) const
{
    for (std::size_t b = 0; b < order(); ++b)
        if (group[a][b] == trivial)
            return int(b);
    return -1;
}

std::vector<int> Grading::component(int id) const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] == id)
            out.push_back(int(i));
    return out;
}

Grading universal_grading(const FusionRing& ring, bool modular_candidate)
{
    const int n = int(ring.rank());
    const SubBasis ad = adjoint_subbasis(ring);

    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (int i = 0; i < n; ++i)
        for (int a : ad.members)
            for (int k = 0; k < n; ++k)
                if (ring(i, a, k) > 0 || ring(a, i, k) > 0)
                    parent[find_root(parent, i)] = find_root(parent, k);

    Grading g;
    g.assignment.assign(n, -1);
    std::vector<int> id_of_root(n, -1);
    int next_id = 0;
    for (int i = 0; i < n; ++i) {
        const int r = find_root(parent, i);
        if (id_of_root[r] < 0)
            id_of_root[r] = next_id++;
        g.assignment[i] = id_of_root[r];
    }
    g.trivial = g.assignment[0];

    const int order = next_id;
    g.group.assign(order, std::vector<int>(order, -1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (ring(i, j, k) == 0)
                    continue;
                int& cell = g.group[g.assignment[i]][g.assignment[j]];
                if (cell < 0)
                    cell = g.assignment[k];
                else if (cell != g.assignment[k]) {
                    std::ostringstream os;
                    os << "grading is not product-compatible at (" << i << "," << j << "," << k
                       << ")";
                    throw InconsistencyError(os.str());
                }
            }
    for (const auto& row : g.group)
        for (int c : row)
            if (c < 0)
                throw InconsistencyError("grading group law is not total");

    if (g.component(g.trivial) != ad.members)
        throw InconsistencyError("trivial component differs from the adjoint sub-basis");

    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            if (g.group[a][b] != g.group[b][a])
                throw CapacityError("universal grading group is nonabelian (order " +
                                    std::to_string(order) + "); only abelian gradings are supported");

    g.structure = abelian_group_name(g.group);
    if (modular_candidate)
        g.matches_invertibles = std::size_t(order) == invertibles(ring).elements.size();
    return g;
}

std::vector<double> component_dimensions(const FusionRing& ring, const Grading& grading)
{
    const DimensionVector dims = fp_dimensions(ring);
    std::vector<double> out(grading.order(), 0.0);
    for (std::size_t i = 0; i < ring.rank(); ++i)
        out[grading.assignment[i]] += dims.dims[i] * dims.dims[i];
    for (double d : out)
        if (std::abs(d - out[0]) > 1e-9 * std::max(1.0, out[0]))
            throw InconsistencyError("components of a faithful grading have unequal dimensions");
    return out;
}

ValidationReport validate_cochain(const FusionRing& ring, const Grading& grading,
                                  const PointedCochain& chi)
{
    const int order = int(grading.order());
    if (chi.group_order != grading.order())
        throw InputError("cochain group order " + std::to_string(chi.group_order) +
                         " does not match grading group order " + std::to_string(order));
    if (chi.values.size() != grading.order() * grading.order())
        throw InputError("cochain needs group_order^2 values");
    const InvertibleGroup inv = invertibles(ring);
    for (std::size_t t = 0; t < chi.values.size(); ++t)
        if (!inv.elements.contains(chi.values[t]))
            throw InputError("cochain value " + std::to_string(chi.values[t]) + " at (" +
                             std::to_string(t / order) + "," + std::to_string(t % order) +
                             ") is not invertible");

    ValidationReport report;
    const int e = grading.trivial;

    Check norm{"normalized"};
    for (int a = 0; a < order && norm.passed; ++a)
        if (chi(e, a) != 0 || chi(a, e) != 0) {
            norm.passed = false;
            norm.witness = {a};
            norm.detail = "chi(e," + std::to_string(a) + ") or chi(" + std::to_string(a) +
                          ",e) is not the unit";
        }
    report.checks.push_back(norm);

    Check cocycle{"cocycle"};
    for (int i = 0; i < order && cocycle.passed; ++i)
        for (int j = 0; j < order && cocycle.passed; ++j)
            for (int k = 0; k < order && cocycle.passed; ++k) {
                const int lhs = invertible_product(ring, chi(j, k), chi(i, grading.group[j][k]));
                const int rhs = invertible_product(ring, chi(i, j), chi(grading.group[i][j], k));
                if (lhs != rhs) {
                    cocycle.passed = false;
                    cocycle.witness = {i, j, k};
                    std::ostringstream os;
                    os << "chi(j,k) chi(i,j+k) = " << ring.label(lhs) << " but chi(i,j) chi(i+j,k) = "
                       << ring.label(rhs) << " at (i,j,k) = (" << i << "," << j << "," << k << ")";
                    cocycle.detail = os.str();
                }
            }
    report.checks.push_back(cocycle);

    if (chi.symmetric_asserted) {
        Check sym{"symmetric"};
        for (int a = 0; a < order && sym.passed; ++a)
            for (int b = 0; b < order && sym.passed; ++b)
                if (chi(a, b) != chi(b, a)) {
                    sym.passed = false;
                    sym.witness = {a, b};
                    sym.detail = "chi(a,b) != chi(b,a)";
                }
        report.checks.push_back(sym);
    }
    return report;
}

ValidationReport validate_cochain(const FusionRing& ring, const PointedCochain& chi)
{
    return validate_cochain(ring, universal_grading(ring), chi);
}

FusionRing graded_twist(const FusionRing& ring, const PointedCochain& chi)
{
    const Grading grading = universal_grading(ring);
    const ValidationReport chk = validate_cochain(ring, grading, chi);
    for (const auto& c : chk.checks)
        if (!c.passed)
            throw InconsistencyError("cochain rejected (" + c.name + "): " + c.detail);

    const std::size_t n = ring.rank();
    std::vector<int> tensor(n * n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const int g = chi(grading.assignment[a], grading.assignment[b]);
            const int ga = invertible_product(ring, g, int(a));
            if (ga < 0)
                throw InconsistencyError("left action of a cochain value is not a permutation");
            for (std::size_t c = 0; c < n; ++c)
                tensor[(a * n + b) * n + c] = ring(ga, b, c);
        }

    std::vector<int> dual(n, -1);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) {
            const int v = tensor[(a * n + c) * n];
            if (v == 0)
                continue;
            if (v != 1 || dual[a] >= 0)
                throw InconsistencyError("twisted product has no well-defined dual for " +
                                         ring.label(a));
            dual[a] = int(c);
        }
    for (std::size_t a = 0; a < n; ++a)
        if (dual[a] < 0)
            throw InconsistencyError("twisted product leaves " + ring.label(a) + " without a dual");

    std::vector<int> seen(n, 0);
    for (int d : dual)
        if (seen[d]++)
            throw InconsistencyError("twisted duals do not form a permutation");

    FusionRing twisted(ring.labels(), dual, std::move(tensor));
    const ValidationReport v = validate_fusion_ring(twisted);
    for (const auto& c : v.checks)
        if (!c.passed)
            throw InconsistencyError("twisted ring fails " + c.name + ": " + c.detail +
                                     " (cochain inconsistent with this grading)");
    return twisted;
}

PointedCochain inverse_cochain(const FusionRing& ring, const PointedCochain& chi)
{
    PointedCochain out = chi;
    for (int& v : out.values)
        v = ring.dual(v);
    return out;
}

} // namespace fusionkit
