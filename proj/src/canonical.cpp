#include <algorithm>
#include <cstdint>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "fusionkit/errors.hpp"
#include "fusionkit/fusion_ring.hpp"

namespace fusionkit {

namespace {

using Signature = std::vector<long long>;

std::vector<int> rank_signatures(const std::vector<Signature>& sigs)
{
    std::vector<Signature> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> colors(sigs.size());
    for (std::size_t i = 0; i < sigs.size(); ++i)
        colors[i] = int(std::lower_bound(sorted.begin(), sorted.end(), sigs[i]) - sorted.begin());
    return colors;
}

int count_colors(const std::vector<int>& colors)
{
    return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
}

// Colour refinement on the structure tensor. Colours only depend on
// relabeling-invariant data, so isomorphic rings get identical colour classes.
std::vector<int> refine_colors(const FusionRing& ring)
{
    const int n = int(ring.rank());
    const DimensionVector dims = fp_dimensions(ring);

    std::vector<Signature> sigs(n);
    for (int i = 0; i < n; ++i)
        sigs[i] = {i == 0 ? 0 : 1, std::llround(dims.dims[i] * 1e6), ring.dual(i) == i ? 0 : 1};
    std::vector<int> colors = rank_signatures(sigs);

    while (true) {
        for (int i = 0; i < n; ++i) {
            std::vector<std::array<long long, 4>> rows;
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (int v = ring(i, j, k))
                        rows.push_back({0, colors[j] * 1LL * n + colors[k], v, 0});
                    if (int v = ring(j, i, k))
                        rows.push_back({1, colors[j] * 1LL * n + colors[k], v, 0});
                    if (int v = ring(j, k, i))
                        rows.push_back({2, colors[j] * 1LL * n + colors[k], v, 0});
                }
            std::sort(rows.begin(), rows.end());
            Signature s{colors[i], colors[ring.dual(i)]};
            for (const auto& r : rows)
                s.insert(s.end(), r.begin(), r.begin() + 3);
            sigs[i] = std::move(s);
        }
        std::vector<int> next = rank_signatures(sigs);
        if (count_colors(next) == count_colors(colors))
            return next;
        colors = std::move(next);
    }
}

struct Partial {
    std::vector<int> order; ///< order[position] = original index
    std::uint64_t used = 0;
};

} // namespace

CanonicalForm canonical_form(const FusionRing& ring, std::size_t rank_cap)
{
    const int n = int(ring.rank());
    if (ring.rank() > rank_cap)
        throw CapacityError("canonical_form: rank " + std::to_string(n) + " exceeds cap " +
                            std::to_string(rank_cap));
    if (n > 64)
        throw CapacityError("canonical_form supports rank <= 64");

    const std::vector<int> colors = refine_colors(ring);
    // position p is reserved for colour slot[p]; colour classes occupy
    // consecutive positions in colour order
    std::vector<int> slot;
    for (int c = 0; c < count_colors(colors); ++c)
        for (int i = 0; i < n; ++i)
            if (colors[i] == c)
                slot.push_back(c);

    // Entries with max(i, j, k) == p in lexicographic order form block p; the
    // canonical labeling is the one whose concatenated blocks are
    // lexicographically largest. Ties are kept level by level.
    std::vector<std::vector<std::array<int, 3>>> block_cells(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                block_cells[std::max({i, j, k})].push_back({i, j, k});

    std::vector<Partial> frontier(1);
    frontier[0].order = {0};
    frontier[0].used = 1;

    std::vector<int> best, candidate;
    for (int p = 1; p < n; ++p) {
        std::vector<Partial> next;
        best.clear();
        bool have_best = false;
        for (const Partial& part : frontier) {
            for (int x = 0; x < n; ++x) {
                if (colors[x] != slot[p] || (part.used >> x) & 1U)
                    continue;
                auto at = [&](int pos) { return pos == p ? x : part.order[pos]; };
                // 0 equal so far, 1 better, -1 worse
                int state = have_best ? 0 : 1;
                candidate.clear();
                const auto& cells = block_cells[p];
                for (std::size_t t = 0; t < cells.size(); ++t) {
                    const int v = ring(at(cells[t][0]), at(cells[t][1]), at(cells[t][2]));
                    if (state == 0) {
                        if (v < best[t]) {
                            state = -1;
                            break;
                        }
                        if (v > best[t])
                            state = 1;
                    }
                    candidate.push_back(v);
                }
                if (state < 0)
                    continue;
                Partial ext = part;
                ext.order.push_back(x);
                ext.used |= std::uint64_t(1) << x;
                if (state == 1) {
                    best = candidate;
                    have_best = true;
                    next.clear();
                }
                next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
    }

    CanonicalForm out;
    out.relabeling.assign(n, 0);
    for (int pos = 0; pos < n; ++pos)
        out.relabeling[frontier.front().order[pos]] = pos;
    out.ring = ring.relabeled(out.relabeling);

    std::ostringstream key;
    key << "r" << n << "|d";
    for (int i = 0; i < n; ++i)
        key << (i ? "," : "") << out.ring.dual(i);
    key << "|N";
    for (const auto& t : out.ring.triples())
        key << ' ' << t[0] << '.' << t[1] << '.' << t[2] << '=' << t[3];
    out.key = key.str();
    return out;
}

} // namespace fusionkit
