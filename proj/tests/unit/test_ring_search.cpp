#include <gtest/gtest.h>

#include <chrono>
#include <set>

#include "fusionkit/errors.hpp"
#include "fusionkit/io.hpp"
#include "fusionkit/ring_search.hpp"
#include "helpers.hpp"

using namespace fusionkit;
using namespace testing_helpers;

namespace {

SearchSpec spec36()
{
    return load_search_spec(fixture("search/spec36.json"));
}

// Spec whose every cell is fixed to the ring's value except `open`.
SearchSpec pinned_spec(const FusionRing& ring, const DimensionVector& dims,
                       const std::vector<std::array<int, 3>>& open, int bound)
{
    SearchSpec s;
    s.labels = ring.labels();
    s.dual = ring.duals();
    for (long long d : dims.integer_dims)
        s.dims.push_back(d);
    const int n = int(ring.rank());
    std::set<std::array<int, 3>> o(open.begin(), open.end());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (!o.contains({i, j, k}))
                    s.fixed.push_back({i, j, k, ring(i, j, k)});
    s.global_bound = bound;
    return s;
}

bool satisfies_spec(const FusionRing& r, const SearchSpec& s)
{
    const int n = int(r.rank());
    if (!validate_fusion_ring(r).valid())
        return false;
    for (const auto& f : s.fixed)
        if (r(f[0], f[1], f[2]) != f[3])
            return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long long sum = 0;
            for (int k = 0; k < n; ++k) {
                const int v = r(i, j, k);
                sum += v * s.dims[k];
                if (s.global_bound && v > *s.global_bound)
                    return false;
                if (s.commutative && v != r(j, i, k))
                    return false;
                if (!s.grading.empty() && v > 0 &&
                    s.grading[k] != (s.grading[i] + s.grading[j]) % 3)
                    return false;
                for (const auto& act : s.pointed_action)
                    if (r(act.permutation[i], j, act.permutation[k]) != v)
                        return false;
            }
            if (sum != s.dims[i] * s.dims[j])
                return false;
        }
    return true;
}

// Every assignment of 0..bound to the open cells.
std::vector<FusionRing> naive_completions(const FusionRing& base, const SearchSpec& s,
                                          const std::vector<std::array<int, 3>>& open, int bound)
{
    const std::size_t n = base.rank();
    std::vector<FusionRing> out;
    std::vector<int> vals(open.size(), 0);
    while (true) {
        std::vector<int> t = base.tensor();
        for (std::size_t c = 0; c < open.size(); ++c)
            t[(open[c][0] * n + open[c][1]) * n + open[c][2]] = vals[c];
        FusionRing r(base.labels(), base.duals(), t);
        if (satisfies_spec(r, s))
            out.push_back(r);
        std::size_t c = 0;
        while (c < vals.size() && ++vals[c] > bound)
            vals[c++] = 0;
        if (c == vals.size())
            break;
    }
    return out;
}

std::set<std::vector<int>> tensors(const std::vector<FusionRing>& rings)
{
    std::set<std::vector<int>> s;
    for (const auto& r : rings)
        s.insert(r.tensor());
    return s;
}

FusionRing rep_s3()
{
    // 1, sign, V with V V = 1 + sign + V
    std::vector<std::array<int, 4>> t{{0, 0, 0, 1}, {0, 1, 1, 1}, {0, 2, 2, 1}, {1, 0, 1, 1},
                                      {1, 1, 0, 1}, {1, 2, 2, 1}, {2, 0, 2, 1}, {2, 1, 2, 1},
                                      {2, 2, 0, 1}, {2, 2, 1, 1}, {2, 2, 2, 1}};
    return FusionRing::from_triples({"1", "s", "V"}, {0, 1, 2}, t);
}

FusionRing rep_a4()
{
    // 1, w, w2, V with V V = 1 + w + w2 + 2V
    std::vector<std::array<int, 4>> t;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b)
            t.push_back({a, b, (a + b) % 3, 1});
        t.push_back({a, 3, 3, 1});
        t.push_back({3, a, 3, 1});
        t.push_back({3, 3, a, 1});
    }
    t.push_back({3, 3, 3, 2});
    return FusionRing::from_triples({"1", "w", "w2", "V"}, {0, 2, 1, 3}, t);
}

} // namespace

TEST(SearchSpecIo, RoundTrip)
{
    const SearchSpec s = spec36();
    EXPECT_EQ(s.rank(), 10u);
    EXPECT_TRUE(s.commutative);
    ASSERT_TRUE(s.relabel_group.has_value());
    const SearchSpec back = search_spec_from_json(search_spec_to_json(s));
    EXPECT_EQ(search_spec_to_json(back), search_spec_to_json(s));
}

TEST(SearchSpecIo, Rejects)
{
    json j = search_spec_to_json(spec36());
    j["dims"] = {1, 1};
    EXPECT_THROW(validate_spec(search_spec_from_json(j)), InputError);
    j = search_spec_to_json(spec36());
    j["pointed_action"][0]["permutation"] = {1, 2, 0, 3, 5, 6, 4, 8, 9, 9};
    EXPECT_THROW(validate_spec(search_spec_from_json(j)), InputError);
    j = search_spec_to_json(spec36());
    j["relabel_group"] = {{0, 3, 1, 2, 4, 5, 6, 7, 8, 9}};
    EXPECT_THROW(validate_spec(search_spec_from_json(j)), InputError);
    j = search_spec_to_json(spec36());
    j["N"] = {{3, 3, 3, 1}, {3, 3, 3, 2}};
    EXPECT_THROW(validate_spec(search_spec_from_json(j)), InputError);
}

TEST(ForcedEntries, FullyFixedSpecUnchanged)
{
    const FusionRing z3 = ring_fixture("z3");
    SearchSpec s;
    s.labels = z3.labels();
    s.dual = z3.duals();
    s.dims = {1, 1, 1};
    for (const auto& t : z3.triples())
        s.fixed.push_back(t);
    s.free.emplace();
    const ForcedEntries f = derive_forced_entries(s);
    EXPECT_EQ(f.forced_cells, 0u);
    EXPECT_TRUE(f.open.empty());
    EXPECT_EQ(f.spec.fixed, s.fixed);

    const SearchResult r = complete_fusion_rings(s);
    ASSERT_EQ(r.raw.size(), 1u);
    ASSERT_EQ(r.rings.size(), 1u);
    EXPECT_EQ(r.rings[0], z3);
}

TEST(ForcedEntries, Spec36LeavesOnlyXXRow)
{
    const ForcedEntries f = derive_forced_entries(spec36());
    EXPECT_GT(f.forced_cells, 0u);
    std::map<std::array<int, 3>, int> val;
    for (const auto& c : f.spec.fixed)
        val[{c[0], c[1], c[2]}] = c[3];
    // Y Y = 1 + g + g2 + 2Y
    EXPECT_EQ(val.at({3, 3, 0}), 1);
    EXPECT_EQ(val.at({3, 3, 1}), 1);
    EXPECT_EQ(val.at({3, 3, 2}), 1);
    EXPECT_EQ(val.at({3, 3, 3}), 2);
    // Y X = X + gX + g2X, g X = gX
    for (int k = 4; k < 7; ++k)
        EXPECT_EQ(val.at({3, 4, k}), 1);
    EXPECT_EQ(val.at({1, 4, 5}), 1);
    // X X* = 1 + Y
    EXPECT_EQ(val.at({4, 7, 0}), 1);
    EXPECT_EQ(val.at({4, 7, 3}), 1);
    EXPECT_EQ(val.at({4, 7, 1}), 0);

    std::set<std::array<int, 3>> open_x_rows;
    for (const auto& c : f.open) {
        EXPECT_TRUE(c[0] >= 4 && c[1] >= 4) << c[0] << c[1] << c[2];
        if (c[0] == 4 && c[1] == 4)
            open_x_rows.insert(c);
    }
    EXPECT_EQ(open_x_rows, (std::set<std::array<int, 3>>{{4, 4, 7}, {4, 4, 8}, {4, 4, 9}}));
}

TEST(ForcedEntries, DimensionContradiction)
{
    SearchSpec s = spec36();
    s.fixed.push_back({3, 3, 3, 3});
    try {
        derive_forced_entries(s);
        FAIL() << "expected a contradiction";
    } catch (const InconsistencyError& e) {
        EXPECT_NE(std::string(e.what()).find("dimension equation"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("at least 12"), std::string::npos) << e.what();
    }
    EXPECT_THROW(complete_fusion_rings(s), InputError);
}

TEST(CompleteRings, Spec36)
{
    const auto start = std::chrono::steady_clock::now();
    const SearchSpec s = spec36();
    const SearchResult r = complete_fusion_rings(s);
    EXPECT_EQ(r.raw.size(), 3u);
    ASSERT_EQ(r.rings.size(), 2u);
    for (const auto& ring : r.raw)
        EXPECT_TRUE(satisfies_spec(ring, s));
    const std::set<std::string> keys(r.keys.begin(), r.keys.end());
    const std::set<std::string> expected{canonical_form(ring_fixture("prop36_i")).key,
                                         canonical_form(ring_fixture("prop36_ii")).key};
    EXPECT_EQ(keys, expected);
    EXPECT_TRUE(std::is_sorted(r.keys.begin(), r.keys.end()));
    EXPECT_EQ(r.stats.free_orbits, 3u);
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 60.0);
}

TEST(CompleteRings, MultiplicityTwoPruned)
{
    SearchSpec s = spec36();
    for (int k = 7; k < 10; ++k)
        s.bounds.push_back({4, 4, k, 2});
    const SearchResult r = complete_fusion_rings(s);
    EXPECT_EQ(r.raw.size(), 3u);
    EXPECT_EQ(r.rings.size(), 2u);
    EXPECT_GE(r.stats.contradictions + r.stats.rejected_leaves, 3u);
    for (const auto& ring : r.raw)
        for (int k = 7; k < 10; ++k)
            EXPECT_LE(ring(4, 4, k), 1);

    // capping X X at multiplicity 1 reaches the same rings without pruning
    SearchSpec one = spec36();
    for (int k = 7; k < 10; ++k)
        one.bounds.push_back({4, 4, k, 1});
    const SearchResult r1 = complete_fusion_rings(one);
    EXPECT_EQ(tensors(r1.raw), tensors(r.raw));
    EXPECT_EQ(r1.stats.contradictions, 0u);
}

TEST(CompleteRings, DroppingTheActionAddsNoClasses)
{
    SearchOptions opt;
    opt.use_pointed_action = false;
    const SearchResult r = complete_fusion_rings(spec36(), opt);
    EXPECT_GE(r.raw.size(), 3u);
    const std::set<std::string> keys(r.keys.begin(), r.keys.end());
    EXPECT_EQ(keys.size(), 2u);
}

TEST(CompleteRings, DeterministicAcrossWorkers)
{
    SearchOptions one, four;
    four.workers = 4;
    const SearchResult a = complete_fusion_rings(spec36(), one);
    const SearchResult b = complete_fusion_rings(spec36(), four);
    EXPECT_EQ(a.keys, b.keys);
    EXPECT_EQ(tensors(a.raw), tensors(b.raw));
    ASSERT_EQ(a.raw.size(), b.raw.size());
    for (std::size_t i = 0; i < a.raw.size(); ++i)
        EXPECT_EQ(a.raw[i], b.raw[i]);
    EXPECT_EQ(a.stats.nodes, b.stats.nodes);
}

TEST(CompleteRings, NodeCap)
{
    SearchOptions opt;
    opt.node_cap = 1;
    SearchSpec s = spec36();
    EXPECT_THROW(complete_fusion_rings(s, opt), CapacityError);
}

TEST(CompleteRings, UnknownDualsEnumerated)
{
    SearchSpec s = spec36();
    for (int i = 4; i < 10; ++i)
        s.dual[i] = -1;
    const SearchResult r = complete_fusion_rings(s);
    EXPECT_GT(r.stats.dual_choices, 1u);
    for (const auto& ring : r.raw)
        EXPECT_TRUE(validate_fusion_ring(ring).valid());
    std::set<std::string> keys(r.keys.begin(), r.keys.end());
    EXPECT_TRUE(keys.contains(canonical_form(ring_fixture("prop36_i")).key));
    EXPECT_TRUE(keys.contains(canonical_form(ring_fixture("prop36_ii")).key));
}

TEST(CompleteRings, NaiveOracleSmallSpecs)
{
    const std::vector<FusionRing> bases{rep_s3(), rep_a4(), group_ring(cyclic_product_table({2, 2})),
                                        ring_fixture("z3"), ring_fixture("prop36_i")};
    std::mt19937 rng(7);
    int trials = 0, empty_cases = 0, found_cases = 0;
    for (const auto& base : bases) {
        const DimensionVector dims = fp_dimensions(base);
        ASSERT_TRUE(dims.integral);
        const int n = int(base.rank());
        for (int trial = 0; trial < 12; ++trial) {
            std::set<std::array<int, 3>> pick;
            std::uniform_int_distribution<int> u(0, n - 1);
            const int want = 1 + trial % 6;
            // mostly cells of the base ring's support so that there is something to find
            while (int(pick.size()) < want) {
                std::array<int, 3> c{u(rng), u(rng), u(rng)};
                if (trial % 3 != 0 && base(c[0], c[1], c[2]) == 0 && rng() % 4 != 0)
                    continue;
                pick.insert(c);
            }
            const std::vector<std::array<int, 3>> open(pick.begin(), pick.end());
            const int bound = 1 + trial % 3;
            SearchSpec s = pinned_spec(base, dims, open, bound);
            if (trial % 4 == 3) {
                // perturb one pinned cell; usually leaves nothing to find
                auto& f = s.fixed[rng() % s.fixed.size()];
                f[3] = f[3] > 0 ? f[3] - 1 : 1;
            }
            FusionRing start = base;
            {
                std::vector<int> t = base.tensor();
                for (const auto& f : s.fixed)
                    t[(f[0] * n + f[1]) * n + f[2]] = f[3];
                start = FusionRing(base.labels(), base.duals(), t);
            }
            std::vector<FusionRing> expected = naive_completions(start, s, open, bound);
            (expected.empty() ? empty_cases : found_cases)++;
            SearchResult got;
            try {
                got = complete_fusion_rings(s);
            } catch (const InputError&) {
                // propagation refuted the spec before branching
                EXPECT_TRUE(expected.empty());
                continue;
            }
            EXPECT_EQ(tensors(got.raw), tensors(expected)) << "base rank " << n << " trial " << trial;
            ++trials;
        }
    }
    EXPECT_GT(trials, 30);
    EXPECT_GT(empty_cases, 5);
    EXPECT_GT(found_cases, 20);
}
