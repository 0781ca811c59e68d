#include <gtest/gtest.h>

#include <cmath>

#include "fusionkit/errors.hpp"
#include "fusionkit/fusion_ring.hpp"
#include "helpers.hpp"

using namespace fusionkit;
using namespace testing_helpers;

namespace {

const std::vector<std::string> kRingFixtures = {"trivial", "z3", "prop36_i", "prop36_ii"};

SubBasis sb(std::vector<int> m) { return SubBasis{std::move(m)}; }

} // namespace

TEST(Validate, GroupRingIsValid)
{
    EXPECT_TRUE(validate_fusion_ring(ring_fixture("z3")).valid());
}

TEST(Validate, ThirtySixRingsAreValid)
{
    for (const char* name : {"prop36_i", "prop36_ii"}) {
        const auto rep = validate_fusion_ring(ring_fixture(name));
        EXPECT_TRUE(rep.valid()) << name;
        EXPECT_EQ(rep.checks.size(), 4u);
    }
}

TEST(Validate, BrokenEntryFailsAssociativity)
{
    const auto rep = validate_fusion_ring(ring_fixture("z3_broken"));
    EXPECT_FALSE(rep.valid());
    const Check* a = rep.find("associativity");
    ASSERT_NE(a, nullptr);
    EXPECT_FALSE(a->passed);
    ASSERT_EQ(a->witness.size(), 4u);
    EXPECT_TRUE(rep.find("unit")->passed);
}

TEST(Validate, MalformedInputIsInputError)
{
    EXPECT_THROW(FusionRing({"1", "a"}, {0, 1}, std::vector<int>(7, 0)), InputError);
    EXPECT_THROW(FusionRing({"1", "a"}, {0, 0}, std::vector<int>(8, 0)), InputError);
    std::vector<int> neg(8, 0);
    neg[3] = -1;
    EXPECT_THROW(FusionRing({"1", "a"}, {0, 1}, neg), InputError);
    EXPECT_THROW(FusionRing({}, {}, {}), InputError);
}

TEST(Validate, DualAxiomWitness)
{
    // unit plus one element whose square is only itself: no unit in a * a
    std::vector<std::array<int, 4>> t{{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 1, 1}};
    const auto ring = FusionRing::from_triples({"1", "a"}, {0, 1}, t);
    const auto rep = validate_fusion_ring(ring);
    EXPECT_FALSE(rep.find("dual")->passed);
    EXPECT_EQ(rep.find("dual")->witness, (std::vector<int>{1, 1, 0}));
}

TEST(FpDimensions, Trivial)
{
    const auto d = fp_dimensions(ring_fixture("trivial"));
    EXPECT_EQ(d.dims, std::vector<double>{1.0});
    EXPECT_DOUBLE_EQ(d.global, 1.0);
    EXPECT_TRUE(d.integral);
}

TEST(FpDimensions, ThirtySix)
{
    const auto d = fp_dimensions(ring_fixture("prop36_i"));
    EXPECT_TRUE(d.integral);
    EXPECT_EQ(d.integer_dims, (std::vector<long long>{1, 1, 1, 3, 2, 2, 2, 2, 2, 2}));
    EXPECT_EQ(d.integer_global, 36);
}

TEST(FpDimensions, NonIntegralFibonacci)
{
    std::vector<std::array<int, 4>> t{{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1},
                                      {1, 1, 1, 1}};
    const auto ring = FusionRing::from_triples({"1", "tau"}, {0, 1}, t);
    ASSERT_TRUE(validate_fusion_ring(ring).valid());
    const auto d = fp_dimensions(ring);
    EXPECT_FALSE(d.integral);
    EXPECT_NEAR(d.dims[1], (1 + std::sqrt(5.0)) / 2, 1e-10);
}

TEST(FpDimensions, EigenEquationHoldsOnFixtures)
{
    for (const auto& name : kRingFixtures) {
        const auto ring = ring_fixture(name);
        const auto d = fp_dimensions(ring);
        const std::size_t n = ring.rank();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0;
                for (std::size_t k = 0; k < n; ++k)
                    s += ring(i, j, k) * d.dims[k];
                EXPECT_NEAR(s, d.dims[i] * d.dims[j], 1e-9 * s) << name;
            }
        for (std::size_t i = 0; i < n; ++i)
            EXPECT_DOUBLE_EQ(d.dims[i], d.dims[ring.dual(i)]);
    }
}

TEST(Invertibles, GroupAndThirtySix)
{
    const auto z3 = invertibles(ring_fixture("z3"));
    EXPECT_EQ(z3.elements, sb({0, 1, 2}));
    EXPECT_EQ(z3.structure, "Z3");
    const auto r36 = invertibles(ring_fixture("prop36_i"));
    EXPECT_EQ(r36.elements, sb({0, 1, 2}));
    EXPECT_EQ(r36.structure, "Z3");
}

TEST(Invertibles, MatchDimensionOne)
{
    for (const auto& name : kRingFixtures) {
        const auto ring = ring_fixture(name);
        const auto d = fp_dimensions(ring);
        const auto inv = invertibles(ring);
        for (std::size_t i = 0; i < ring.rank(); ++i)
            EXPECT_EQ(inv.elements.contains(int(i)), std::abs(d.dims[i] - 1.0) < 1e-9) << name;
    }
}

TEST(GroupName, ElementaryDivisors)
{
    EXPECT_EQ(abelian_group_name(cyclic_product_table({2, 2})), "Z2xZ2");
    EXPECT_EQ(abelian_group_name(cyclic_product_table({4})), "Z4");
    EXPECT_EQ(abelian_group_name(cyclic_product_table({6})), "Z2xZ3");
    EXPECT_EQ(abelian_group_name(cyclic_product_table({2, 4, 3})), "Z2xZ4xZ3");
    EXPECT_EQ(abelian_group_name(cyclic_product_table({1})), "Z1");
}

TEST(Subbases, Adjoint)
{
    EXPECT_EQ(adjoint_subbasis(ring_fixture("z3")), sb({0}));
    EXPECT_EQ(adjoint_subbasis(ring_fixture("prop36_i")), sb({0, 1, 2, 3}));
}

TEST(Subbases, Generated)
{
    const auto ring = ring_fixture("prop36_i");
    EXPECT_EQ(generated_subbasis(ring, std::vector<int>{}), sb({0}));
    EXPECT_EQ(generated_subbasis(ring, std::vector<int>{3}), sb({0, 1, 2, 3}));
    EXPECT_EQ(generated_subbasis(ring, std::vector<int>{4}).size(), 10u);
    EXPECT_THROW(generated_subbasis(ring, std::vector<int>{10}), InputError);
}

TEST(Subbases, OutputsAreClosed)
{
    for (const auto& name : kRingFixtures) {
        const auto ring = ring_fixture(name);
        EXPECT_TRUE(is_closed(ring, adjoint_subbasis(ring)));
        for (std::size_t i = 0; i < ring.rank(); ++i)
            EXPECT_TRUE(is_closed(ring, generated_subbasis(ring, std::vector<int>{int(i)})));
    }
}

TEST(Nilpotency, Cases)
{
    const auto z3 = is_nilpotent(ring_fixture("z3"));
    EXPECT_TRUE(z3.nilpotent);
    EXPECT_EQ(z3.chain.size(), 2u);

    const auto r36 = is_nilpotent(ring_fixture("prop36_i"));
    EXPECT_FALSE(r36.nilpotent);
    EXPECT_EQ(r36.chain.back(), sb({0, 1, 2, 3}));

    EXPECT_TRUE(is_nilpotent(ring_fixture("trivial")).nilpotent);
}

TEST(Nilpotency, ChainStrictlyDecreases)
{
    for (const auto& name : kRingFixtures) {
        const auto chain = is_nilpotent(ring_fixture(name)).chain;
        for (std::size_t t = 1; t < chain.size(); ++t) {
            EXPECT_TRUE(chain[t].subset_of(chain[t - 1]));
            EXPECT_LT(chain[t].size(), chain[t - 1].size());
        }
    }
}

TEST(Canonical, GroupAutomorphism)
{
    const auto z3 = ring_fixture("z3");
    const std::vector<int> swap{0, 2, 1};
    EXPECT_EQ(canonical_form(z3).key, canonical_form(z3.relabeled(swap)).key);
}

TEST(Canonical, ThirtySixRelabelAndDistinct)
{
    const auto r1 = ring_fixture("prop36_i");
    const auto r2 = ring_fixture("prop36_ii");
    const std::vector<int> g_swap{0, 2, 1, 3, 4, 6, 5, 7, 9, 8};
    EXPECT_EQ(canonical_form(r1).key, canonical_form(r1.relabeled(g_swap)).key);
    EXPECT_NE(canonical_form(r1).key, canonical_form(r2).key);
}

TEST(Canonical, DistinguishesGroups)
{
    EXPECT_NE(canonical_form(group_ring(cyclic_product_table({4}))).key,
              canonical_form(group_ring(cyclic_product_table({2, 2}))).key);
}

TEST(Canonical, RankCap)
{
    EXPECT_THROW(canonical_form(group_ring(cyclic_product_table({17}))), CapacityError);
    EXPECT_NO_THROW(canonical_form(group_ring(cyclic_product_table({17})), 17));
}

TEST(Canonical, InvariantUnderRandomRelabelings)
{
    std::mt19937 rng(12345);
    std::vector<FusionRing> rings;
    for (const auto& name : kRingFixtures)
        rings.push_back(ring_fixture(name));
    rings.push_back(group_ring(cyclic_product_table({2, 2, 2})));
    rings.push_back(group_ring(cyclic_product_table({2, 6})));
    for (const auto& ring : rings) {
        const CanonicalForm base = canonical_form(ring);
        EXPECT_EQ(base.ring, ring.relabeled(base.relabeling));
        for (int t = 0; t < 500; ++t) {
            const auto perm = random_relabeling(ring.rank(), rng);
            const CanonicalForm cf = canonical_form(ring.relabeled(perm));
            ASSERT_EQ(cf.key, base.key);
            ASSERT_EQ(cf.ring, base.ring);
        }
    }
}
