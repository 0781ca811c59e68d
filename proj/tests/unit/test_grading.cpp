#include <gtest/gtest.h>

#include "fusionkit/errors.hpp"
#include "fusionkit/grading.hpp"
#include "helpers.hpp"

using namespace fusionkit;
using namespace testing_helpers;

namespace {

PointedCochain unit_cochain(std::size_t order)
{
    PointedCochain chi;
    chi.group_order = order;
    chi.values.assign(order * order, 0);
    return chi;
}

void expect_faithful(const FusionRing& ring, const Grading& g)
{
    for (std::size_t c = 0; c < g.order(); ++c)
        EXPECT_FALSE(g.component(int(c)).empty());
    const std::size_t n = ring.rank();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (ring(i, j, k) > 0)
                    EXPECT_EQ(g.assignment[k], g.group[g.assignment[i]][g.assignment[j]]);
    EXPECT_EQ(g.component(g.trivial), adjoint_subbasis(ring).members);
}

} // namespace

TEST(UniversalGrading, PointedZ3)
{
    const auto ring = ring_fixture("z3");
    const auto g = universal_grading(ring);
    EXPECT_EQ(g.order(), 3u);
    EXPECT_EQ(g.structure, "Z3");
    EXPECT_EQ(g.assignment, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(component_dimensions(ring, g), (std::vector<double>{1, 1, 1}));
}

TEST(UniversalGrading, ThirtySix)
{
    const auto ring = ring_fixture("prop36_i");
    const auto g = universal_grading(ring, true);
    EXPECT_EQ(g.structure, "Z3");
    EXPECT_EQ(g.component(0), (std::vector<int>{0, 1, 2, 3}));
    EXPECT_EQ(g.component(1), (std::vector<int>{4, 5, 6}));
    EXPECT_EQ(g.component(2), (std::vector<int>{7, 8, 9}));
    ASSERT_TRUE(g.matches_invertibles.has_value());
    EXPECT_TRUE(*g.matches_invertibles);
    const auto dims = component_dimensions(ring, g);
    ASSERT_EQ(dims.size(), 3u);
    for (double d : dims)
        EXPECT_NEAR(d, 12.0, 1e-9);
}

TEST(UniversalGrading, FaithfulOnPointedRings)
{
    for (const auto& orders : std::vector<std::vector<int>>{{1}, {2}, {5}, {2, 2}, {2, 3}, {3, 3}, {2, 2, 2}, {4, 2}}) {
        const auto ring = group_ring(cyclic_product_table(orders));
        const auto g = universal_grading(ring);
        EXPECT_EQ(g.order(), ring.rank());
        expect_faithful(ring, g);
    }
    for (const char* name : {"prop36_i", "prop36_ii", "trivial"}) {
        const auto ring = ring_fixture(name);
        expect_faithful(ring, universal_grading(ring));
    }
}

TEST(UniversalGrading, NonabelianRejected)
{
    // group ring of S3: the universal grading group is S3 itself
    const std::vector<std::vector<int>> s3{{0, 1, 2, 3, 4, 5}, {1, 2, 0, 4, 5, 3},
                                           {2, 0, 1, 5, 3, 4}, {3, 5, 4, 0, 2, 1},
                                           {4, 3, 5, 1, 0, 2}, {5, 4, 3, 2, 1, 0}};
    EXPECT_THROW(universal_grading(group_ring(s3)), CapacityError);
}

TEST(Cochain, UnitAndPaperCocycleValid)
{
    const auto ring = ring_fixture("prop36_i");
    EXPECT_TRUE(validate_cochain(ring, unit_cochain(3)).valid());
    const auto chi = load_cochain(fixture("cochains/sl3_chi.json"));
    const auto rep = validate_cochain(ring, chi);
    EXPECT_TRUE(rep.valid());
    EXPECT_NE(rep.find("symmetric"), nullptr);
}

TEST(Cochain, BrokenCocycleReportsTuple)
{
    const auto ring = ring_fixture("prop36_i");
    auto chi = unit_cochain(3);
    chi.values[1 * 3 + 1] = 1;
    const auto rep = validate_cochain(ring, chi);
    EXPECT_TRUE(rep.find("normalized")->passed);
    const Check* c = rep.find("cocycle");
    EXPECT_FALSE(c->passed);
    // (1,1,1) balances; the first failing triple in lexicographic order is (1,1,2)
    EXPECT_EQ(c->witness, (std::vector<int>{1, 1, 2}));
}

TEST(Cochain, NonInvertibleValueIsInputError)
{
    const auto ring = ring_fixture("prop36_i");
    auto chi = unit_cochain(3);
    chi.values[4] = 3;
    EXPECT_THROW(validate_cochain(ring, chi), InputError);
    EXPECT_THROW(validate_cochain(ring, unit_cochain(2)), InputError);
}

TEST(Cochain, NormalizationAndSymmetry)
{
    const auto ring = ring_fixture("prop36_i");
    auto chi = unit_cochain(3);
    chi.values[1] = 1;
    EXPECT_FALSE(validate_cochain(ring, chi).find("normalized")->passed);
    auto asym = unit_cochain(3);
    asym.values = {0, 0, 0, 0, 2, 2, 0, 0, 0};
    asym.symmetric_asserted = true;
    EXPECT_FALSE(validate_cochain(ring, asym).find("symmetric")->passed);
}

TEST(GradedTwist, UnitCochainIsIdentity)
{
    const auto ring = ring_fixture("prop36_i");
    EXPECT_EQ(graded_twist(ring, unit_cochain(3)), ring);
}

TEST(GradedTwist, PaperCocycleGivesSecondRules)
{
    const auto r1 = ring_fixture("prop36_i");
    const auto r2 = ring_fixture("prop36_ii");
    const auto chi = load_cochain(fixture("cochains/sl3_chi.json"));
    const auto tw = graded_twist(r1, chi);
    EXPECT_EQ(canonical_form(tw).key, canonical_form(r2).key);
    EXPECT_NE(canonical_form(tw).key, canonical_form(r1).key);

    // new dual of X is g times the old dual of X
    const int X = r1.find("X"), g = r1.find("g");
    int g_xbar = -1;
    for (std::size_t k = 0; k < r1.rank(); ++k)
        if (r1(g, r1.dual(X), k) == 1)
            g_xbar = int(k);
    EXPECT_EQ(tw.dual(X), g_xbar);
    EXPECT_EQ(tw.label(tw.dual(X)), "gXs");
}

TEST(GradedTwist, PreservesInvariantsAndInverts)
{
    const auto r1 = ring_fixture("prop36_i");
    const auto chi = load_cochain(fixture("cochains/sl3_chi.json"));
    const auto tw = graded_twist(r1, chi);
    EXPECT_EQ(tw.rank(), r1.rank());
    EXPECT_EQ(fp_dimensions(tw).integer_dims, fp_dimensions(r1).integer_dims);
    const auto g0 = universal_grading(r1), g1 = universal_grading(tw);
    EXPECT_EQ(g0.assignment, g1.assignment);
    EXPECT_EQ(g0.structure, g1.structure);
    EXPECT_EQ(component_dimensions(r1, g0), component_dimensions(tw, g1));

    const auto back = graded_twist(tw, inverse_cochain(tw, chi));
    EXPECT_EQ(canonical_form(back).key, canonical_form(r1).key);
}

TEST(GradedTwist, InvalidCochainRejected)
{
    const auto ring = ring_fixture("prop36_i");
    auto chi = unit_cochain(3);
    chi.values[1 * 3 + 1] = 1;
    EXPECT_THROW(graded_twist(ring, chi), InconsistencyError);
}
