#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <set>

#include "fusionkit/classifier.hpp"
#include "fusionkit/errors.hpp"
#include "helpers.hpp"

using namespace fusionkit;
using namespace testing_helpers;

namespace {

const long long kPrimes[] = {2, 3, 5, 7, 11, 13};

TypeSignature sig(std::vector<std::pair<long long, long long>> e)
{
    return TypeSignature{std::move(e)};
}

const CaseVerdict& case_for(const CaseReport& r, long long a)
{
    for (const auto& c : r.cases)
        if (c.pt_dim == a)
            return c;
    throw std::runtime_error("no case for " + std::to_string(a));
}

std::vector<long long> survivors(const CaseReport& r)
{
    std::vector<long long> out;
    for (const auto& c : r.cases)
        if (c.verdict == Verdict::Survives)
            out.push_back(c.pt_dim);
    return out;
}

} // namespace

TEST(Profile, Validation)
{
    EXPECT_THROW(make_profile(4, 3, Shape::PQ4), InputError);
    EXPECT_THROW(make_profile(3, 3, Shape::P2Q2), InputError);
    EXPECT_THROW(make_profile(1, 3, Shape::P2Q2), InputError);
    EXPECT_THROW(parse_shape("pq3"), InputError);
    const auto pr = make_profile(5, 2, Shape::P2Q2);
    EXPECT_EQ(pr.p, 2);
    EXPECT_EQ(pr.q, 5);
    EXPECT_EQ(make_profile(5, 2, Shape::PQ4).global(), 80);
}

TEST(EnumerateTypes, Pq4At2And3)
{
    const auto types = enumerate_types(make_profile(2, 3, Shape::PQ4));
    std::set<TypeSignature> oracle;
    for (long long c = 0; c * 81 <= 162; ++c)
        for (long long b = 0; 9 * b + 81 * c <= 162; ++b) {
            const long long a = 162 - 9 * b - 81 * c;
            if (a >= 1 && 162 % a == 0) {
                TypeSignature s;
                s.entries.emplace_back(1, a);
                if (b)
                    s.entries.emplace_back(3, b);
                if (c)
                    s.entries.emplace_back(9, c);
                oracle.insert(s);
            }
        }
    EXPECT_EQ(std::set<TypeSignature>(types.begin(), types.end()), oracle);
    for (const auto& t : types)
        EXPECT_EQ(t.multiplicity(1) % 9, 0) << t.str();
}

TEST(EnumerateTypes, Contains36Signature)
{
    const auto types = enumerate_types(make_profile(2, 3, Shape::P2Q2));
    EXPECT_NE(std::find(types.begin(), types.end(), sig({{1, 3}, {2, 6}, {3, 1}})), types.end());
    for (const auto& t : types)
        for (const auto& [d, m] : t.entries)
            EXPECT_NE(d, 6);
}

TEST(EnumerateTypes, UnitDimension)
{
    const auto types = enumerate_types(1);
    ASSERT_EQ(types.size(), 1u);
    EXPECT_EQ(types[0], sig({{1, 1}}));
}

TEST(EnumerateTypes, OdometerOracleSmallN)
{
    for (long long n = 1; n <= 150; ++n) {
        const auto types = enumerate_types(n);
        EXPECT_EQ(std::set<TypeSignature>(types.begin(), types.end()), odometer(n)) << "N = " << n;
    }
}

TEST(EnumerateTypes, CountingOracleUpTo1000)
{
    for (long long n = 1; n <= 1000; ++n) {
        const auto types = enumerate_types(n);
        ASSERT_EQ(static_cast<long long>(types.size()), count_solutions(n)) << "N = " << n;
        ASSERT_TRUE(std::adjacent_find(types.begin(), types.end()) == types.end()) << "N = " << n;
        for (const auto& t : types) {
            ASSERT_EQ(t.total(), n);
            const long long a = t.multiplicity(1);
            ASSERT_TRUE(a >= 1 && n % a == 0);
            for (const auto& [d, m] : t.entries) {
                ASSERT_GT(m, 0);
                ASSERT_EQ(n % (d * d), 0);
                ASSERT_TRUE(d == 1 || d * d < n);
            }
        }
    }
}

TEST(EnumerateTypes, Cap)
{
    EXPECT_THROW(enumerate_types(900, 1000), CapacityError);
}

TEST(GradedRefinement, Dimension36)
{
    const auto r = graded_refinement(36, sig({{1, 3}, {2, 6}, {3, 1}}), 3);
    EXPECT_FALSE(r.contradiction);
    EXPECT_EQ(r.component_dim, 12);
    ASSERT_EQ(r.trivial.size(), 1u);
    EXPECT_EQ(r.trivial[0], sig({{1, 3}, {3, 1}}));
    ASSERT_EQ(r.other.size(), 1u);
    EXPECT_EQ(r.other[0], sig({{2, 3}}));
}

TEST(GradedRefinement, Pq4CubeCandidateContradicts)
{
    for (long long p : kPrimes)
        for (long long q : kPrimes) {
            if (p == q || p * q * q * q * q > 200000)
                continue;
            const long long n = p * q * q * q * q, u = q * q * q;
            int checked = 0;
            for (const auto& t : enumerate_types(n)) {
                if (t.multiplicity(1) != u)
                    continue;
                const auto r = graded_refinement(n, t, u);
                EXPECT_TRUE(r.contradiction) << p << "," << q << " " << t.str();
                EXPECT_FALSE(r.witness.empty());
                ++checked;
            }
            EXPECT_GT(checked, 0) << p << "," << q;
        }
    const auto r = graded_refinement(162, sig({{1, 27}, {3, 15}}), 27);
    EXPECT_NE(r.witness.find("162 > 27"), std::string::npos) << r.witness;
}

TEST(GradedRefinement, IdentityForOneComponent)
{
    for (const auto& t : enumerate_types(36)) {
        if (t.multiplicity(1) != 1)
            continue;
        const auto r = graded_refinement(36, t, 1);
        EXPECT_FALSE(r.contradiction);
        ASSERT_EQ(r.trivial.size(), 1u);
        EXPECT_EQ(r.trivial[0], t);
        EXPECT_TRUE(r.other.empty());
    }
}

TEST(GradedRefinement, PointedInAdjoint)
{
    // 162 with nine invertibles inside C_e: components of dimension 18
    const auto r = graded_refinement(162, sig({{1, 9}, {3, 17}}), 9, true);
    EXPECT_FALSE(r.contradiction);
    ASSERT_EQ(r.trivial.size(), 1u);
    EXPECT_EQ(r.trivial[0], sig({{1, 9}, {3, 1}}));
    ASSERT_EQ(r.other.size(), 1u);
    EXPECT_EQ(r.other[0], sig({{3, 2}}));
    const auto bad = graded_refinement(162, sig({{1, 9}, {3, 8}, {9, 1}}), 9, true);
    EXPECT_TRUE(bad.contradiction);
    EXPECT_FALSE(bad.witness.empty());
    EXPECT_THROW(graded_refinement(36, sig({{1, 2}, {2, 1}}), 3), InputError);
    EXPECT_THROW(graded_refinement(36, sig({{1, 4}, {2, 8}}), 5), InputError);
}

TEST(Rules, Pq4ThreeTwo)
{
    const auto report = apply_elimination_rules(make_profile(3, 2, Shape::PQ4));
    for (const auto& c : report.cases)
        EXPECT_NE(c.verdict, Verdict::Survives) << c.pt_dim;
    EXPECT_EQ(case_for(report, 8).rule, "R3");
    EXPECT_EQ(case_for(report, 8).case_label, "case (i)");
    EXPECT_EQ(case_for(report, 4).rule, "R8");
    EXPECT_TRUE(case_for(report, 4).cited);
    EXPECT_EQ(classify(make_profile(3, 2, Shape::PQ4)).overall, "group-theoretical");
}

TEST(Rules, Pq4CasesAcrossPrimes)
{
    for (long long p : kPrimes)
        for (long long q : kPrimes) {
            if (p == q)
                continue;
            const auto report = apply_elimination_rules(make_profile(p, q, Shape::PQ4));
            const long long q2 = q * q;
            EXPECT_EQ(case_for(report, 1).rule, "R1");
            EXPECT_EQ(case_for(report, q2 * q).rule, "R3") << p << "," << q;
            EXPECT_EQ(case_for(report, q2).rule, "R8");
            for (long long a : {q2 * q2, p * q2, p * q2 * q, p * q2 * q2})
                EXPECT_EQ(case_for(report, a).rule, "R2") << p << "," << q << " a=" << a;
            // the remark eliminations back up two of the nilpotent cases
            const auto& q4 = case_for(report, q2 * q2).corroborating;
            EXPECT_NE(std::find(q4.begin(), q4.end(), "R4"), q4.end());
            const auto& pq3 = case_for(report, p * q2 * q).corroborating;
            EXPECT_NE(std::find(pq3.begin(), pq3.end(), "R5"), pq3.end());
            for (const auto& c : report.cases)
                if (c.pt_dim % q2 != 0 && c.pt_dim != 1)
                    EXPECT_EQ(c.rule, "R0") << c.pt_dim;
        }
}

TEST(Rules, P2q2TwoThree)
{
    const auto report = apply_elimination_rules(make_profile(2, 3, Shape::P2Q2));
    EXPECT_EQ(survivors(report), (std::vector<long long>{2, 3}));
    EXPECT_EQ(case_for(report, 2).survivor_label, "E(zeta,+-)");
    EXPECT_EQ(case_for(report, 3).survivor_label, "dimension-36 family");
    EXPECT_EQ(case_for(report, 3).case_label, "case (vii)");
    EXPECT_EQ(case_for(report, 6).rule, "R3");
    EXPECT_EQ(case_for(report, 6).case_label, "case (vi)");
    EXPECT_EQ(case_for(report, 4).rule, "R2");
    EXPECT_EQ(case_for(report, 9).rule, "R2");
    EXPECT_EQ(case_for(report, 1).rule, "R1");
}

TEST(Rules, P2q2ThreeFive)
{
    const auto report = apply_elimination_rules(make_profile(3, 5, Shape::P2Q2));
    EXPECT_TRUE(survivors(report).empty());
    EXPECT_EQ(case_for(report, 3).rule, "R7");
    EXPECT_NE(case_for(report, 3).witness.find("4/3"), std::string::npos);
    EXPECT_EQ(case_for(report, 5).rule, "R6");
    EXPECT_NE(case_for(report, 5).witness.find("c_e*5 = 8"), std::string::npos)
        << case_for(report, 5).witness;
    EXPECT_EQ(classify(make_profile(3, 5, Shape::P2Q2)).overall, "group-theoretical");
}

TEST(Classify, Examples)
{
    const auto c25 = classify(make_profile(2, 5, Shape::P2Q2));
    ASSERT_EQ(c25.survivors.size(), 1u);
    EXPECT_NE(c25.survivors[0].find("E(zeta,+-)"), std::string::npos);
    EXPECT_EQ(classify(make_profile(5, 2, Shape::PQ4)).overall, "group-theoretical");
    const auto c23 = classify(make_profile(2, 3, Shape::P2Q2));
    EXPECT_EQ(c23.survivors.size(), 2u);
    EXPECT_NE(c23.overall.find("dimension-36 family"), std::string::npos);
}

TEST(Classify, GridTrichotomy)
{
    const auto start = std::chrono::steady_clock::now();
    for (long long p : kPrimes)
        for (long long q : kPrimes) {
            if (p == q)
                continue;
            for (Shape shape : {Shape::PQ4, Shape::P2Q2}) {
                const auto pr = make_profile(p, q, shape);
                const auto cls = classify(pr);
                std::vector<long long> expected;
                if (shape == Shape::P2Q2 && pr.p == 2)
                    expected.push_back(2);
                if (shape == Shape::P2Q2 && pr.p == 2 && pr.q == 3)
                    expected.push_back(3);
                EXPECT_EQ(survivors(cls.report), expected) << p << "," << q << " " << pr.shape_name();
                std::set<long long> seen;
                long long divisors = 0;
                for (long long d = 1; d <= pr.global(); ++d)
                    divisors += pr.global() % d == 0;
                for (const auto& c : cls.report.cases) {
                    EXPECT_TRUE(seen.insert(c.pt_dim).second);
                    EXPECT_FALSE(c.witness.empty());
                    if (c.verdict != Verdict::Survives)
                        EXPECT_FALSE(c.rule.empty());
                    else
                        EXPECT_NE(c.survivor_label, "unresolved");
                }
                EXPECT_EQ(static_cast<long long>(seen.size()), divisors);
                if (shape == Shape::PQ4)
                    EXPECT_EQ(cls.overall, "group-theoretical");
            }
        }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_LT(secs, 1.0);
}
