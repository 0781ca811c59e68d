#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fusionkit {

enum class Shape { PQ4, P2Q2 };

struct DimensionProfile {
    long long p = 0;
    long long q = 0;
    Shape shape = Shape::PQ4;

    long long global() const;
    std::string shape_name() const;
};

/// Throws InputError unless p, q are distinct primes. p^2 q^2 profiles are
/// returned with p < q.
DimensionProfile make_profile(long long p, long long q, Shape shape);
Shape parse_shape(const std::string& name);

/// (dimension, multiplicity) pairs with positive multiplicity, dimension ascending.
struct TypeSignature {
    std::vector<std::pair<long long, long long>> entries;

    long long multiplicity(long long d) const;
    long long total() const; ///< sum of m d^2
    std::string str() const; ///< "(1,3; 2,6; 3,1)"
    friend bool operator==(const TypeSignature&, const TypeSignature&) = default;
    friend auto operator<=>(const TypeSignature&, const TypeSignature&) = default;
};

/// Dimensions d with d^2 | n and d^2 < n, plus 1.
std::vector<long long> allowed_dimensions(long long n);

/// Every solution of sum m_d d^2 = n over allowed dimensions with the number
/// of invertibles dividing n. Sorted. CapacityError beyond `cap` solutions.
std::vector<TypeSignature> enumerate_types(long long n, std::size_t cap = 5'000'000);
std::vector<TypeSignature> enumerate_types(const DimensionProfile& profile);

struct Refinement {
    long long components = 0;
    long long component_dim = 0;
    bool contradiction = false;
    std::string witness;
    std::vector<TypeSignature> trivial; ///< globally consistent options for C_e
    std::vector<TypeSignature> other;   ///< globally consistent options for C_g, g != e
};

/// Splits a signature over u components of dimension n / u. With
/// `pt_in_adjoint` every invertible lies in the trivial component.
Refinement graded_refinement(long long n, const TypeSignature& signature, long long u,
                             bool pt_in_adjoint = false);

enum class Verdict { Eliminated, GroupTheoretical, Survives };
std::string verdict_name(Verdict v);

struct CaseVerdict {
    long long pt_dim = 0;
    Verdict verdict = Verdict::Survives;
    std::string rule;      ///< "R0".."R8", empty for survivors
    std::string rule_name; ///< e.g. "trivial-component-arithmetic"
    std::string case_label;
    std::string witness;
    bool cited = false; ///< verdict rests on a cited result, not on arithmetic
    std::string survivor_label;
    std::vector<std::string> corroborating; ///< later rules that also apply
    long long type_solutions = 0;
};

struct CaseReport {
    DimensionProfile profile;
    std::vector<CaseVerdict> cases; ///< one per divisor of the global dimension, ascending
};

CaseReport apply_elimination_rules(const DimensionProfile& profile);

struct Classification {
    CaseReport report;
    std::string overall;
    std::vector<std::string> survivors;
};

Classification classify(const DimensionProfile& profile);

} // namespace fusionkit
