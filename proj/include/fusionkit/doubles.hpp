#pragma once

#include <complex>
#include <string>
#include <vector>

#include "fusionkit/fusion_ring.hpp"
#include "fusionkit/modular_data.hpp"

namespace fusionkit {

/// Finite group by multiplication table; the identity is index 0.
class FiniteGroup {
public:
    FiniteGroup() = default;
    /// Validates the table (Latin square, associativity, identity, inverses).
    /// A table whose identity is not at index 0 is relabeled by swapping.
    explicit FiniteGroup(std::vector<std::vector<int>> table);

    /// Closure of permutations of {0..m-1} under composition,
    /// (a b)(x) = a(b(x)); identity first, then breadth-first order.
    static FiniteGroup from_permutations(const std::vector<std::vector<int>>& generators);

    std::size_t order() const { return table_.size(); }
    int mul(int a, int b) const { return table_[a][b]; }
    int inv(int a) const { return inverse_[a]; }
    int element_order(int a) const;
    int exponent() const;
    const std::vector<std::vector<int>>& table() const { return table_; }

    /// Subgroup on the listed elements (must contain 0 first and be closed),
    /// re-indexed by position in `elements`.
    FiniteGroup subgroup(const std::vector<int>& elements) const;

private:
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
};

struct GroupAnalysis {
    std::vector<std::vector<int>> classes; ///< sorted members; ordered by representative
    std::vector<int> representatives;      ///< smallest member of each class
    std::vector<int> class_of;             ///< element -> class index
    std::vector<std::vector<int>> centralizers; ///< centralizer of each representative
};

GroupAnalysis group_analysis(const FiniteGroup& g);

struct CharacterTable {
    GroupAnalysis analysis;
    /// chars[x][k] = value of character x on class k; degrees ascending
    std::vector<std::vector<std::complex<double>>> chars;
    int splitting_prime = 0;

    int degree(std::size_t x) const { return int(std::lround(chars[x][0].real())); }
};

/// Irreducible characters by class-matrix eigenvectors over a prime field,
/// lifted to complex values through eigenvalue multiplicities.
CharacterTable character_table(const FiniteGroup& h, std::size_t order_cap = 64);

struct DoubleLabel {
    int conjugacy_class = 0;
    int representative = 0;
    int character = 0; ///< row of the centralizer's character table
    int dimension = 0;
};

struct DoubleData {
    std::vector<DoubleLabel> labels;
    ModularData md;
    FusionRing ring; ///< Verlinde ring of md
};

/// Modular data of the untwisted Drinfeld double, simples ordered by
/// (dimension, class, character).
DoubleData double_modular_data(const FiniteGroup& g, std::size_t order_cap = 24);

} // namespace fusionkit
