#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fusionkit/check.hpp"

namespace fusionkit {

/// Largest rank the dense structure tensor accepts.
inline constexpr std::size_t kMaxDenseRank = 64;

/// A based ring with nonnegative integer structure constants.
///
/// N(i, j, k) is the multiplicity of basis element k in i * j. Index 0 is the
/// unit. Construction only checks the shape of the data (square tensor,
/// nonnegative entries, dual a permutation); the ring axioms are checked by
/// validate_fusion_ring so that broken rings can still be represented and
/// reported on.
class FusionRing {
public:
    FusionRing() = default;
    FusionRing(std::vector<std::string> labels, std::vector<int> dual, std::vector<int> tensor);

    /// Builds from a sparse list of (i, j, k, value); omitted cells are zero.
    static FusionRing from_triples(std::vector<std::string> labels, std::vector<int> dual,
                                   std::span<const std::array<int, 4>> triples);

    std::size_t rank() const { return labels_.size(); }
    int operator()(std::size_t i, std::size_t j, std::size_t k) const
    {
        return n_[(i * rank() + j) * rank() + k];
    }
    int dual(std::size_t i) const { return dual_[i]; }
    const std::vector<int>& duals() const { return dual_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<int>& tensor() const { return n_; }

    /// Nonzero cells as (i, j, k, value), lexicographic.
    std::vector<std::array<int, 4>> triples() const;

    /// Ring with element `old` renamed to `perm[old]`. perm must fix 0.
    FusionRing relabeled(std::span<const int> perm) const;

    /// Index of the basis element with the given label, or -1.
    int find(const std::string& label) const;

    friend bool operator==(const FusionRing& a, const FusionRing& b)
    {
        return a.dual_ == b.dual_ && a.n_ == b.n_;
    }

private:
    std::vector<std::string> labels_;
    std::vector<int> dual_;
    std::vector<int> n_;
};

/// Sorted set of basis indices.
struct SubBasis {
    std::vector<int> members;

    bool contains(int i) const;
    std::size_t size() const { return members.size(); }
    bool subset_of(const SubBasis& other) const;
    friend bool operator==(const SubBasis&, const SubBasis&) = default;
    friend auto operator<=>(const SubBasis&, const SubBasis&) = default;
};

struct DimensionVector {
    std::vector<double> dims;
    double global = 0.0;
    bool integral = false;
    std::vector<long long> integer_dims; ///< filled when integral
    long long integer_global = 0;        ///< filled when integral
    int iterations = 0;
};

struct InvertibleGroup {
    SubBasis elements;
    /// table[a][b] = ring index of elements[a] * elements[b]
    std::vector<std::vector<int>> table;
    bool abelian = true;
    std::string structure; ///< e.g. "Z3", "Z2xZ2"
};

struct CanonicalForm {
    std::vector<int> relabeling; ///< relabeling[old] = new
    std::string key;
    FusionRing ring; ///< the input relabeled into canonical order
};

struct FpOptions {
    double tolerance = 1e-12;
    int max_iterations = 100000;
};

ValidationReport validate_fusion_ring(const FusionRing& ring);

DimensionVector fp_dimensions(const FusionRing& ring, const FpOptions& options = {});

InvertibleGroup invertibles(const FusionRing& ring);

/// Smallest sub-basis containing `seeds`, closed under duals and fusion.
SubBasis generated_subbasis(const FusionRing& ring, std::span<const int> seeds);

/// Closure of all constituents of x * dual(x); restricted to x in `within`
/// when given (the adjoint of a fusion subring).
SubBasis adjoint_subbasis(const FusionRing& ring);
SubBasis adjoint_subbasis(const FusionRing& ring, const SubBasis& within);

bool is_closed(const FusionRing& ring, const SubBasis& sub);

struct NilpotencyResult {
    bool nilpotent = false;
    std::vector<SubBasis> chain; ///< starts with the full basis
};

NilpotencyResult is_nilpotent(const FusionRing& ring);

/// Sum of squared dimensions over a sub-basis.
double subbasis_dimension(const DimensionVector& dims, const SubBasis& sub);

CanonicalForm canonical_form(const FusionRing& ring, std::size_t rank_cap = 16);

/// Name of a finite abelian group given by its multiplication table, as a
/// product of cyclic factors of prime-power order ("Z1" for the trivial group).
std::string abelian_group_name(const std::vector<std::vector<int>>& table);

} // namespace fusionkit
