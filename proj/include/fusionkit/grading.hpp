#pragma once

#include <optional>
#include <vector>

#include "fusionkit/check.hpp"
#include "fusionkit/fusion_ring.hpp"

namespace fusionkit {

/// Faithful grading of a fusion ring by a finite abelian group.
///
/// Component ids are numbered by first appearance: the component of the
/// smallest basis index gets the next free id, so the trivial component is 0.
struct Grading {
    std::vector<std::vector<int>> group; ///< group[a][b] = a * b on component ids
    std::vector<int> assignment;         ///< basis index -> component id
    int trivial = 0;
    std::string structure;

    std::size_t order() const { return group.size(); }
    int inverse(int a) const;
    std::vector<int> component(int id) const;
    /// |U| == number of invertibles; filled only for modular candidates.
    std::optional<bool> matches_invertibles;
};

/// Map G x G -> invertible basis index, G the component group of a grading.
struct PointedCochain {
    std::size_t group_order = 0;
    std::vector<int> values; ///< values[a * order + b]
    bool symmetric_asserted = false;

    int operator()(int a, int b) const { return values[std::size_t(a) * group_order + b]; }
};

Grading universal_grading(const FusionRing& ring, bool modular_candidate = false);

/// FPdim of each component, in component-id order.
std::vector<double> component_dimensions(const FusionRing& ring, const Grading& grading);

/// Checks the cochain values are invertible, normalized, satisfy the 2-cocycle
/// identity, and (if asserted) are symmetric.
ValidationReport validate_cochain(const FusionRing& ring, const Grading& grading,
                                  const PointedCochain& chi);
ValidationReport validate_cochain(const FusionRing& ring, const PointedCochain& chi);

/// Ring with product a x' b = chi(|a|, |b|) * (a * b), duals recomputed.
FusionRing graded_twist(const FusionRing& ring, const PointedCochain& chi);

/// Pointwise inverse cochain chi^{-1}(a, b) = dual(chi(a, b)).
PointedCochain inverse_cochain(const FusionRing& ring, const PointedCochain& chi);

} // namespace fusionkit
