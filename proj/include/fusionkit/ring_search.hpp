#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fusionkit/fusion_ring.hpp"

namespace fusionkit {

/// Left action of an invertible basis element: generator * a = permutation[a].
struct PointedAction {
    int generator = 0;
    std::vector<int> permutation;
};

/// A partially specified fusion ring.
///
/// Cells not listed in `fixed` are unknowns. When `free` is non-empty, only
/// unknowns that share a symmetry orbit with a listed free cell may be
/// nonzero. Per-cell upper bounds default to floor(d_i d_j / d_k).
struct SearchSpec {
    std::vector<std::string> labels;
    std::vector<int> dual; ///< -1 marks an unknown dual
    std::vector<long long> dims;
    std::vector<int> grading; ///< component id per basis element; empty for none
    std::vector<std::vector<int>> grading_table; ///< empty means cyclic on ids
    std::vector<PointedAction> pointed_action;
    bool commutative = false;
    std::vector<std::array<int, 4>> fixed;
    std::optional<std::vector<std::array<int, 3>>> free;
    std::vector<std::array<int, 4>> bounds; ///< (i, j, k, max)
    std::optional<int> global_bound;
    /// Generators of the label-change group, perm[old] = new. Absent means
    /// classes are full isomorphism classes.
    std::optional<std::vector<std::vector<int>>> relabel_group;

    std::size_t rank() const { return labels.size(); }
};

struct SearchOptions {
    std::uint64_t node_cap = 10'000'000;
    unsigned workers = 1;
    bool use_pointed_action = true; ///< false drops the action constraints (diagnostic)
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
    std::uint64_t contradictions = 0;   ///< branches cut by propagation
    std::uint64_t rejected_leaves = 0;  ///< complete assignments failing validation
    std::size_t forced_cells = 0;
    std::size_t free_orbits = 0;
    std::size_t dual_choices = 1;
};

struct SearchResult {
    std::vector<FusionRing> rings;  ///< one per class, ordered by canonical key
    std::vector<std::string> keys;  ///< canonical keys aligned with rings
    std::vector<FusionRing> raw;    ///< every completion, ordered by (dual, tensor)
    SearchStats stats;
};

struct ForcedEntries {
    SearchSpec spec;                       ///< with every forced cell added to `fixed`
    std::size_t forced_cells = 0;          ///< cells fixed beyond the input
    std::vector<std::array<int, 3>> open;  ///< cells still undetermined
};

/// Shape and consistency checks; throws InputError naming the clash.
void validate_spec(const SearchSpec& spec);

/// Propagation only. Throws InconsistencyError on a contradiction and
/// InputError when the dual is not fully specified.
ForcedEntries derive_forced_entries(const SearchSpec& spec, const SearchOptions& options = {});

/// Every completion satisfying the ring axioms and the spec constraints, one
/// per class of the relabel group.
SearchResult complete_fusion_rings(const SearchSpec& spec, const SearchOptions& options = {});

} // namespace fusionkit
