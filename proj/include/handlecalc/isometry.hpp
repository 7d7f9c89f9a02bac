#pragma once

// Bounded search for form-preserving isomorphisms between decorated modules.

#include <cstddef>
#include <optional>
#include <vector>

#include "handlecalc/form_algebra.hpp"

namespace handlecalc {

/// Size guard for exhaustive search.
struct SearchLimits {
    std::size_t max_free_rank = 4;
    std::size_t max_generators = 6;
    /// Backtracking nodes before giving up with CapacityError.
    std::size_t max_nodes = 50'000'000;
};

/// All isomorphisms d1 -> d2 preserving the forms whose matrix entries lie in
/// [-bound, bound]. Rows belonging to torsion generators of d2 range over the
/// residues [0, d) instead. Sorted lexicographically by row-major entries.
///
/// Throws RangeError for bound < 1 and CapacityError beyond the limits.
/// Parallelized over the candidates for the first column.
std::vector<ModuleHom> enumerate_isometries(const DecoratedModule& d1, const DecoratedModule& d2, long bound,
                                            const SearchLimits& limits = {});

/// Serial brute force over every matrix in the box, no pruning. Same result
/// as enumerate_isometries; kept as a test oracle.
std::vector<ModuleHom> enumerate_isometries_reference(const DecoratedModule& d1, const DecoratedModule& d2,
                                                      long bound, std::size_t max_matrices = 5'000'000);

struct EquivalenceResult {
    /// Present iff a verified witness was found within the bound.
    std::optional<ModuleHom> witness;
    /// Table keys of d1 (resp. d2) the witness could not check because the
    /// other table lacks the corresponding class.
    std::vector<IntVector> undecided_domain;
    std::vector<IntVector> undecided_codomain;

    bool equivalent() const { return witness.has_value(); }
};

/// The acceptance rule used by algebraically_equivalent for a single
/// isometry: no key with conflicting values, and every key of at least one
/// of the two tables has its partner in the other.
bool witnesses_equivalence(const ModuleHom& phi);

/// Searches for an isometry d1 -> d2 that matches the G tables: no key with
/// conflicting values, and every key of at least one of the two tables has
/// its partner in the other. Candidates come from both search directions so
/// the verdict does not depend on argument order.
///
/// A negative verdict only means no witness exists within the bound.
EquivalenceResult algebraically_equivalent(const DecoratedModule& d1, const DecoratedModule& d2, long bound,
                                           const SearchLimits& limits = {});

}  // namespace handlecalc
