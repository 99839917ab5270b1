#pragma once

#include <cstdint>
#include <vector>

#include "egz/budget.hpp"
#include "egz/linalg.hpp"

namespace egz {

// Canonical representative of a finite integer point set modulo the affine
// unimodular group x -> Ux + t (U in GL_d(Z), t integral). Two sets map to
// the same output iff they are equivalent. The output always contains the
// zero vector and is sorted lexicographically.
//
// The representative is computed by minimizing the column-major flattening
// of the Hermite normal form of the difference matrix [v_sigma(1)-v_b, ...,
// v_sigma(s-1)-v_b] over all base vertices b and orderings sigma. Orderings
// are pruned by lexicographic prefix, which is sound because the HNF of a
// column prefix is the corresponding prefix of the full HNF.
std::vector<zvec> unimodular_canonical_form(const std::vector<zvec>& points,
                                            int64_t budget = kDefaultBudget);

struct HollowSearchResult {
  // canonical vertex sets of the equivalence classes found, sorted
  std::vector<std::vector<zvec>> classes;
  // true when the whole box was scanned; false when the budget ran out,
  // in which case classes holds whatever was found before the cutoff
  bool complete = true;
  // search tree nodes expanded (summed over workers)
  int64_t nodes = 0;
};

// Enumerates all hollow polytopes with exactly num_vertices vertices whose
// vertex sets lie in the box [0, box_radius]^d, up to affine unimodular
// equivalence. Subsets are grown in lexicographic point order; a branch is
// cut as soon as the chosen points leave convex position or their hull
// stops being hollow, both of which are inherited by every extension.
// jobs > 1 splits the work by the first chosen point; the result does not
// depend on jobs.
HollowSearchResult search_hollow(int64_t d, int64_t box_radius,
                                 int64_t num_vertices, int64_t jobs = 1,
                                 int64_t budget = kDefaultBudget);

}  // namespace egz
