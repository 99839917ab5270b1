#pragma once

#include <optional>
#include <vector>

#include "egz/linalg.hpp"
#include "egz/rational.hpp"

namespace egz {

// Affine lattice over Q^d: origin + all integer combinations of the basis
// directions. Rank may be anything from 0 (a single point) to d. The stored
// form is canonical, so two lattices are equal iff their fields are equal:
//  - basis rows form a triangular system with positive leading entries,
//    pivot columns strictly increasing, and entries above each pivot reduced
//    into [0, pivot) after clearing denominators;
//  - origin is reduced modulo the basis so each pivot coordinate lies in
//    [0, pivot).
struct AffineLattice {
  size_t ambient_dim = 0;
  qvec origin;               // size ambient_dim
  std::vector<qvec> basis;   // each size ambient_dim; may be empty

  size_t rank() const { return basis.size(); }
  bool operator==(const AffineLattice& o) const {
    return ambient_dim == o.ambient_dim && origin == o.origin && basis == o.basis;
  }
  bool operator!=(const AffineLattice& o) const { return !(*this == o); }
};

// Canonicalize in place: HNF-reduce the basis (dropping dependent
// directions) and reduce the origin modulo the resulting basis.
void canonicalize(AffineLattice& lat);

// Smallest affine lattice containing all given points, i.e. all integer
// affine combinations of them. Requires at least one point.
AffineLattice minimal_affine_lattice(const std::vector<qvec>& points);

bool lattice_member(const AffineLattice& lat, const qvec& x);

// Integer coefficients a_i with sum a_i = 1 and sum a_i q_i = target, if any
// exist. The returned vector is the canonical representative: the unique
// solution reduced modulo the solution lattice of the homogeneous system.
std::optional<zvec> integer_affine_solve(const std::vector<qvec>& points,
                                         const qvec& target);

}  // namespace egz
