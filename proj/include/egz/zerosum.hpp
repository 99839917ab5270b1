#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "egz/budget.hpp"
#include "egz/fp.hpp"
#include "egz/polytope.hpp"

namespace egz {

// n chosen entries (with repetition bounded by multiplicity) summing to zero.
struct ZeroSumCertificate {
  std::vector<std::pair<fvec, int64_t>> chosen;  // vector, count >= 1
  int64_t n = 0;

  int64_t total() const {
    int64_t s = 0;
    for (const auto& c : chosen) s += c.second;
    return s;
  }
};

// Weights alpha with sum p, sum alpha_i v_i = 0, and every alpha_i < p.
struct WeakEgzViolation {
  std::vector<std::pair<fvec, int64_t>> alphas;  // parallel to the input list
};

struct EgzResult {
  int64_t s = 0;
  FpMultiset extremal;  // witness of size s - 1 with no n-term zero sum
};

struct WeakEgzResult {
  int64_t w = 0;
  std::vector<fvec> maximal_set;
};

// Least certificate under the ordering: support vector list first (sequence
// lexicographic, so a proper prefix precedes its extensions), then the count
// list. Absent exactly when no n-element zero-sum sub-multiset exists.
std::optional<ZeroSumCertificate> find_zero_sum(const FpMultiset& x, int64_t n,
                                                int64_t budget = kDefaultBudget);

bool verify_zero_sum(const FpMultiset& x, int64_t n, const ZeroSumCertificate& c);

// Absent iff the distinct vectors form a weak zero-sum-free set: the only
// weights with sum p and zero weighted sum put all mass on one vector.
// The returned violation maximizes alpha_1, then alpha_2, and so on.
std::optional<WeakEgzViolation> weak_egz_check(const std::vector<fvec>& vectors,
                                               int64_t p,
                                               int64_t budget = kDefaultBudget);

// Smallest s so that every multiset of that size has an n-term zero sum,
// with the lexicographically least extremal witness of size s - 1.
EgzResult egz_constant(int64_t n, int64_t d, int64_t budget = kDefaultBudget);

// Largest size of a weak zero-sum-free set of distinct vectors in F_p^d,
// with the lexicographically least witness. The search extends one element
// past the binomial bound (2d-1 choose d) + 1 so a bound violation would be
// reported rather than silently cut off.
WeakEgzResult weak_egz_constant(int64_t p, int64_t d,
                                int64_t budget = kDefaultBudget);

// Vertices of a hollow polytope rewritten in coordinates of its vertex
// lattice and reduced mod p, parallel to the vertex list, together with the
// weak zero-sum verdict at this p.
struct HollowReduction {
  int64_t p = 0;
  std::vector<fvec> vectors;
  std::optional<WeakEgzViolation> violation;  // absent iff the check passes
};

// Rescales P so the minimal affine lattice of its vertices becomes the
// standard integer lattice (coordinates in the lattice's canonical basis, so
// the output dimension is dim(P)), reduces the vertices mod p, and runs
// weak_egz_check on the result. Two vertices can collide mod p when p is
// small relative to P; a collision already defeats the property, and the
// reported violation is then the (p-1, 1) split on the first such pair.
// Throws std::invalid_argument when P is not hollow or p is not prime.
HollowReduction hollow_to_weak_egz(const PolytopeQ& P, int64_t p,
                                   int64_t budget = kDefaultBudget);

int64_t binomial(int64_t n, int64_t k);

}  // namespace egz
