#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "egz/rational.hpp"

namespace egz {

// Vector over Z_n with entries kept in [0, n).
using fvec = std::vector<int64_t>;

int64_t mod_reduce(int64_t x, int64_t n);
fvec fp_reduce(fvec v, int64_t n);
fvec fp_add(const fvec& a, const fvec& b, int64_t n);
fvec fp_sub(const fvec& a, const fvec& b, int64_t n);
fvec fp_scale(int64_t c, const fvec& v, int64_t n);
int64_t fp_dot(const fvec& a, const fvec& b, int64_t n);

// Representative of x mod n closest to zero, breaking the tie at n/2 for
// even n downward: odd n lands in [-(n-1)/2, (n-1)/2].
int64_t centered_lift(int64_t x, int64_t n);
zvec centered_lift_vec(const fvec& v, int64_t n);

// Mixed-radix index of a reduced vector, least significant coordinate first.
size_t fp_index(const fvec& v, int64_t n);
fvec fp_unindex(size_t idx, int64_t n, size_t d);

bool is_prime(int64_t n);

// Multiset over Z_n^d. Canonical form: entries reduced, duplicate vectors
// merged, multiplicities positive, vectors sorted lexicographically.
struct FpMultiset {
  int64_t n = 0;
  size_t dim = 0;
  std::vector<std::pair<fvec, int64_t>> elements;

  int64_t total() const {
    int64_t s = 0;
    for (const auto& e : elements) s += e.second;
    return s;
  }
  bool operator==(const FpMultiset& o) const {
    return n == o.n && dim == o.dim && elements == o.elements;
  }
};

void normalize(FpMultiset& ms);

}  // namespace egz
