#include "egz/fp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace egz {

int64_t mod_reduce(int64_t x, int64_t n) {
  int64_t r = x % n;
  return r < 0 ? r + n : r;
}

fvec fp_reduce(fvec v, int64_t n) {
  for (auto& e : v) e = mod_reduce(e, n);
  return v;
}

fvec fp_add(const fvec& a, const fvec& b, int64_t n) {
  fvec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mod_reduce(a[i] + b[i], n);
  return r;
}

fvec fp_sub(const fvec& a, const fvec& b, int64_t n) {
  fvec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mod_reduce(a[i] - b[i], n);
  return r;
}

fvec fp_scale(int64_t c, const fvec& v, int64_t n) {
  fvec r(v.size());
  c = mod_reduce(c, n);
  for (size_t i = 0; i < v.size(); ++i) r[i] = mod_reduce(c * v[i], n);
  return r;
}

int64_t fp_dot(const fvec& a, const fvec& b, int64_t n) {
  int64_t s = 0;
  for (size_t i = 0; i < a.size(); ++i) s = mod_reduce(s + a[i] * b[i], n);
  return s;
}

int64_t centered_lift(int64_t x, int64_t n) {
  int64_t r = mod_reduce(x, n);
  return r <= (n - 1) / 2 ? r : r - n;
}

zvec centered_lift_vec(const fvec& v, int64_t n) {
  zvec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = centered_lift(v[i], n);
  return r;
}

size_t fp_index(const fvec& v, int64_t n) {
  size_t idx = 0;
  for (size_t i = v.size(); i-- > 0;) idx = idx * size_t(n) + size_t(v[i]);
  return idx;
}

fvec fp_unindex(size_t idx, int64_t n, size_t d) {
  fvec v(d);
  for (size_t i = 0; i < d; ++i) {
    v[i] = int64_t(idx % size_t(n));
    idx /= size_t(n);
  }
  return v;
}

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

void normalize(FpMultiset& ms) {
  if (ms.n < 1) throw std::invalid_argument("modulus must be positive");
  std::map<fvec, int64_t> merged;
  for (auto& e : ms.elements) {
    if (e.first.size() != ms.dim)
      throw std::invalid_argument("element dimension mismatch");
    if (e.second < 0) throw std::invalid_argument("negative multiplicity");
    if (e.second == 0) continue;
    merged[fp_reduce(e.first, ms.n)] += e.second;
  }
  ms.elements.assign(merged.begin(), merged.end());
}

}  // namespace egz
