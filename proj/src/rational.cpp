#include "egz/rational.hpp"

#include <stdexcept>

namespace egz {

bigint floor_div(const bigint& a, const bigint& b) {
  bigint q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

bigint ceil_div(const bigint& a, const bigint& b) { return -floor_div(-a, b); }

bigint rat_floor(const rat& r) { return floor_div(num(r), den(r)); }
bigint rat_ceil(const rat& r) { return ceil_div(num(r), den(r)); }

bigint gcd(bigint a, bigint b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    bigint t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bigint lcm(const bigint& a, const bigint& b) {
  if (a == 0 || b == 0) return 0;
  bigint g = gcd(a, b);
  bigint l = (a / g) * b;
  return l < 0 ? -l : l;
}

bigint gcdx(const bigint& a, const bigint& b, bigint& x, bigint& y) {
  // iterative extended euclid; returns g >= 0 with g = x*a + y*b
  bigint old_r = a, r = b;
  bigint old_s = 1, s = 0;
  bigint old_t = 0, t = 1;
  while (r != 0) {
    bigint q = old_r / r;  // truncated division keeps the identity
    bigint tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

bigint common_denominator(const qvec& v) {
  bigint l = 1;
  for (const rat& r : v) l = lcm(l, den(r));
  return l;
}

bigint common_denominator(const std::vector<qvec>& m) {
  bigint l = 1;
  for (const qvec& v : m) l = lcm(l, common_denominator(v));
  return l;
}

std::string rat_to_string(const rat& r) {
  std::string s = num(r).str();
  if (den(r) != 1) s += "/" + den(r).str();
  return s;
}

std::optional<rat> parse_rat(const std::string& s) {
  auto pos = s.find('/');
  try {
    if (pos == std::string::npos) {
      if (s.empty()) return std::nullopt;
      return rat(bigint(s));
    }
    bigint n(s.substr(0, pos));
    bigint d(s.substr(pos + 1));
    if (d == 0) return std::nullopt;
    return rat(n, d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

rat dot(const qvec& a, const qvec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

qvec vsub(const qvec& a, const qvec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vsub: size mismatch");
  qvec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

qvec vadd(const qvec& a, const qvec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vadd: size mismatch");
  qvec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

qvec vscale(const rat& c, const qvec& a) {
  qvec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

bool is_zero(const qvec& a) {
  for (const rat& x : a)
    if (x != 0) return false;
  return true;
}

bool is_zero(const zvec& a) {
  for (const auto& e : a)
    if (e != 0) return false;
  return true;
}

}  // namespace egz
