#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

namespace egz {

using bigint = boost::multiprecision::cpp_int;
using rat = boost::multiprecision::cpp_rational;

using qvec = std::vector<rat>;
using zvec = std::vector<bigint>;

inline bigint num(const rat& r) { return boost::multiprecision::numerator(r); }
inline bigint den(const rat& r) { return boost::multiprecision::denominator(r); }

// floor(a/b) for b != 0, exact
bigint floor_div(const bigint& a, const bigint& b);
bigint ceil_div(const bigint& a, const bigint& b);
bigint rat_floor(const rat& r);
bigint rat_ceil(const rat& r);

bigint gcd(bigint a, bigint b);
bigint lcm(const bigint& a, const bigint& b);
// g = gcd(a,b) = x*a + y*b
bigint gcdx(const bigint& a, const bigint& b, bigint& x, bigint& y);

// common denominator of a vector / matrix of rationals
bigint common_denominator(const qvec& v);
bigint common_denominator(const std::vector<qvec>& m);

// serialized as "a/b", or "a" when the denominator is 1
std::string rat_to_string(const rat& r);
std::optional<rat> parse_rat(const std::string& s);

rat dot(const qvec& a, const qvec& b);
qvec vsub(const qvec& a, const qvec& b);
qvec vadd(const qvec& a, const qvec& b);
qvec vscale(const rat& c, const qvec& a);
bool is_zero(const qvec& a);
bool is_zero(const zvec& a);

}  // namespace egz
