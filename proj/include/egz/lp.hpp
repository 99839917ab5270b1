#pragma once

#include <optional>
#include <vector>

#include "egz/rational.hpp"

namespace egz {

enum class Rel { LE, LT, EQ };

// a . x  (<= | < | =)  b
struct LinConstraint {
  qvec a;
  Rel rel = Rel::LE;
  rat b = 0;
};

// Exact feasibility with strict inequalities handled by maximizing a shared
// slack: returns a point satisfying every constraint, with each LT satisfied
// strictly, or nullopt if none exists. Runs a two-phase rational simplex
// with Bland's rule, so it terminates on every input.
std::optional<qvec> rational_interior_point(
    const std::vector<LinConstraint>& cons, size_t dim);

// Barycentric weights placing x in the convex hull of the points: lambda >= 0
// (or > 0 when strict, which characterizes the relative interior), summing to
// one, with sum lambda_i p_i = x. Nullopt when x lies outside.
std::optional<qvec> convex_combination(const std::vector<qvec>& points,
                                       const qvec& x, bool strict);

}  // namespace egz
