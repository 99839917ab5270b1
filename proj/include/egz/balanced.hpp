#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "egz/rational.hpp"

namespace egz {

// Finite set of distinct rational points with strictly positive weights.
struct WeightedPointSet {
  std::vector<qvec> points;
  std::vector<rat> weights;  // parallel to points

  rat total() const {
    rat x = 0;
    for (const auto& w : weights) x += w;
    return x;
  }
};

// Nonnegative integers alpha with sum alpha = n and sum alpha_q q = n c,
// squeezed between mu n and (1 + epsilon) (theta x)^{-1} n omega(q).
struct BalancedCoefficients {
  zvec alphas;  // parallel to the point set
  bigint n = 0;
  rat mu;       // min alpha_q / n of the actual output
  rat epsilon;
  rat n0;       // threshold the construction needs n to exceed
};

// Exact minimum over closed halfspaces containing c of the captured weight
// fraction omega(S in H+)/omega(S): 1 when every point equals c, 0 when c
// lies outside the convex hull. Ambient dimension at most 3; the minimum is
// taken over sign chains covering every cell of the direction arrangement.
// When min_direction is non-null it receives the outward normal of a
// halfspace attaining the minimum (zero vector when every point equals c).
rat max_centrality(const WeightedPointSet& s, const qvec& c,
                   qvec* min_direction = nullptr);

// Positive rationals beta with sum beta = 1, sum beta_q q = c and
// beta_q < omega(q) / (theta x), found as an interior point of that system.
// Requires theta > 0, c theta-central and c in the relative interior of the
// hull (hypothesis errors otherwise); feasibility is then guaranteed, so a
// failure of the solver raises a logic error.
qvec rational_balanced(const WeightedPointSet& s, const qvec& c,
                       const rat& theta);

// Integer version: beta from rational_balanced with common denominator m,
// an integer affine representation delta of c, and alpha = a m beta + r
// delta where n = a m + r. Valid for n above the reported threshold
// n0 = 2 C m^2 + epsilon^{-1} C m theta max_q (x / omega(q)) with
// C = max |delta_q|; smaller n raises "n too small" carrying n0. The
// optional perturbation must satisfy sum gamma = 0 and sum gamma_q q = 0;
// it is added to alpha and the bounds are re-checked.
BalancedCoefficients integer_balanced(
    const WeightedPointSet& s, const qvec& c, const rat& theta,
    const rat& epsilon, const bigint& n,
    const std::optional<zvec>& perturbation = std::nullopt);

}  // namespace egz
