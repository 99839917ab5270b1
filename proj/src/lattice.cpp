#include "egz/lattice.hpp"

#include <stdexcept>

namespace egz {

namespace {

// Reduce x modulo the integer span of the (triangular, canonical) basis
// rows, picking the representative with each pivot coordinate in [0, pivot).
void reduce_point(qvec& x, const std::vector<qvec>& basis) {
  for (const auto& row : basis) {
    size_t piv = 0;
    while (piv < row.size() && row[piv] == 0) ++piv;
    if (piv == row.size()) continue;
    rat q(rat_floor(x[piv] / row[piv]));
    if (q == 0) continue;
    for (size_t j = piv; j < row.size(); ++j) x[j] -= q * row[j];
  }
}

}  // namespace

void canonicalize(AffineLattice& lat) {
  const size_t d = lat.ambient_dim;
  if (lat.origin.size() != d) throw std::invalid_argument("origin size mismatch");
  for (const auto& b : lat.basis)
    if (b.size() != d) throw std::invalid_argument("basis row size mismatch");
  if (!lat.basis.empty()) {
    bigint den = common_denominator(lat.basis);
    zmat scaled(lat.basis.size(), zvec(d));
    for (size_t i = 0; i < lat.basis.size(); ++i)
      for (size_t j = 0; j < d; ++j) {
        rat v = lat.basis[i][j] * den;
        scaled[i][j] = num(v);
      }
    zmat h = row_hnf(scaled);
    lat.basis.assign(h.size(), qvec(d));
    for (size_t i = 0; i < h.size(); ++i)
      for (size_t j = 0; j < d; ++j) lat.basis[i][j] = rat(h[i][j], den);
  }
  reduce_point(lat.origin, lat.basis);
}

AffineLattice minimal_affine_lattice(const std::vector<qvec>& points) {
  if (points.empty()) throw std::invalid_argument("need at least one point");
  AffineLattice lat;
  lat.ambient_dim = points[0].size();
  lat.origin = points[0];
  for (size_t i = 1; i < points.size(); ++i)
    lat.basis.push_back(vsub(points[i], points[0]));
  canonicalize(lat);
  return lat;
}

bool lattice_member(const AffineLattice& lat, const qvec& x) {
  if (x.size() != lat.ambient_dim) return false;
  qvec diff = vsub(x, lat.origin);
  for (const auto& row : lat.basis) {
    size_t piv = 0;
    while (piv < row.size() && row[piv] == 0) ++piv;
    if (piv == row.size()) continue;
    rat a = diff[piv] / row[piv];
    if (den(a) != 1) return false;
    for (size_t j = piv; j < row.size(); ++j) diff[j] -= a * row[j];
  }
  return is_zero(diff);
}

std::optional<zvec> integer_affine_solve(const std::vector<qvec>& points,
                                         const qvec& target) {
  if (points.empty()) return std::nullopt;
  const size_t d = target.size();
  const size_t k = points.size();
  for (const auto& p : points)
    if (p.size() != d) throw std::invalid_argument("point dimension mismatch");
  // One integer row per coordinate (denominators cleared per row), plus the
  // affine row forcing the coefficients to sum to 1.
  zmat a(d + 1, zvec(k));
  zvec b(d + 1);
  for (size_t j = 0; j < d; ++j) {
    qvec row(k + 1);
    for (size_t i = 0; i < k; ++i) row[i] = points[i][j];
    row[k] = target[j];
    bigint denj = common_denominator(row);
    for (size_t i = 0; i < k; ++i) a[j][i] = num(points[i][j] * denj);
    b[j] = num(target[j] * denj);
  }
  for (size_t i = 0; i < k; ++i) a[d][i] = 1;
  b[d] = 1;
  zmat kernel;
  auto sol = solve_integer(a, b, &kernel);
  if (!sol) return std::nullopt;
  return reduce_mod_lattice(*sol, kernel);
}

}  // namespace egz
