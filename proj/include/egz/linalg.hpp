#pragma once

#include <optional>
#include <vector>

#include "egz/rational.hpp"

namespace egz {

using zmat = std::vector<zvec>;
using qmat = std::vector<qvec>;

// Row-style Hermite normal form of the lattice spanned by the rows of m.
// Result rows are the nonzero HNF rows: pivot columns strictly increasing,
// pivots positive, entries above a pivot reduced into [0, pivot).
zmat row_hnf(zmat m);

// Same, also producing a unimodular u with u*m = h (h padded with zero rows).
// Returns h including zero rows so that u rows align with h rows.
void row_hnf_transform(const zmat& m, zmat& h, zmat& u);

// Integer solutions of a*x = b. Returns a particular solution if one exists.
// kernel receives a row-HNF basis of the integer kernel lattice of a.
std::optional<zvec> solve_integer(const zmat& a, const zvec& b, zmat* kernel);

// Reduce x modulo the lattice spanned by the rows of kernel_hnf (must be in
// row HNF). Deterministic representative: pivot entries land in [0, pivot).
zvec reduce_mod_lattice(zvec x, const zmat& kernel_hnf);

// Rational Gaussian elimination utilities.
size_t qrank(qmat m);
// Basis of {x : m*x = 0} over Q, deterministic echelon parametrization.
qmat qkernel(const qmat& m);
// One solution of m*x = rhs over Q (least-index pivots; free vars = 0).
std::optional<qvec> qsolve(qmat m, qvec rhs);

// Basis of the saturated lattice span_Q(rows of dirs) n Z^d.
// dirs may be rationally dependent; d = ambient dimension.
zmat saturate_directions(const qmat& dirs, size_t d);

}  // namespace egz
