#include "egz/lp.hpp"

#include <stdexcept>

#include "egz/linalg.hpp"

namespace egz {

namespace {

// min c.z subject to A z = b, z >= 0, solved on a dense exact tableau.
// Bland's rule everywhere, so cycling is impossible. Returns nullopt when
// infeasible; throws on an unbounded objective since no caller builds one.
std::optional<qvec> simplex_min(qmat a, qvec b, const qvec& c) {
  const size_t m = a.size();
  const size_t n = m ? a[0].size() : c.size();
  for (size_t i = 0; i < m; ++i)
    if (b[i] < 0) {
      for (auto& e : a[i]) e = -e;
      b[i] = -b[i];
    }
  // columns: n structural + m artificial, then rhs
  const size_t total = n + m;
  qmat t(m, qvec(total + 1));
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][total] = b[i];
    basis[i] = n + i;
  }
  std::vector<bool> row_live(m, true);

  auto pivot = [&](size_t pr, size_t pc, qvec& cost) {
    rat p = t[pr][pc];
    for (auto& e : t[pr]) e /= p;
    for (size_t i = 0; i < m; ++i) {
      if (i == pr || !row_live[i] || t[i][pc] == 0) continue;
      rat f = t[i][pc];
      for (size_t j = 0; j <= total; ++j) t[i][j] -= f * t[pr][j];
    }
    if (cost[pc] != 0) {
      rat f = cost[pc];
      for (size_t j = 0; j <= total; ++j) cost[j] -= f * t[pr][j];
    }
    basis[pr] = pc;
  };

  auto run = [&](qvec& cost, size_t limit) -> bool {
    // limit: columns eligible to enter (phase 2 bars artificials)
    for (;;) {
      size_t enter = total;
      for (size_t j = 0; j < limit; ++j)
        if (cost[j] < 0) {
          enter = j;
          break;
        }
      if (enter == total) return true;
      size_t leave = m;
      for (size_t i = 0; i < m; ++i) {
        if (!row_live[i] || t[i][enter] <= 0) continue;
        if (leave == m) {
          leave = i;
          continue;
        }
        rat cur = t[i][total] / t[i][enter];
        rat best = t[leave][total] / t[leave][enter];
        if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
      }
      if (leave == m) return false;  // unbounded
      pivot(leave, enter, cost);
    }
  };

  // phase 1: minimize the artificial sum
  qvec cost1(total + 1);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j <= total; ++j)
      if (j < n || j == total) cost1[j] -= t[i][j];
  if (!run(cost1, total)) throw std::logic_error("phase 1 unbounded");
  if (-cost1[total] != 0) return std::nullopt;
  // drive leftover artificials out of the basis
  for (size_t i = 0; i < m; ++i) {
    if (!row_live[i] || basis[i] < n) continue;
    size_t pc = n;
    for (size_t j = 0; j < n; ++j)
      if (t[i][j] != 0) {
        pc = j;
        break;
      }
    if (pc == n || t[i][pc] == 0) {
      row_live[i] = false;  // redundant row
      continue;
    }
    pivot(i, pc, cost1);
  }

  // phase 2
  qvec cost2(total + 1);
  for (size_t j = 0; j < n; ++j) cost2[j] = c[j];
  for (size_t i = 0; i < m; ++i) {
    if (!row_live[i] || basis[i] >= n || c[basis[i]] == 0) continue;
    rat f = c[basis[i]];
    for (size_t j = 0; j <= total; ++j) cost2[j] -= f * t[i][j];
  }
  if (!run(cost2, n)) throw std::logic_error("objective unbounded");

  qvec z(n, 0);
  for (size_t i = 0; i < m; ++i)
    if (row_live[i] && basis[i] < n) z[basis[i]] = t[i][total];
  return z;
}

}  // namespace

std::optional<qvec> rational_interior_point(
    const std::vector<LinConstraint>& cons, size_t dim) {
  // free x split as u - v, one shared slack t for every strict row, t <= 1
  size_t slacks = 1;  // the t <= 1 row
  for (const auto& con : cons)
    if (con.rel != Rel::EQ) ++slacks;
  const size_t tcol = 2 * dim;
  const size_t n = 2 * dim + 1 + slacks;
  const size_t m = cons.size() + 1;
  qmat a(m, qvec(n, 0));
  qvec b(m, 0);
  size_t slack = 2 * dim + 1;
  for (size_t i = 0; i < cons.size(); ++i) {
    const auto& con = cons[i];
    if (con.a.size() != dim) throw std::invalid_argument("constraint size mismatch");
    for (size_t j = 0; j < dim; ++j) {
      a[i][j] = con.a[j];
      a[i][dim + j] = -con.a[j];
    }
    if (con.rel == Rel::LT) a[i][tcol] = 1;
    if (con.rel != Rel::EQ) a[i][slack++] = 1;
    b[i] = con.b;
  }
  a[cons.size()][tcol] = 1;
  a[cons.size()][slack] = 1;
  b[cons.size()] = 1;
  qvec c(n, 0);
  c[tcol] = -1;
  auto z = simplex_min(std::move(a), std::move(b), c);
  if (!z) return std::nullopt;
  if ((*z)[tcol] <= 0) return std::nullopt;
  qvec x(dim);
  for (size_t j = 0; j < dim; ++j) x[j] = (*z)[j] - (*z)[dim + j];
  return x;
}

std::optional<qvec> convex_combination(const std::vector<qvec>& points,
                                       const qvec& x, bool strict) {
  const size_t k = points.size();
  if (k == 0) return std::nullopt;
  const size_t d = x.size();
  std::vector<LinConstraint> cons;
  for (size_t i = 0; i < k; ++i) {
    LinConstraint nonneg;
    nonneg.a.assign(k, 0);
    nonneg.a[i] = -1;
    nonneg.rel = strict ? Rel::LT : Rel::LE;
    nonneg.b = 0;
    cons.push_back(std::move(nonneg));
  }
  LinConstraint sum1;
  sum1.a.assign(k, 1);
  sum1.rel = Rel::EQ;
  sum1.b = 1;
  cons.push_back(std::move(sum1));
  for (size_t j = 0; j < d; ++j) {
    LinConstraint coord;
    coord.a.assign(k, 0);
    for (size_t i = 0; i < k; ++i) {
      if (points[i].size() != d)
        throw std::invalid_argument("point dimension mismatch");
      coord.a[i] = points[i][j];
    }
    coord.rel = Rel::EQ;
    coord.b = x[j];
    cons.push_back(std::move(coord));
  }
  return rational_interior_point(cons, k);
}

}  // namespace egz
