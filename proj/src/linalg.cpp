#include "egz/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace egz {

namespace {

// in-place HNF on rows of m; ops mirrored onto u when non-null
void hnf_inplace(zmat& m, zmat* u) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    // chained gcd elimination below row r in this column
    while (true) {
      size_t best = rows;
      for (size_t i = r; i < rows; ++i)
        if (m[i][col] != 0 &&
            (best == rows || boost::multiprecision::abs(m[i][col]) <
                                 boost::multiprecision::abs(m[best][col])))
          best = i;
      if (best == rows) break;  // column clear below r
      if (best != r) {
        std::swap(m[best], m[r]);
        if (u) std::swap((*u)[best], (*u)[r]);
      }
      bool done = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (m[i][col] == 0) continue;
        bigint q = floor_div(m[i][col], m[r][col]);
        if (q != 0) {
          for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
          if (u)
            for (size_t j = 0; j < (*u)[i].size(); ++j)
              (*u)[i][j] -= q * (*u)[r][j];
        }
        if (m[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (m[r][col] == 0) continue;
    if (m[r][col] < 0) {
      for (auto& x : m[r]) x = -x;
      if (u)
        for (auto& x : (*u)[r]) x = -x;
    }
    for (size_t i = 0; i < r; ++i) {
      bigint q = floor_div(m[i][col], m[r][col]);
      if (q != 0) {
        for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
        if (u)
          for (size_t j = 0; j < (*u)[i].size(); ++j)
            (*u)[i][j] -= q * (*u)[r][j];
      }
    }
    ++r;
  }
}

bool row_is_zero(const zvec& v) {
  for (const bigint& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

zmat row_hnf(zmat m) {
  hnf_inplace(m, nullptr);
  zmat out;
  for (auto& row : m)
    if (!row_is_zero(row)) out.push_back(std::move(row));
  return out;
}

void row_hnf_transform(const zmat& m, zmat& h, zmat& u) {
  h = m;
  u.assign(m.size(), zvec(m.size(), 0));
  for (size_t i = 0; i < m.size(); ++i) u[i][i] = 1;
  hnf_inplace(h, &u);
}

std::optional<zvec> solve_integer(const zmat& a, const zvec& b, zmat* kernel) {
  const size_t n = a.size();             // equations
  const size_t mm = n ? a[0].size() : 0; // unknowns
  // transpose so unknown combinations act as row operations
  zmat t(mm, zvec(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < mm; ++j) t[j][i] = a[i][j];
  zmat h, u;
  row_hnf_transform(t, h, u);
  if (kernel) {
    kernel->clear();
    for (size_t i = 0; i < mm; ++i)
      if (row_is_zero(h[i])) kernel->push_back(u[i]);
    *kernel = row_hnf(*kernel);
  }
  // x = u^T y; solve y^T h = b^T greedily along pivots of h.
  // In each pivot column only earlier rows interfere, so after subtracting
  // the chosen multiple the residue there must vanish exactly.
  zvec y(mm, 0);
  zvec cur = b;
  for (size_t i = 0; i < mm; ++i) {
    if (row_is_zero(h[i])) continue;
    size_t piv = 0;
    while (h[i][piv] == 0) ++piv;
    bigint q = floor_div(cur[piv], h[i][piv]);
    y[i] = q;
    for (size_t j = 0; j < n; ++j) cur[j] -= q * h[i][j];
    if (cur[piv] != 0) return std::nullopt;
  }
  if (!row_is_zero(cur)) return std::nullopt;
  zvec x(mm, 0);
  for (size_t i = 0; i < mm; ++i) {
    if (y[i] == 0) continue;
    for (size_t j = 0; j < mm; ++j) x[j] += y[i] * u[i][j];
  }
  return x;
}

zvec reduce_mod_lattice(zvec x, const zmat& kernel_hnf) {
  for (const zvec& k : kernel_hnf) {
    size_t piv = 0;
    while (piv < k.size() && k[piv] == 0) ++piv;
    if (piv == k.size()) continue;
    bigint q = floor_div(x[piv], k[piv]);
    if (q != 0)
      for (size_t j = 0; j < k.size(); ++j) x[j] -= q * k[j];
  }
  return x;
}

size_t qrank(qmat m) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    size_t piv = rows;
    for (size_t i = r; i < rows; ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][col] == 0) continue;
      rat f = m[i][col] / m[r][col];
      for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

qmat qkernel(const qmat& m_in) {
  qmat m = m_in;
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    size_t piv = rows;
    for (size_t i = r; i < rows; ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    rat p = m[r][col];
    for (size_t j = col; j < cols; ++j) m[r][j] /= p;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][col] == 0) continue;
      rat f = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivot_col) is_pivot[c] = true;
  qmat basis;
  for (size_t free_c = 0; free_c < cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    qvec v(cols, rat(0));
    v[free_c] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m[i][free_c];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<qvec> qsolve(qmat m, qvec rhs) {
  const size_t rows = m.size();
  if (rhs.size() != rows) throw std::invalid_argument("qsolve: size mismatch");
  const size_t cols = rows ? m[0].size() : 0;
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    size_t piv = rows;
    for (size_t i = r; i < rows; ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    std::swap(rhs[piv], rhs[r]);
    rat p = m[r][col];
    for (size_t j = col; j < cols; ++j) m[r][j] /= p;
    rhs[r] /= p;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][col] == 0) continue;
      rat f = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (rhs[i] != 0) return std::nullopt;
  qvec x(cols, rat(0));
  for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

zmat saturate_directions(const qmat& dirs, size_t d) {
  if (dirs.empty()) return {};
  // complement equations: rows c with c . v = 0 for all span directions
  qmat comp = qkernel(dirs);  // kernel of x -> dirs * x is wrong shape; see below
  // qkernel(dirs) gives {x : dirs*x = 0}, exactly the functionals vanishing
  // on every direction row, which is what we need.
  if (comp.empty()) {
    // full span: saturation is all of Z^d
    zmat id(d, zvec(d, 0));
    for (size_t i = 0; i < d; ++i) id[i][i] = 1;
    return id;
  }
  zmat c;
  for (const qvec& row : comp) {
    bigint l = common_denominator(row);
    zvec zr(d);
    for (size_t j = 0; j < d; ++j) zr[j] = num(row[j] * l);
    c.push_back(std::move(zr));
  }
  zmat kernel;
  zvec zero(c.size(), 0);
  // build kernel of c over Z
  zmat a = c;
  solve_integer(a, zero, &kernel);
  return kernel;
}

}  // namespace egz
