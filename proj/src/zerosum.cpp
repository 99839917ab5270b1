#include "egz/zerosum.hpp"

#include <algorithm>
#include <set>

namespace egz {

namespace {

// group size n^d, guarded against blowup
size_t group_size(int64_t n, int64_t d, int64_t budget) {
  int64_t g = 1;
  for (int64_t i = 0; i < d; ++i) {
    if (g > budget / n) throw BudgetError("group Z_n^d too large for budget");
    g *= n;
  }
  return size_t(g);
}

// index shift of adding c copies of v, on mixed-radix encoded group elements
struct GroupOps {
  int64_t n;
  size_t d;
  size_t size;

  size_t add(size_t a, size_t b) const {
    size_t r = 0, mul = 1;
    for (size_t i = 0; i < d; ++i) {
      int64_t ca = int64_t(a % size_t(n)), cb = int64_t(b % size_t(n));
      a /= size_t(n);
      b /= size_t(n);
      r += size_t(mod_reduce(ca + cb, n)) * mul;
      mul *= size_t(n);
    }
    return r;
  }
  size_t scale(int64_t c, size_t a) const {
    size_t r = 0, mul = 1;
    for (size_t i = 0; i < d; ++i) {
      int64_t ca = int64_t(a % size_t(n));
      a /= size_t(n);
      r += size_t(mod_reduce(c * ca, n)) * mul;
      mul *= size_t(n);
    }
    return r;
  }
};

// reachable[(t, g)] for totals 0..cap using elements from index j on, each
// with a count in [lo_j, hi_j]
using Table = std::vector<char>;  // (cap + 1) * gsize

}  // namespace

int64_t binomial(int64_t n, int64_t k) {
  if (k < 0 || k > n) return 0;
  int64_t r = 1;
  for (int64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

bool verify_zero_sum(const FpMultiset& x, int64_t n, const ZeroSumCertificate& c) {
  if (c.n != n) return false;
  if (c.total() != n) return false;
  fvec sum(x.dim, 0);
  std::set<fvec> seen;
  for (const auto& [v, cnt] : c.chosen) {
    if (cnt < 1) return false;
    if (!seen.insert(v).second) return false;
    auto it = std::find_if(x.elements.begin(), x.elements.end(),
                           [&](const auto& e) { return e.first == v; });
    if (it == x.elements.end() || cnt > it->second) return false;
    sum = fp_add(sum, fp_scale(cnt, v, x.n), x.n);
  }
  return std::all_of(sum.begin(), sum.end(), [](int64_t e) { return e == 0; });
}

std::optional<ZeroSumCertificate> find_zero_sum(const FpMultiset& x, int64_t n,
                                                int64_t budget) {
  if (n < 2) throw std::invalid_argument("modulus must be at least 2");
  if (x.n != n) throw std::invalid_argument("multiset modulus mismatch");
  FpMultiset ms = x;
  normalize(ms);
  const size_t k = ms.elements.size();
  const size_t gsize = group_size(n, int64_t(ms.dim), budget);
  if (int64_t(gsize) > budget / (n * std::max<int64_t>(1, int64_t(k))))
    throw BudgetError("zero-sum DP state space exceeds budget");
  GroupOps ops{n, ms.dim, gsize};

  // suffix feasibility over a fixed support: totals t with group sum g
  // realizable using support elements from position j on, all counts >= 1
  auto support_solve =
      [&](const std::vector<size_t>& sup) -> std::optional<std::vector<int64_t>> {
    const size_t m = sup.size();
    std::vector<Table> reach(m + 1, Table((size_t(n) + 1) * gsize, 0));
    reach[m][0 * gsize + 0] = 1;
    for (size_t j = m; j-- > 0;) {
      const auto& e = ms.elements[sup[j]];
      size_t vidx = fp_index(e.first, n);
      int64_t hi = std::min<int64_t>(e.second, n);
      for (int64_t t = 0; t <= n; ++t)
        for (size_t g = 0; g < gsize; ++g) {
          for (int64_t c = 1; c <= hi && c <= t; ++c) {
            size_t shifted = ops.add(g, ops.scale(n - c, vidx));
            // previous sum g' with g' + c v = g, i.e. g' = g - c v
            if (reach[j + 1][size_t(t - c) * gsize + shifted]) {
              reach[j][size_t(t) * gsize + g] = 1;
              break;
            }
          }
        }
    }
    if (!reach[0][size_t(n) * gsize + 0]) return std::nullopt;
    std::vector<int64_t> counts(m, 0);
    int64_t t = n;
    size_t g = 0;
    for (size_t j = 0; j < m; ++j) {
      const auto& e = ms.elements[sup[j]];
      size_t vidx = fp_index(e.first, n);
      int64_t hi = std::min<int64_t>(e.second, n);
      for (int64_t c = 1; c <= hi && c <= t; ++c) {
        size_t prev = ops.add(g, ops.scale(n - c, vidx));
        if (reach[j + 1][size_t(t - c) * gsize + prev]) {
          counts[j] = c;
          t -= c;
          g = prev;
          break;
        }
      }
    }
    return counts;
  };

  std::vector<int64_t> suffix_mult(k + 1, 0);
  for (size_t j = k; j-- > 0;)
    suffix_mult[j] = suffix_mult[j + 1] + std::min<int64_t>(ms.elements[j].second, n);

  std::vector<size_t> sup;
  std::optional<ZeroSumCertificate> found;
  int64_t committed_max = 0;

  auto dfs = [&](auto&& self, size_t start) -> bool {
    if (!sup.empty() && committed_max >= n) {
      if (auto counts = support_solve(sup)) {
        ZeroSumCertificate cert;
        cert.n = n;
        for (size_t j = 0; j < sup.size(); ++j)
          cert.chosen.emplace_back(ms.elements[sup[j]].first, (*counts)[j]);
        found = std::move(cert);
        return true;
      }
    }
    if (int64_t(sup.size()) + 1 > n) return false;
    for (size_t j = start; j < k; ++j) {
      if (committed_max + suffix_mult[j] < n) break;
      sup.push_back(j);
      committed_max += std::min<int64_t>(ms.elements[j].second, n);
      bool hit = self(self, j + 1);
      committed_max -= std::min<int64_t>(ms.elements[j].second, n);
      sup.pop_back();
      if (hit) return true;
    }
    return false;
  };
  dfs(dfs, 0);
  return found;
}

std::optional<WeakEgzViolation> weak_egz_check(const std::vector<fvec>& vectors,
                                               int64_t p, int64_t budget) {
  if (!is_prime(p)) throw std::invalid_argument("modulus must be prime");
  if (vectors.empty()) return std::nullopt;
  const size_t d = vectors[0].size();
  std::vector<fvec> vs;
  std::set<fvec> seen;
  for (const auto& v : vectors) {
    if (v.size() != d) throw std::invalid_argument("vector dimension mismatch");
    fvec r = fp_reduce(v, p);
    if (!seen.insert(r).second)
      throw std::invalid_argument("duplicate vector in weak zero-sum check");
    vs.push_back(std::move(r));
  }
  const size_t k = vs.size();
  const size_t gsize = group_size(p, int64_t(d), budget);
  if (int64_t(gsize) > budget / (p * int64_t(k)))
    throw BudgetError("weak zero-sum DP state space exceeds budget");
  GroupOps ops{p, d, gsize};

  // reach[j]: totals and sums realizable from position j on, counts in [0, p-1]
  std::vector<Table> reach(k + 1, Table((size_t(p) + 1) * gsize, 0));
  reach[k][0] = 1;
  for (size_t j = k; j-- > 0;) {
    size_t vidx = fp_index(vs[j], p);
    for (int64_t t = 0; t <= p; ++t)
      for (size_t g = 0; g < gsize; ++g) {
        for (int64_t c = 0; c < p && c <= t; ++c) {
          size_t prev = ops.add(g, ops.scale(p - c, vidx));
          if (reach[j + 1][size_t(t - c) * gsize + prev]) {
            reach[j][size_t(t) * gsize + g] = 1;
            break;
          }
        }
      }
  }
  if (!reach[0][size_t(p) * gsize + 0]) return std::nullopt;
  WeakEgzViolation viol;
  int64_t t = p;
  size_t g = 0;
  for (size_t j = 0; j < k; ++j) {
    size_t vidx = fp_index(vs[j], p);
    for (int64_t c = std::min<int64_t>(p - 1, t); c >= 0; --c) {
      size_t prev = ops.add(g, ops.scale(p - c, vidx));
      if (reach[j + 1][size_t(t - c) * gsize + prev]) {
        viol.alphas.emplace_back(vs[j], c);
        t -= c;
        g = prev;
        break;
      }
    }
  }
  return viol;
}

namespace {

// shared incremental DP search for both constants: DFS over canonical
// candidate lists in lexicographic order, tracking reachable (total, sum)
// states, keeping the largest (then lexicographically least) valid witness
struct ConstantSearch {
  int64_t n;
  size_t d;
  size_t gsize;
  GroupOps ops;
  std::vector<fvec> universe;  // all vectors, sorted lexicographically
  int64_t max_mult;            // n - 1 for multisets, 1 for sets
  int64_t size_cap;            // stop growing beyond this many entries
  int64_t budget;
  int64_t spent = 0;

  std::vector<std::pair<fvec, int64_t>> current;
  int64_t current_size = 0;
  std::vector<std::pair<fvec, int64_t>> best;
  int64_t best_size = -1;

  // violation = state (n, 0) reachable with counts bounded per element
  bool violates(const Table& reach) const { return reach[size_t(n) * gsize] != 0; }

  Table extend(const Table& reach, size_t vpos, int64_t count) {
    spent += int64_t(gsize) * (n + 1);
    if (spent > budget) throw BudgetError("constant search exceeds budget");
    Table out((size_t(n) + 1) * gsize, 0);
    size_t vidx = fp_index(universe[vpos], n);
    int64_t hi = std::min<int64_t>(count, n - 1);
    for (int64_t t = 0; t <= n; ++t)
      for (size_t g = 0; g < gsize; ++g) {
        if (!reach[size_t(t) * gsize + g]) continue;
        size_t cur = g;
        for (int64_t c = 0; c <= hi && t + c <= n; ++c) {
          out[size_t(t + c) * gsize + cur] = 1;
          cur = ops.add(cur, vidx);
        }
      }
    return out;
  }

  void consider() {
    // DFS visits candidates in lexicographic order, so the first witness of
    // a given size is already the least one; replace only on a size gain
    if (current_size > best_size) {
      best = current;
      best_size = current_size;
    }
  }

  void dfs(size_t start, const Table& reach) {
    consider();
    if (current_size >= size_cap) return;
    for (size_t j = start; j < universe.size(); ++j) {
      int64_t room = size_cap - current_size;
      for (int64_t c = 1; c <= std::min(max_mult, room); ++c) {
        Table next = extend(reach, j, c);
        // a violation at count c persists for every larger count
        if (violates(next)) break;
        current.emplace_back(universe[j], c);
        current_size += c;
        dfs(j + 1, next);
        current_size -= c;
        current.pop_back();
      }
    }
  }
};

ConstantSearch make_search(int64_t n, int64_t d, int64_t max_mult,
                           int64_t size_cap, int64_t budget) {
  size_t gsize = group_size(n, d, budget);
  ConstantSearch cs{n,       size_t(d), gsize, GroupOps{n, size_t(d), gsize},
                    {},      max_mult,  size_cap, budget};
  for (size_t i = 0; i < gsize; ++i) cs.universe.push_back(fp_unindex(i, n, size_t(d)));
  std::sort(cs.universe.begin(), cs.universe.end());
  return cs;
}

}  // namespace

EgzResult egz_constant(int64_t n, int64_t d, int64_t budget) {
  if (n < 2 || d < 1) throw std::invalid_argument("need n >= 2 and d >= 1");
  // any valid multiset translates to one containing zero, and the least
  // witness always starts with the zero vector, so root the search there
  ConstantSearch cs = make_search(n, d, n - 1, 0, budget);
  cs.size_cap = int64_t(cs.universe.size()) * (n - 1);
  Table root((size_t(n) + 1) * cs.gsize, 0);
  root[0] = 1;
  for (int64_t c = 1; c <= n - 1; ++c) {
    Table next = cs.extend(root, 0, c);
    if (cs.violates(next)) break;
    cs.current.emplace_back(cs.universe[0], c);
    cs.current_size += c;
    cs.dfs(1, next);
    cs.current_size -= c;
    cs.current.pop_back();
  }
  // the empty multiset is always zero-sum free
  if (cs.best_size < 0) {
    cs.best_size = 0;
    cs.best.clear();
  }
  EgzResult res;
  res.s = cs.best_size + 1;
  res.extremal.n = n;
  res.extremal.dim = size_t(d);
  res.extremal.elements = cs.best;
  normalize(res.extremal);
  return res;
}

WeakEgzResult weak_egz_constant(int64_t p, int64_t d, int64_t budget) {
  if (!is_prime(p)) throw std::invalid_argument("modulus must be prime");
  if (d < 1) throw std::invalid_argument("need d >= 1");
  const int64_t cap = binomial(2 * d - 1, d) + 1;
  ConstantSearch cs = make_search(p, d, 1, cap + 1, budget);
  Table root((size_t(p) + 1) * cs.gsize, 0);
  root[0] = 1;
  // counts here are set membership; a weight may still be anything below p,
  // so extend with multiplicity p - 1 per chosen vector
  auto extend_set = [&](const Table& reach, size_t vpos) {
    cs.spent += int64_t(cs.gsize) * (p + 1);
    if (cs.spent > budget) throw BudgetError("constant search exceeds budget");
    Table out((size_t(p) + 1) * cs.gsize, 0);
    size_t vidx = fp_index(cs.universe[vpos], p);
    for (int64_t t = 0; t <= p; ++t)
      for (size_t g = 0; g < cs.gsize; ++g) {
        if (!reach[size_t(t) * cs.gsize + g]) continue;
        size_t cur = g;
        for (int64_t c = 0; c < p && t + c <= p; ++c) {
          out[size_t(t + c) * cs.gsize + cur] = 1;
          cur = cs.ops.add(cur, vidx);
        }
      }
    return out;
  };

  std::vector<size_t> chosen;
  std::vector<size_t> best;
  auto dfs = [&](auto&& self, size_t start, const Table& reach) -> void {
    if (chosen.size() > best.size()) best = chosen;
    if (int64_t(chosen.size()) >= cap + 1) return;
    for (size_t j = start; j < cs.universe.size(); ++j) {
      Table next = extend_set(reach, j);
      if (next[size_t(p) * cs.gsize]) continue;  // violation appeared
      chosen.push_back(j);
      self(self, j + 1, next);
      chosen.pop_back();
    }
  };
  // least witness contains zero (translate any witness by minus an element)
  Table with_zero = extend_set(root, 0);
  if (!with_zero[size_t(p) * cs.gsize]) {
    chosen.push_back(0);
    dfs(dfs, 1, with_zero);
    chosen.pop_back();
  }
  WeakEgzResult res;
  res.w = int64_t(best.size());
  for (size_t j : best) res.maximal_set.push_back(cs.universe[j]);
  return res;
}

namespace {

// Coordinates of a lattice member in the canonical basis. The basis rows are
// triangular with strictly increasing pivot columns, so forward substitution
// peels off one coefficient per row.
zvec lattice_coordinates(const AffineLattice& lat, const qvec& x) {
  qvec rem(lat.ambient_dim);
  for (size_t j = 0; j < lat.ambient_dim; ++j) rem[j] = x[j] - lat.origin[j];
  zvec c(lat.rank());
  for (size_t i = 0; i < lat.basis.size(); ++i) {
    size_t piv = 0;
    while (piv < lat.ambient_dim && lat.basis[i][piv] == 0) ++piv;
    rat q = rem[piv] / lat.basis[i][piv];
    if (den(q) != 1) throw std::logic_error("point escapes its vertex lattice");
    c[i] = num(q);
    for (size_t j = piv; j < lat.ambient_dim; ++j) rem[j] -= q * lat.basis[i][j];
  }
  for (size_t j = 0; j < lat.ambient_dim; ++j)
    if (rem[j] != 0) throw std::logic_error("point escapes its vertex lattice");
  return c;
}

}  // namespace

HollowReduction hollow_to_weak_egz(const PolytopeQ& P, int64_t p,
                                   int64_t budget) {
  if (!is_prime(p)) throw std::invalid_argument("modulus must be prime");
  if (P.vertices.empty()) throw std::invalid_argument("empty polytope");
  HollownessReport rep = is_hollow(P, budget);
  if (!rep.hollow)
    throw std::invalid_argument("polytope has a non-vertex integer point");

  AffineLattice lat = minimal_affine_lattice(P.vertices);
  HollowReduction out;
  out.p = p;
  for (const auto& v : P.vertices) {
    zvec c = lattice_coordinates(lat, v);
    fvec f(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
      bigint m = c[i] % p;
      if (m < 0) m += p;
      f[i] = int64_t(m);
    }
    out.vectors.push_back(std::move(f));
  }

  std::map<fvec, size_t> first_seen;
  for (size_t j = 0; j < out.vectors.size(); ++j) {
    auto [it, fresh] = first_seen.emplace(out.vectors[j], j);
    if (!fresh) {
      WeakEgzViolation viol;
      for (size_t i = 0; i < out.vectors.size(); ++i) {
        int64_t a = i == it->second ? p - 1 : i == j ? 1 : 0;
        viol.alphas.emplace_back(out.vectors[i], a);
      }
      out.violation = std::move(viol);
      return out;
    }
  }
  out.violation = weak_egz_check(out.vectors, p, budget);
  return out;
}

}  // namespace egz
