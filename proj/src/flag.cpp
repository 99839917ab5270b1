#include "egz/flag.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "egz/balanced.hpp"
#include "egz/linalg.hpp"
#include "egz/lp.hpp"

namespace egz {

qvec AffineMapQ::operator()(const qvec& x) const {
  if (!rows.empty() && x.size() != rows[0].size())
    throw std::invalid_argument("affine map applied to the wrong dimension");
  qvec y = offset;
  for (size_t r = 0; r < rows.size(); ++r) y[r] += dot(rows[r], x);
  return y;
}

AffineMapQ identity_map(size_t dim) {
  AffineMapQ m;
  m.rows.assign(dim, qvec(dim, rat(0)));
  for (size_t i = 0; i < dim; ++i) m.rows[i][i] = 1;
  m.offset.assign(dim, rat(0));
  return m;
}

AffineMapQ compose(const AffineMapQ& outer, const AffineMapQ& inner) {
  size_t mid = inner.rows.size();
  if (outer.rows.empty() || outer.rows[0].size() != mid)
    throw std::invalid_argument("composed maps have mismatched dimensions");
  size_t in = inner.rows.empty() ? 0 : inner.rows[0].size();
  AffineMapQ m;
  m.offset = outer(inner.offset);
  m.rows.assign(outer.rows.size(), qvec(in, rat(0)));
  for (size_t r = 0; r < outer.rows.size(); ++r)
    for (size_t c = 0; c < in; ++c) {
      rat s = 0;
      for (size_t k = 0; k < mid; ++k) s += outer.rows[r][k] * inner.rows[k][c];
      m.rows[r][c] = s;
    }
  return m;
}

bool FlagPoint::operator<(const FlagPoint& o) const {
  if (base != o.base) return base < o.base;
  return coords < o.coords;
}

namespace {

std::string coords_str(const qvec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += rat_to_string(v[i]);
  }
  return s + ")";
}

// Closed-up working copy of a flag: the full order relation, one composed
// structure map per related pair, pairwise suprema and node heights.
struct View {
  const ConvexFlag* f = nullptr;
  std::map<std::string, size_t> index;
  std::vector<std::vector<bool>> leq;
  std::vector<std::vector<std::optional<AffineMapQ>>> maps;
  std::vector<std::vector<size_t>> sups;
  std::vector<int64_t> height;
  std::vector<bool> minimal;

  size_t size() const { return f->nodes.size(); }
  const FlagNode& node(size_t i) const { return f->nodes[i]; }

  size_t at(const std::string& id) const {
    auto it = index.find(id);
    if (it == index.end()) throw std::invalid_argument("unknown node id: " + id);
    return it->second;
  }

  qvec image(size_t low, size_t high, const qvec& x) const {
    if (low == high) return x;
    return (*maps[low][high])(x);
  }

  size_t sup_fold(const std::vector<size_t>& xs) const {
    size_t s = xs.at(0);
    for (size_t i = 1; i < xs.size(); ++i) s = sups[s][xs[i]];
    return s;
  }
};

void scan_flag(const ConvexFlag& f, FlagReport& rep, View& v) {
  auto fail = [&rep](std::string msg) {
    rep.valid = false;
    rep.problems.push_back(std::move(msg));
  };
  v.f = &f;
  size_t n = f.nodes.size();
  if (n == 0) {
    fail("flag has no nodes");
    return;
  }

  bool ids_ok = true;
  for (size_t i = 0; i < n; ++i) {
    const FlagNode& nd = f.nodes[i];
    if (nd.id.empty()) {
      fail("node with an empty id");
      ids_ok = false;
      continue;
    }
    if (!v.index.emplace(nd.id, i).second) {
      fail("duplicate node id: " + nd.id);
      ids_ok = false;
    }
  }
  if (!ids_ok) return;

  for (size_t i = 0; i < n; ++i) {
    const FlagNode& nd = f.nodes[i];
    if (nd.ambient_dim == 0) fail("node " + nd.id + " has ambient dimension 0");
    if (nd.polytope.vertices.empty())
      fail("node " + nd.id + " has an empty polytope");
    else if (nd.polytope.ambient_dim != nd.ambient_dim)
      fail("node " + nd.id + " and its polytope disagree on the ambient dimension");
    if (nd.lattice && nd.lattice->ambient_dim != nd.ambient_dim)
      fail("node " + nd.id + " and its lattice disagree on the ambient dimension");
  }
  if (!rep.valid) return;

  v.leq.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i) v.leq[i][i] = true;
  bool refs_ok = true;
  for (const auto& [lo, hi] : f.order) {
    auto a = v.index.find(lo);
    auto b = v.index.find(hi);
    if (a == v.index.end() || b == v.index.end()) {
      fail("order relation " + lo + " <= " + hi + " references an unknown node");
      refs_ok = false;
      continue;
    }
    v.leq[a->second][b->second] = true;
  }
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i) {
      if (!v.leq[i][k]) continue;
      for (size_t j = 0; j < n; ++j)
        if (v.leq[k][j]) v.leq[i][j] = true;
    }
  bool acyclic = true;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (v.leq[i][j] && v.leq[j][i]) {
        fail("order cycle through " + f.nodes[i].id + " and " + f.nodes[j].id);
        acyclic = false;
      }
  if (!refs_ok || !acyclic) return;

  std::vector<std::vector<std::optional<AffineMapQ>>> declared(
      n, std::vector<std::optional<AffineMapQ>>(n));
  for (const auto& ar : f.maps) {
    auto a = v.index.find(ar.low);
    auto b = v.index.find(ar.high);
    if (a == v.index.end() || b == v.index.end()) {
      fail("map " + ar.low + " -> " + ar.high + " references an unknown node");
      continue;
    }
    size_t i = a->second, j = b->second;
    if (!v.leq[i][j]) {
      fail("map " + ar.low + " -> " + ar.high + " does not follow the order");
      continue;
    }
    size_t dl = f.nodes[i].ambient_dim, dh = f.nodes[j].ambient_dim;
    bool shape = ar.map.rows.size() == dh && ar.map.offset.size() == dh;
    for (const auto& row : ar.map.rows)
      if (row.size() != dl) shape = false;
    if (!shape) {
      fail("map " + ar.low + " -> " + ar.high + " has the wrong shape");
      continue;
    }
    if (i == j) {
      if (!(ar.map == identity_map(dl)))
        fail("map " + ar.low + " -> " + ar.high + " must be the identity");
      continue;
    }
    if (declared[i][j]) {
      if (!(*declared[i][j] == ar.map))
        fail("two declared maps from " + ar.low + " to " + ar.high + " disagree");
      continue;
    }
    declared[i][j] = ar.map;
  }

  v.maps.assign(n, std::vector<std::optional<AffineMapQ>>(n));
  std::vector<std::pair<size_t, std::pair<size_t, size_t>>> rel;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j || !v.leq[i][j]) continue;
      size_t cnt = 0;
      for (size_t k = 0; k < n; ++k)
        if (v.leq[i][k] && v.leq[k][j]) ++cnt;
      rel.push_back({cnt, {i, j}});
    }
  std::sort(rel.begin(), rel.end());
  for (const auto& [cnt, ij] : rel) {
    size_t i = ij.first, j = ij.second;
    std::vector<AffineMapQ> cands;
    if (declared[i][j]) cands.push_back(*declared[i][j]);
    for (size_t k = 0; k < n; ++k) {
      if (k == i || k == j || !v.leq[i][k] || !v.leq[k][j]) continue;
      if (v.maps[i][k] && v.maps[k][j])
        cands.push_back(compose(*v.maps[k][j], *v.maps[i][k]));
    }
    if (cands.empty()) {
      if (cnt == 2)
        fail("no structure map declared for the covering pair " +
             f.nodes[i].id + " <= " + f.nodes[j].id);
      continue;
    }
    bool agree = true;
    for (const auto& m : cands)
      if (!(m == cands[0])) agree = false;
    if (!agree)
      fail("structure maps from " + f.nodes[i].id + " to " + f.nodes[j].id +
           " disagree between routes");
    v.maps[i][j] = cands[0];
  }

  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j || !v.maps[i][j]) continue;
      const FlagNode& a = f.nodes[i];
      const FlagNode& b = f.nodes[j];
      const AffineMapQ& m = *v.maps[i][j];
      bool inside = true;
      for (const auto& w : a.polytope.vertices)
        if (!polytope_contains(b.polytope, m(w))) inside = false;
      if (!inside)
        fail("the polytope at " + a.id + " does not map into the polytope at " +
             b.id);
      if (!a.lattice) continue;
      if (!b.lattice) {
        fail("the lattice at " + a.id + " maps into the empty lattice at " +
             b.id);
        continue;
      }
      bool lin = lattice_member(*b.lattice, m(a.lattice->origin));
      for (const auto& dir : a.lattice->basis)
        if (!lattice_member(*b.lattice, m(vadd(a.lattice->origin, dir))))
          lin = false;
      if (!lin)
        fail("the lattice at " + a.id + " does not map into the lattice at " +
             b.id);
    }

  v.sups.assign(n, std::vector<size_t>(n, size_t(-1)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      std::vector<size_t> ub;
      for (size_t k = 0; k < n; ++k)
        if (v.leq[i][k] && v.leq[j][k]) ub.push_back(k);
      if (ub.empty()) {
        fail("nodes " + f.nodes[i].id + " and " + f.nodes[j].id +
             " have no upper bound");
        continue;
      }
      size_t least = size_t(-1);
      for (size_t m : ub) {
        bool below_all = true;
        for (size_t k : ub)
          if (!v.leq[m][k]) below_all = false;
        if (below_all) {
          least = m;
          break;
        }
      }
      if (least == size_t(-1)) {
        fail("nodes " + f.nodes[i].id + " and " + f.nodes[j].id +
             " have no least upper bound");
        continue;
      }
      v.sups[i][j] = v.sups[j][i] = least;
    }

  for (const auto& g : f.omega) {
    auto it = v.index.find(g.base);
    if (it == v.index.end()) {
      fail("generator at unknown node " + g.base);
      continue;
    }
    const FlagNode& nd = f.nodes[it->second];
    if (g.coords.size() != nd.ambient_dim)
      fail("generator at " + g.base + " has the wrong dimension");
    else if (!polytope_contains(nd.polytope, g.coords))
      fail("generator " + coords_str(g.coords) + " at " + g.base +
           " lies outside its polytope");
  }

  v.minimal.assign(n, true);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (j != i && v.leq[j][i]) v.minimal[i] = false;
  std::vector<size_t> below(n, 0), order_idx(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (v.leq[j][i]) ++below[i];
  std::iota(order_idx.begin(), order_idx.end(), size_t(0));
  std::sort(order_idx.begin(), order_idx.end(),
            [&below](size_t a, size_t b) { return below[a] < below[b]; });
  v.height.assign(n, 0);
  for (size_t i : order_idx)
    for (size_t j = 0; j < n; ++j)
      if (j != i && v.leq[j][i])
        v.height[i] = std::max(v.height[i], v.height[j] + 1);
}

View make_view(const ConvexFlag& f) {
  FlagReport rep;
  View v;
  scan_flag(f, rep, v);
  if (!rep.valid)
    throw std::invalid_argument("invalid flag: " + rep.problems.front());
  return v;
}

qvec checked_coords(const View& v, const FlagPoint& q, size_t base) {
  if (q.coords.size() != v.node(base).ambient_dim)
    throw std::invalid_argument("point at " + q.base +
                                " has the wrong dimension");
  return q.coords;
}

std::optional<qvec> whull_impl(const View& v, const std::vector<FlagPoint>& gens,
                               const FlagPoint& q) {
  size_t b = v.at(q.base);
  checked_coords(v, q, b);
  std::vector<size_t> def;
  std::vector<qvec> imgs;
  for (size_t i = 0; i < gens.size(); ++i) {
    size_t gb = v.at(gens[i].base);
    checked_coords(v, gens[i], gb);
    if (!v.leq[gb][b]) continue;
    def.push_back(i);
    imgs.push_back(v.image(gb, b, gens[i].coords));
  }
  if (def.empty()) return std::nullopt;
  auto lam = convex_combination(imgs, q.coords, false);
  if (!lam) return std::nullopt;
  qvec out(gens.size(), rat(0));
  for (size_t k = 0; k < def.size(); ++k) out[def[k]] = (*lam)[k];
  return out;
}

bool proper_impl(const View& v, const FlagPoint& q) {
  size_t b = v.at(q.base);
  checked_coords(v, q, b);
  std::vector<size_t> gbase;
  std::vector<qvec> imgs;
  for (const auto& g : v.f->omega) {
    size_t gb = v.at(g.base);
    if (!v.leq[gb][b]) continue;
    gbase.push_back(gb);
    imgs.push_back(v.image(gb, b, g.coords));
  }
  if (imgs.empty()) return false;
  auto any = convex_combination(imgs, q.coords, false);
  if (!any) return false;
  size_t m = imgs.size();
  size_t d = q.coords.size();
  std::vector<char> used(m, 0);
  for (size_t i = 0; i < m; ++i)
    if ((*any)[i] > 0) used[i] = 1;
  for (size_t g = 0; g < m; ++g) {
    if (used[g]) continue;
    std::vector<LinConstraint> cons;
    LinConstraint sum1;
    sum1.a.assign(m, rat(1));
    sum1.rel = Rel::EQ;
    sum1.b = 1;
    cons.push_back(std::move(sum1));
    for (size_t c = 0; c < d; ++c) {
      LinConstraint eq;
      eq.a.resize(m);
      for (size_t i = 0; i < m; ++i) eq.a[i] = imgs[i][c];
      eq.rel = Rel::EQ;
      eq.b = q.coords[c];
      cons.push_back(std::move(eq));
    }
    for (size_t i = 0; i < m; ++i) {
      LinConstraint ge;
      ge.a.assign(m, rat(0));
      ge.a[i] = -1;
      ge.rel = (i == g) ? Rel::LT : Rel::LE;
      ge.b = 0;
      cons.push_back(std::move(ge));
    }
    if (rational_interior_point(cons, m)) used[g] = 1;
  }
  std::vector<size_t> ub;
  for (size_t i = 0; i < m; ++i)
    if (used[i]) ub.push_back(gbase[i]);
  return v.sup_fold(ub) == b;
}

std::vector<FlagPoint> ipp_impl(const View& v, int64_t budget) {
  std::vector<FlagPoint> out;
  for (size_t i = 0; i < v.size(); ++i) {
    const FlagNode& nd = v.node(i);
    if (!nd.lattice) continue;
    for (const qvec& pt : lattice_points_in(nd.polytope, *nd.lattice, budget)) {
      bool imgs_ok = true;
      for (size_t j = 0; j < v.size(); ++j) {
        if (j == i || !v.leq[i][j]) continue;
        if (!v.node(j).lattice ||
            !lattice_member(*v.node(j).lattice, v.image(i, j, pt))) {
          imgs_ok = false;
          break;
        }
      }
      FlagPoint q{nd.id, pt};
      if (imgs_ok && proper_impl(v, q)) out.push_back(std::move(q));
    }
  }
  std::sort(out.begin(), out.end(),
            [&v](const FlagPoint& a, const FlagPoint& b) {
              int64_t ha = v.height[v.at(a.base)];
              int64_t hb = v.height[v.at(b.base)];
              if (ha != hb) return ha > hb;
              if (a.coords != b.coords) return a.coords < b.coords;
              return a.base < b.base;
            });
  return out;
}

HellyReport helly_impl(const View& v, const std::vector<FlagPoint>& pts,
                       int64_t budget) {
  HellyReport rep;
  size_t n = pts.size();
  if (n >= 63 || (n > 0 && (int64_t(1) << n) > budget))
    throw BudgetError("helly subset scan: 2^" + std::to_string(n) +
                      " subsets exceed the budget");
  BudgetMeter meter(budget, "helly subset scan");
  size_t nn = v.size();
  std::vector<size_t> base(n);
  std::vector<std::vector<qvec>> im(n, std::vector<qvec>(nn));
  for (size_t i = 0; i < n; ++i) {
    base[i] = v.at(pts[i].base);
    for (size_t x = 0; x < nn; ++x)
      if (v.leq[base[i]][x]) im[i][x] = v.image(base[i], x, pts[i].coords);
  }
  std::vector<std::vector<size_t>> at_node(nn);
  for (size_t i = 0; i < n; ++i) at_node[base[i]].push_back(i);

  size_t total = size_t(1) << n;
  std::vector<char> hasvio(total, 0);
  int64_t best_l = 0;
  size_t best_mask = 0;
  for (size_t mask = 1; mask < total; ++mask) {
    meter.spend();
    bool sub = false;
    for (size_t i = 0; i < n && !sub; ++i)
      if (((mask >> i) & 1) && hasvio[mask ^ (size_t(1) << i)]) sub = true;
    if (sub) {
      hasvio[mask] = 1;
      continue;
    }
    int pc = std::popcount(mask);
    if (pc >= 2) {
      std::vector<size_t> members;
      for (size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1) members.push_back(i);
      size_t x = base[members[0]];
      for (size_t t = 1; t < members.size(); ++t)
        x = v.sups[x][base[members[t]]];
      std::vector<qvec> imgs;
      for (size_t mem : members) imgs.push_back(im[mem][x]);
      for (size_t r : at_node[x]) {
        auto alphas = convex_combination(imgs, pts[r].coords, true);
        if (!alphas) continue;
        hasvio[mask] = 1;
        HellyViolation vio;
        for (size_t mem : members) vio.support.push_back(pts[mem]);
        vio.alphas = *alphas;
        vio.result = pts[r];
        rep.violations.push_back(std::move(vio));
        break;
      }
      if (hasvio[mask]) continue;
    }
    if (pc > best_l) {
      best_l = pc;
      best_mask = mask;
    }
  }
  rep.L = best_l;
  for (size_t i = 0; i < n; ++i)
    if ((best_mask >> i) & 1) rep.witness_set.push_back(pts[i]);

  std::vector<std::vector<size_t>> minsupp(n);
  for (size_t r = 0; r < n; ++r) {
    size_t x = base[r];
    std::vector<size_t> others;
    for (size_t i = 0; i < n; ++i)
      if (i != r && v.leq[base[i]][x]) others.push_back(i);
    size_t maxs = std::min<size_t>(others.size(),
                                   size_t(v.node(x).polytope.dim) + 1);
    for (size_t s = 1; s <= maxs; ++s) {
      std::vector<size_t> c(s);
      std::iota(c.begin(), c.end(), size_t(0));
      while (true) {
        meter.spend();
        size_t cm = 0;
        for (size_t t : c) cm |= size_t(1) << others[t];
        bool dominated = false;
        for (size_t m : minsupp[r])
          if ((m & ~cm) == 0) {
            dominated = true;
            break;
          }
        if (!dominated) {
          std::vector<qvec> imgs;
          for (size_t t : c) imgs.push_back(im[others[t]][x]);
          if (convex_combination(imgs, pts[r].coords, false))
            minsupp[r].push_back(cm);
        }
        size_t k = s;
        while (k > 0 && c[k - 1] == others.size() - s + (k - 1)) --k;
        if (k == 0) break;
        ++c[k - 1];
        for (size_t t = k; t < s; ++t) c[t] = c[t - 1] + 1;
      }
    }
  }
  int64_t best_g = 0;
  size_t best_gmask = 0;
  for (size_t mask = 0; mask < total; ++mask) {
    meter.spend();
    bool ok = true;
    for (size_t r = 0; r < n && ok; ++r) {
      size_t avail = ((mask >> r) & 1) ? (mask ^ (size_t(1) << r)) : mask;
      for (size_t m : minsupp[r])
        if ((m & ~avail) == 0) {
          ok = false;
          break;
        }
    }
    if (!ok) continue;
    int pc = std::popcount(mask);
    if (pc > best_g) {
      best_g = pc;
      best_gmask = mask;
    }
  }
  rep.L_geometric = best_g;
  for (size_t i = 0; i < n; ++i)
    if ((best_gmask >> i) & 1) rep.geometric_witness_set.push_back(pts[i]);
  return rep;
}

}  // namespace

FlagReport validate_flag(const ConvexFlag& f) {
  FlagReport rep;
  View v;
  scan_flag(f, rep, v);
  return rep;
}

ConvexFlag from_polytope(const PolytopeQ& p) {
  ConvexFlag f;
  size_t nf = p.faces.size();
  for (size_t k = 0; k < nf; ++k) {
    std::vector<qvec> vs;
    for (size_t t : p.faces[k].vertex_subset) vs.push_back(p.vertices[t]);
    FlagNode nd;
    nd.id = "f" + std::to_string(k);
    nd.ambient_dim = p.ambient_dim;
    nd.polytope = hull_and_faces(vs);
    nd.lattice = p.face_lattices[k];
    f.nodes.push_back(std::move(nd));
  }
  for (size_t i = 0; i < nf; ++i)
    for (size_t j = 0; j < nf; ++j) {
      if (i == j) continue;
      const auto& si = p.faces[i].vertex_subset;
      const auto& sj = p.faces[j].vertex_subset;
      if (!std::includes(sj.begin(), sj.end(), si.begin(), si.end())) continue;
      f.order.emplace_back(f.nodes[i].id, f.nodes[j].id);
      f.maps.push_back({f.nodes[i].id, f.nodes[j].id,
                        identity_map(p.ambient_dim)});
    }
  for (size_t t = 0; t < p.vertices.size(); ++t)
    f.omega.push_back({"f" + std::to_string(t), p.vertices[t]});
  return f;
}

ConvexFlag binary_tree(size_t d) {
  ConvexFlag f;
  PolytopeQ seg = hull_and_faces({qvec{rat(0)}, qvec{rat(1)}});
  AffineLattice z = minimal_affine_lattice({qvec{rat(0)}, qvec{rat(1)}});
  std::vector<std::string> all = {""};
  std::vector<std::string> level = {""};
  for (size_t t = 1; t <= d; ++t) {
    std::vector<std::string> next;
    for (const auto& s : level)
      for (char c : {'0', '1'}) next.push_back(s + c);
    for (const auto& s : next) all.push_back(s);
    level = std::move(next);
  }
  for (const auto& s : all) f.nodes.push_back({"n" + s, 1, seg, z});
  for (const auto& s : all) {
    if (s.empty()) continue;
    std::string child = "n" + s;
    std::string parent = "n" + s.substr(0, s.size() - 1);
    f.order.emplace_back(child, parent);
    AffineMapQ m;
    m.rows = {qvec{rat(0)}};
    m.offset = {rat(s.back() - '0')};
    f.maps.push_back({child, parent, m});
  }
  for (const auto& s : all) {
    f.omega.push_back({"n" + s, qvec{rat(0)}});
    f.omega.push_back({"n" + s, qvec{rat(1)}});
  }
  return f;
}

ConvexFlag sunflower(const PolytopeQ& core,
                     const std::vector<PolytopeQ>& petals) {
  if (core.ambient_dim != 2 || core.dim != 2)
    throw std::invalid_argument("the sunflower core must be a polygon in the plane");
  size_t n = core.vertices.size();
  if (petals.size() != n)
    throw std::invalid_argument("need exactly one petal per core edge");

  qvec cen(2, rat(0));
  for (const auto& w : core.vertices) {
    cen[0] += w[0];
    cen[1] += w[1];
  }
  cen[0] /= rat(int64_t(n));
  cen[1] /= rat(int64_t(n));
  auto half = [&](size_t i) {
    rat dy = core.vertices[i][1] - cen[1];
    rat dx = core.vertices[i][0] - cen[0];
    return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
  };
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t(0));
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    rat ax = core.vertices[a][0] - cen[0], ay = core.vertices[a][1] - cen[1];
    rat bx = core.vertices[b][0] - cen[0], by = core.vertices[b][1] - cen[1];
    rat cross = ax * by - ay * bx;
    return cross > 0;
  });
  size_t start = 0;
  for (size_t i = 1; i < n; ++i)
    if (core.vertices[idx[i]] < core.vertices[idx[start]]) start = i;
  std::vector<qvec> cyc;
  for (size_t i = 0; i < n; ++i)
    cyc.push_back(core.vertices[idx[(start + i) % n]]);

  ConvexFlag f;
  f.nodes.push_back({"core", 2, core, minimal_affine_lattice(core.vertices)});

  struct Edge {
    qvec a, b;
  };
  std::vector<Edge> tops(n), bottoms(n);
  for (size_t i = 0; i < n; ++i) {
    const PolytopeQ& pet = petals[i];
    if (pet.ambient_dim != 2 || pet.dim != 2)
      throw std::invalid_argument("petal " + std::to_string(i) +
                                  " must be a polygon in the plane");
    rat ylo = pet.vertices[0][1], yhi = pet.vertices[0][1];
    for (const auto& w : pet.vertices) {
      ylo = std::min(ylo, rat(w[1]));
      yhi = std::max(yhi, rat(w[1]));
    }
    auto horiz = [&pet](const rat& y) -> std::optional<Edge> {
      for (const auto& fd : pet.faces) {
        if (fd.dim != 1) continue;
        bool flat = true;
        for (size_t t : fd.vertex_subset)
          if (pet.vertices[t][1] != y) flat = false;
        if (!flat) continue;
        Edge e{pet.vertices[fd.vertex_subset[0]],
               pet.vertices[fd.vertex_subset[1]]};
        if (e.b < e.a) std::swap(e.a, e.b);
        return e;
      }
      return std::nullopt;
    };
    auto bot = horiz(ylo);
    auto top = horiz(yhi);
    if (!bot || !top)
      throw std::invalid_argument("petal " + std::to_string(i) +
                                  " needs horizontal bottom and top edges");
    bottoms[i] = *bot;
    tops[i] = *top;
    f.nodes.push_back({"petal" + std::to_string(i), 2, pet,
                       minimal_affine_lattice(pet.vertices)});
  }
  PolytopeQ seg = hull_and_faces({qvec{rat(0)}, qvec{rat(1)}});
  AffineLattice z = minimal_affine_lattice({qvec{rat(0)}, qvec{rat(1)}});
  for (size_t i = 0; i < n; ++i)
    f.nodes.push_back({"joint" + std::to_string(i), 1, seg, z});

  auto seg_map = [](const Edge& e) {
    AffineMapQ m;
    m.rows = {qvec{rat(e.b[0] - e.a[0])}, qvec{rat(e.b[1] - e.a[1])}};
    m.offset = {e.a[0], e.a[1]};
    return m;
  };
  for (size_t i = 0; i < n; ++i) {
    std::string pid = "petal" + std::to_string(i);
    std::string jid = "joint" + std::to_string(i);
    std::string qid = "petal" + std::to_string((i + 1) % n);
    const qvec& v0 = cyc[i];
    const qvec& v1 = cyc[(i + 1) % n];
    rat ylo = bottoms[i].a[1];
    rat span = tops[i].a[1] - ylo;
    AffineMapQ proj;
    proj.rows = {qvec{rat(0), (v1[0] - v0[0]) / span},
                 qvec{rat(0), (v1[1] - v0[1]) / span}};
    proj.offset = {v0[0] - ylo * (v1[0] - v0[0]) / span,
                   v0[1] - ylo * (v1[1] - v0[1]) / span};
    f.order.emplace_back(pid, "core");
    f.maps.push_back({pid, "core", proj});
    f.order.emplace_back(jid, pid);
    f.maps.push_back({jid, pid, seg_map(tops[i])});
    f.order.emplace_back(jid, qid);
    f.maps.push_back({jid, qid, seg_map(bottoms[(i + 1) % n])});
  }
  for (const auto& nd : f.nodes)
    for (const auto& w : nd.polytope.vertices) f.omega.push_back({nd.id, w});
  return f;
}

ConvexFlag sunflower(const PolytopeQ& core) {
  PolytopeQ square = hull_and_faces({qvec{rat(0), rat(0)}, qvec{rat(1), rat(0)},
                                     qvec{rat(0), rat(1)}, qvec{rat(1), rat(1)}});
  return sunflower(core, std::vector<PolytopeQ>(core.vertices.size(), square));
}

ConvexFlag interval_with_duplicated_endpoints() {
  ConvexFlag f = from_polytope(hull_and_faces({qvec{rat(0)}, qvec{rat(1)}}));
  f.omega.push_back({"f2", qvec{rat(0)}});
  f.omega.push_back({"f2", qvec{rat(1)}});
  return f;
}

FlagPoint point_image(const ConvexFlag& f, const FlagPoint& q,
                      const std::string& node) {
  View v = make_view(f);
  size_t b = v.at(q.base);
  size_t h = v.at(node);
  checked_coords(v, q, b);
  if (!v.leq[b][h])
    throw std::invalid_argument("node " + node + " is not above " + q.base);
  return {v.node(h).id, v.image(b, h, q.coords)};
}

FlagPoint convex_combine(const ConvexFlag& f,
                         const std::vector<FlagPoint>& points,
                         const qvec& alphas) {
  View v = make_view(f);
  if (points.empty() || alphas.size() != points.size())
    throw std::invalid_argument("coefficients do not match the points");
  rat sum = 0;
  for (const rat& a : alphas) {
    if (a < 0) throw std::invalid_argument("coefficients must be nonnegative");
    sum += a;
  }
  if (sum != 1) throw std::invalid_argument("coefficients must sum to one");
  std::vector<size_t> supp;
  for (size_t i = 0; i < points.size(); ++i) {
    size_t b = v.at(points[i].base);
    checked_coords(v, points[i], b);
    if (!polytope_contains(v.node(b).polytope, points[i].coords))
      throw std::invalid_argument("point " + coords_str(points[i].coords) +
                                  " lies outside the polytope at " +
                                  points[i].base);
    if (alphas[i] > 0) supp.push_back(i);
  }
  std::vector<size_t> bases;
  for (size_t i : supp) bases.push_back(v.at(points[i].base));
  size_t x = v.sup_fold(bases);
  qvec coords(v.node(x).ambient_dim, rat(0));
  for (size_t i : supp) {
    qvec im = v.image(v.at(points[i].base), x, points[i].coords);
    for (size_t c = 0; c < coords.size(); ++c) coords[c] += alphas[i] * im[c];
  }
  if (!polytope_contains(v.node(x).polytope, coords))
    throw std::logic_error("combination escaped the polytope at " +
                           v.node(x).id);
  return {v.node(x).id, coords};
}

std::optional<qvec> weak_hull_member(const ConvexFlag& f,
                                     const std::vector<FlagPoint>& gens,
                                     const FlagPoint& q) {
  View v = make_view(f);
  return whull_impl(v, gens, q);
}

bool proper_point(const ConvexFlag& f, const FlagPoint& q) {
  View v = make_view(f);
  return proper_impl(v, q);
}

std::vector<FlagPoint> integer_proper_points(const ConvexFlag& f,
                                             int64_t budget) {
  View v = make_view(f);
  return ipp_impl(v, budget);
}

HellyReport helly_constants(const ConvexFlag& f, int64_t budget) {
  View v = make_view(f);
  std::vector<FlagPoint> pts = ipp_impl(v, budget);
  return helly_impl(v, pts, budget);
}

HellyVerification verify_helly(const ConvexFlag& f,
                               const std::vector<std::vector<FlagPoint>>& families,
                               int64_t budget) {
  View v = make_view(f);
  if (families.empty()) throw std::invalid_argument("no families given");
  std::vector<FlagPoint> pts = ipp_impl(v, budget);
  std::set<FlagPoint> universe(pts.begin(), pts.end());
  for (const auto& fam : families)
    for (const auto& g : fam)
      if (!universe.count(g))
        throw std::invalid_argument("family point " + coords_str(g.coords) +
                                    " at " + g.base +
                                    " is not an integer proper point");
  int64_t L = helly_impl(v, pts, budget).L;
  size_t nf = families.size();
  std::vector<std::vector<char>> in(nf, std::vector<char>(pts.size(), 0));
  for (size_t m = 0; m < nf; ++m)
    for (size_t r = 0; r < pts.size(); ++r)
      in[m][r] = whull_impl(v, families[m], pts[r]).has_value() ? 1 : 0;

  HellyVerification out;
  BudgetMeter meter(budget, "helly verification");
  size_t k = std::min<size_t>(size_t(L), nf);
  if (k == 0) {
    out.hypothesis_holds = !pts.empty();
  } else {
    std::vector<size_t> c(k);
    std::iota(c.begin(), c.end(), size_t(0));
    while (true) {
      meter.spend();
      bool found = false;
      for (size_t r = 0; r < pts.size() && !found; ++r) {
        bool all = true;
        for (size_t t : c)
          if (!in[t][r]) {
            all = false;
            break;
          }
        found = all;
      }
      if (!found) {
        out.hypothesis_holds = false;
        out.failing_subset = c;
        break;
      }
      size_t t = k;
      while (t > 0 && c[t - 1] == nf - k + (t - 1)) --t;
      if (t == 0) break;
      ++c[t - 1];
      for (size_t s = t; s < k; ++s) c[s] = c[s - 1] + 1;
    }
  }
  for (size_t r = 0; r < pts.size(); ++r) {
    bool all = true;
    for (size_t m = 0; m < nf; ++m)
      if (!in[m][r]) {
        all = false;
        break;
      }
    if (all) {
      out.common = pts[r];
      break;
    }
  }
  if (out.hypothesis_holds && !out.common)
    throw std::logic_error(
        "flag breaks its own guarantee: the subfamilies share points but no "
        "common point exists");
  return out;
}

CenterpointResult centerpoint(const ConvexFlag& f,
                              const std::vector<FlagPoint>& points,
                              const std::vector<rat>& weights,
                              std::optional<int64_t> helly_L, int64_t budget) {
  View v = make_view(f);
  for (size_t i = 0; i < v.size(); ++i)
    if (v.node(i).ambient_dim > 3)
      throw std::invalid_argument("node " + v.node(i).id +
                                  " has ambient dimension above 3");
  if (points.empty()) throw std::invalid_argument("no input points");
  if (weights.size() != points.size())
    throw std::invalid_argument("weights do not match the points");
  for (const rat& w : weights)
    if (w < 0) throw std::invalid_argument("negative weight");
  std::set<FlagPoint> seen;
  for (const auto& q : points) {
    if (!seen.insert(q).second)
      throw std::invalid_argument("duplicate input point");
    size_t b = v.at(q.base);
    checked_coords(v, q, b);
    if (!polytope_contains(v.node(b).polytope, q.coords))
      throw std::invalid_argument("input point " + coords_str(q.coords) +
                                  " lies outside the polytope at " + q.base);
    if (!v.node(b).lattice || !lattice_member(*v.node(b).lattice, q.coords))
      throw std::invalid_argument("input point " + coords_str(q.coords) +
                                  " at " + q.base + " is not an integer point");
    if (!proper_impl(v, q))
      throw std::invalid_argument("input point " + coords_str(q.coords) +
                                  " at " + q.base + " is not a proper point");
  }
  std::vector<FlagPoint> cands = ipp_impl(v, budget);
  int64_t L;
  if (helly_L) {
    L = *helly_L;
    if (L < 1)
      throw std::invalid_argument("the Helly constant override must be positive");
  } else {
    L = helly_impl(v, cands, budget).L;
    if (L < 1)
      throw std::logic_error("no integer proper point is sufficiently central");
  }
  rat total = 0;
  for (const rat& w : weights) total += w;
  rat threshold = total / rat(L);
  BudgetMeter meter(budget, "centerpoint candidate scan");
  for (const FlagPoint& q : cands) {
    meter.spend();
    size_t qb = v.at(q.base);
    std::vector<CenterpointCheck> checks;
    bool ok = true;
    for (size_t x = 0; x < v.size() && ok; ++x) {
      if (!v.leq[qb][x]) continue;
      std::map<qvec, rat> merged;
      rat defw = 0;
      for (size_t i = 0; i < points.size(); ++i) {
        if (weights[i] == 0) continue;
        size_t pb = v.at(points[i].base);
        if (!v.leq[pb][x]) continue;
        merged[v.image(pb, x, points[i].coords)] += weights[i];
        defw += weights[i];
      }
      CenterpointCheck ck;
      ck.node = v.node(x).id;
      ck.defined_weight = defw;
      ck.functional.assign(v.node(x).ambient_dim, rat(0));
      if (!merged.empty()) {
        WeightedPointSet s;
        for (const auto& [p, w] : merged) {
          s.points.push_back(p);
          s.weights.push_back(w);
        }
        qvec dir;
        rat cent = max_centrality(s, v.image(qb, x, q.coords), &dir);
        ck.min_capture = cent * defw;
        ck.functional = dir;
      }
      if (ck.min_capture < threshold) ok = false;
      checks.push_back(std::move(ck));
    }
    if (ok) return {q, threshold, std::move(checks)};
  }
  throw std::logic_error("no integer proper point is sufficiently central");
}

PolytopeCenterpointResult polytope_centerpoint(const PolytopeQ& p,
                                               const std::vector<qvec>& points,
                                               const std::vector<rat>& weights,
                                               int64_t budget) {
  if (p.dim > 3 || p.ambient_dim > 3)
    throw std::invalid_argument("only dimensions up to 3 are supported");
  if (points.empty()) throw std::invalid_argument("no points given");
  if (weights.size() != points.size())
    throw std::invalid_argument("weights do not match the points");
  std::set<qvec> seen;
  for (const auto& s : points) {
    if (!seen.insert(s).second)
      throw std::invalid_argument("duplicate point " + coords_str(s));
    if (!polytope_contains(p, s))
      throw std::invalid_argument("point " + coords_str(s) +
                                  " lies outside the polytope");
  }
  static const int64_t kCentral[4] = {1, 2, 4, 9};
  int64_t L = kCentral[p.dim];
  ConvexFlag flag = from_polytope(p);
  std::vector<std::vector<qvec>> on_face(p.faces.size());
  for (size_t k = 0; k < p.faces.size(); ++k) {
    const FaceDescriptor& fd = p.faces[k];
    for (const auto& s : points) {
      bool on = true;
      if (fd.supporting_functional) {
        const auto& [a, b] = *fd.supporting_functional;
        on = (dot(a, s) == b);
      }
      if (on) on_face[k].push_back(s);
    }
    std::sort(on_face[k].begin(), on_face[k].end());
    if (on_face[k].empty())
      flag.nodes[k].lattice = std::nullopt;
    else
      flag.nodes[k].lattice = minimal_affine_lattice(on_face[k]);
  }
  std::vector<FlagPoint> inputs;
  for (const auto& s : points)
    inputs.push_back({"f" + std::to_string(minimal_face_index(p, s)), s});
  CenterpointResult tr = centerpoint(flag, inputs, weights, L, budget);
  PolytopeCenterpointResult out;
  out.point = tr.point;
  out.face = std::stoull(tr.point.base.substr(1));
  out.face_points = on_face[out.face];
  out.face_lattice = *flag.nodes[out.face].lattice;
  auto mem = integer_affine_solve(out.face_points, tr.point.coords);
  if (!mem)
    throw std::logic_error(
        "flag breaks its own guarantee: the centerpoint has no integral "
        "certificate");
  out.membership = *mem;
  out.trace = std::move(tr);
  return out;
}

HollowFlagReport is_hollow_flag(const ConvexFlag& f, int64_t budget) {
  View v = make_view(f);
  HollowFlagReport rep;
  auto bad = [&rep](std::string msg) {
    rep.hollow = false;
    rep.violation = std::move(msg);
  };
  for (size_t i = 0; i < v.size(); ++i) {
    const FlagNode& nd = v.node(i);
    bool pointy = (nd.polytope.dim == 0);
    if (v.minimal[i] && !pointy) {
      bad("node " + nd.id + " is minimal but its polytope has positive dimension");
      return rep;
    }
    if (!v.minimal[i] && pointy) {
      bad("node " + nd.id + " has a point polytope but is not minimal");
      return rep;
    }
  }
  for (size_t i = 0; i < v.size(); ++i) {
    const FlagNode& nd = v.node(i);
    if (!nd.lattice || nd.polytope.dim == 0) continue;
    size_t top = nd.polytope.faces.size() - 1;
    for (const qvec& pt : lattice_points_in(nd.polytope, *nd.lattice, budget))
      if (minimal_face_index(nd.polytope, pt) == top) {
        bad("lattice point " + coords_str(pt) +
            " lies in the interior of the polytope at node " + nd.id);
        return rep;
      }
  }
  std::vector<size_t> gbase;
  std::vector<qvec> gcoords;
  for (size_t i = 0; i < v.size(); ++i)
    if (v.minimal[i]) {
      gbase.push_back(i);
      gcoords.push_back(v.node(i).polytope.vertices[0]);
    }
  for (size_t i = 0; i < v.size(); ++i) {
    const FlagNode& nd = v.node(i);
    for (size_t k = 0; k < nd.polytope.faces.size(); ++k) {
      const FaceDescriptor& fd = nd.polytope.faces[k];
      auto in_face = [&](const qvec& y) {
        if (!polytope_contains(nd.polytope, y)) return false;
        if (!fd.supporting_functional) return true;
        const auto& [a, b] = *fd.supporting_functional;
        return dot(a, y) == b;
      };
      std::vector<size_t> carriers;
      for (size_t g = 0; g < gbase.size(); ++g) {
        if (!v.leq[gbase[g]][i]) continue;
        if (in_face(v.image(gbase[g], i, gcoords[g]))) carriers.push_back(gbase[g]);
      }
      if (carriers.empty()) {
        bad("face " + std::to_string(k) + " of node " + nd.id +
            " contains no proper point");
        return rep;
      }
      size_t xg = v.sup_fold(carriers);
      for (const qvec& w : v.node(xg).polytope.vertices)
        if (!in_face(v.image(xg, i, w))) {
          bad("face " + std::to_string(k) + " of node " + nd.id +
              " is not good: the polytope at " + v.node(xg).id +
              " does not map into it");
          return rep;
        }
    }
  }
  return rep;
}

}  // namespace egz
