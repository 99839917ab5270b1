#include "egz/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "egz/lp.hpp"

namespace egz {

namespace {

constexpr int64_t kMaxHullDim = 6;

std::vector<qvec> dedup_points(std::vector<qvec> pts) {
  if (pts.empty()) throw std::invalid_argument("hull needs at least one point");
  size_t d = pts[0].size();
  for (const auto& p : pts)
    if (p.size() != d) throw std::invalid_argument("mixed point dimensions");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Independent directions spanning the affine hull of pts relative to pts[0].
std::vector<qvec> affine_basis(const std::vector<qvec>& pts) {
  std::vector<qvec> basis;
  for (size_t i = 1; i < pts.size(); ++i) {
    qvec dir = vsub(pts[i], pts[0]);
    if (is_zero(dir)) continue;
    std::vector<qvec> trial = basis;
    trial.push_back(dir);
    if (qrank(trial) > basis.size()) basis.push_back(dir);
  }
  return basis;
}

// Coordinates y with origin + sum y_j basis_j = x, or nullopt when x lies
// outside the affine hull.
std::optional<qvec> intrinsic_coords(const qvec& origin,
                                     const std::vector<qvec>& basis,
                                     const qvec& x) {
  qvec rhs = vsub(x, origin);
  if (basis.empty()) {
    if (is_zero(rhs)) return qvec{};
    return std::nullopt;
  }
  size_t d = origin.size();
  qmat cols(d, qvec(basis.size(), 0));
  for (size_t j = 0; j < basis.size(); ++j)
    for (size_t i = 0; i < d; ++i) cols[i][j] = basis[j][i];
  return qsolve(cols, rhs);
}

struct IntFacet {
  zvec normal;      // intrinsic, integer, content 1
  bigint offset;
  std::vector<size_t> tight;  // point indices with normal.y == offset
};

// Scale (n, b) to integers with content 1, keeping orientation.
std::pair<zvec, bigint> facet_key(const qvec& n, const rat& b) {
  qvec all = n;
  all.push_back(b);
  bigint den = common_denominator(all);
  zvec zn(n.size());
  bigint g = 0;
  for (size_t i = 0; i < n.size(); ++i) {
    zn[i] = num(n[i] * den);
    g = gcd(g, zn[i]);
  }
  bigint zb = num(b * den);
  g = gcd(g, zb);
  if (g > 1) {
    for (auto& v : zn) v /= g;
    zb /= g;
  }
  return {zn, zb};
}

rat zdot(const zvec& a, const qvec& y) {
  rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += rat(a[i]) * y[i];
  return s;
}

// All facet inequalities of the full-dimensional hull of ys in Q^k, found by
// scanning k-subsets that span a hyperplane with all points on one side.
std::vector<IntFacet> enumerate_facets(const std::vector<std::vector<rat>>& ys,
                                       size_t k, BudgetMeter& meter) {
  std::map<std::pair<zvec, bigint>, std::vector<size_t>> found;
  size_t m = ys.size();
  std::vector<size_t> pick(k);
  auto consider = [&]() {
    meter.spend();
    qvec normal;
    if (k == 1) {
      normal = {rat(1)};
    } else {
      qmat dirs(k - 1);
      for (size_t j = 1; j < k; ++j) {
        dirs[j - 1] = qvec(k);
        for (size_t c = 0; c < k; ++c)
          dirs[j - 1][c] = ys[pick[j]][c] - ys[pick[0]][c];
      }
      qmat ker = qkernel(dirs);
      if (ker.size() != 1) return;  // subset does not span a hyperplane
      normal = ker[0];
    }
    rat b = 0;
    for (size_t c = 0; c < k; ++c) b += normal[c] * ys[pick[0]][c];
    bool any_above = false, any_below = false;
    for (size_t i = 0; i < m && !(any_above && any_below); ++i) {
      rat v = 0;
      for (size_t c = 0; c < k; ++c) v += normal[c] * ys[i][c];
      if (v > b) any_above = true;
      if (v < b) any_below = true;
    }
    if (any_above && any_below) return;
    if (any_above) {
      for (auto& c : normal) c = -c;
      b = -b;
    }
    auto key = facet_key(normal, b);
    if (found.count(key)) return;
    std::vector<size_t> tight;
    for (size_t i = 0; i < m; ++i)
      if (zdot(key.first, ys[i]) == rat(key.second)) tight.push_back(i);
    found.emplace(std::move(key), std::move(tight));
  };
  // lexicographic k-subset scan
  auto rec = [&](auto&& self, size_t pos, size_t next) -> void {
    if (pos == k) {
      consider();
      return;
    }
    for (size_t i = next; i + (k - 1 - pos) < m; ++i) {
      pick[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  std::vector<IntFacet> out;
  for (auto& [key, tight] : found)
    out.push_back({key.first, key.second, std::move(tight)});
  return out;
}

// Rank of the set of facet normals tight at a point; k means vertex.
size_t tight_rank(const std::vector<IntFacet>& facets, size_t point,
                  size_t k) {
  qmat rows;
  for (const auto& f : facets)
    if (std::binary_search(f.tight.begin(), f.tight.end(), point)) {
      qvec r(k);
      for (size_t c = 0; c < k; ++c) r[c] = rat(f.normal[c]);
      rows.push_back(std::move(r));
    }
  if (rows.empty()) return 0;
  return qrank(rows);
}

int64_t face_dim(const PolytopeQ& p, const std::vector<size_t>& subset) {
  qmat diffs;
  for (size_t i = 1; i < subset.size(); ++i)
    diffs.push_back(vsub(p.vertices[subset[i]], p.vertices[subset[0]]));
  if (diffs.empty()) return 0;
  return static_cast<int64_t>(qrank(diffs));
}

// Ambient functional equal to the intrinsic normal.y + const on the hull.
std::pair<qvec, rat> lift_functional(const PolytopeQ& p, const zvec& normal,
                                     const bigint& offset) {
  qmat rows;
  for (const auto& b : p.hull_basis) rows.push_back(b);
  qvec n(normal.size());
  for (size_t i = 0; i < normal.size(); ++i) n[i] = rat(normal[i]);
  std::optional<qvec> a;
  if (rows.empty()) {
    a = qvec(p.ambient_dim, 0);
  } else {
    a = qsolve(rows, n);
  }
  if (!a) throw std::logic_error("facet lift failed");
  rat b = rat(offset) + dot(*a, p.hull_origin);
  return {*a, b};
}

struct HullCore {
  PolytopeQ poly;
  bool all_extreme = true;
  std::vector<qvec> extreme;
};

HullCore hull_pass(const std::vector<qvec>& pts, BudgetMeter& meter) {
  HullCore out;
  PolytopeQ& p = out.poly;
  p.ambient_dim = pts[0].size();
  p.hull_origin = pts[0];
  p.hull_basis = affine_basis(pts);
  p.dim = static_cast<int64_t>(p.hull_basis.size());
  if (p.dim > kMaxHullDim)
    throw BudgetError("hull dimension exceeds the supported cap");
  size_t k = p.hull_basis.size();

  if (k == 0) {
    p.vertices = {pts[0]};
    out.extreme = p.vertices;
    FaceDescriptor whole;
    whole.vertex_subset = {0};
    whole.dim = 0;
    p.faces.push_back(whole);
    p.face_lattices.push_back(minimal_affine_lattice(p.vertices));
    return out;
  }

  std::vector<std::vector<rat>> ys(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    auto y = intrinsic_coords(p.hull_origin, p.hull_basis, pts[i]);
    if (!y) throw std::logic_error("point outside its own affine hull");
    ys[i] = *y;
  }

  std::vector<IntFacet> facets = enumerate_facets(ys, k, meter);

  std::vector<bool> is_vertex(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    is_vertex[i] = tight_rank(facets, i, k) == k;
    if (!is_vertex[i]) out.all_extreme = false;
  }
  for (size_t i = 0; i < pts.size(); ++i)
    if (is_vertex[i]) out.extreme.push_back(pts[i]);
  if (!out.all_extreme) return out;

  p.vertices = out.extreme;

  // Faces: facet vertex sets closed under intersection, plus the whole.
  std::set<std::vector<size_t>> sets;
  std::vector<size_t> full(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) full[i] = i;
  sets.insert(full);
  for (const auto& f : facets) sets.insert(f.tight);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<size_t>> cur(sets.begin(), sets.end());
    for (size_t a = 0; a < cur.size(); ++a)
      for (size_t b = a + 1; b < cur.size(); ++b) {
        std::vector<size_t> inter;
        std::set_intersection(cur[a].begin(), cur[a].end(), cur[b].begin(),
                              cur[b].end(), std::back_inserter(inter));
        if (inter.empty()) continue;
        if (sets.insert(std::move(inter)).second) grew = true;
      }
  }

  for (const auto& f : facets)
    p.facets.push_back(lift_functional(p, f.normal, f.offset));

  for (const auto& subset : sets) {
    FaceDescriptor fd;
    fd.vertex_subset = subset;
    fd.dim = face_dim(p, subset);
    if (subset.size() != pts.size()) {
      zvec nsum(k, 0);
      bigint osum = 0;
      for (const auto& f : facets) {
        if (std::includes(f.tight.begin(), f.tight.end(), subset.begin(),
                          subset.end())) {
          for (size_t c = 0; c < k; ++c) nsum[c] += f.normal[c];
          osum += f.offset;
        }
      }
      fd.supporting_functional = lift_functional(p, nsum, osum);
    }
    p.faces.push_back(std::move(fd));
  }
  std::sort(p.faces.begin(), p.faces.end(),
            [](const FaceDescriptor& a, const FaceDescriptor& b) {
              if (a.dim != b.dim) return a.dim < b.dim;
              return a.vertex_subset < b.vertex_subset;
            });
  for (const auto& fd : p.faces) {
    std::vector<qvec> fverts;
    for (size_t i : fd.vertex_subset) fverts.push_back(p.vertices[i]);
    p.face_lattices.push_back(minimal_affine_lattice(fverts));
  }
  return out;
}

size_t whole_face_index(const PolytopeQ& p) {
  // faces are sorted by dim, so the whole polytope is the last entry
  return p.faces.size() - 1;
}

size_t face_index_of_subset(const PolytopeQ& p,
                            const std::vector<size_t>& subset) {
  for (size_t i = 0; i < p.faces.size(); ++i)
    if (p.faces[i].vertex_subset == subset) return i;
  throw std::logic_error("face closure is missing an intersection");
}

}  // namespace

PolytopeQ hull_and_faces(const std::vector<qvec>& points, int64_t budget) {
  BudgetMeter meter(budget, "hull_and_faces");
  std::vector<qvec> pts = dedup_points(points);
  while (true) {
    HullCore core = hull_pass(pts, meter);
    if (core.all_extreme) return std::move(core.poly);
    pts = std::move(core.extreme);
  }
}

bool polytope_contains(const PolytopeQ& p, const qvec& x) {
  if (x.size() != p.ambient_dim)
    throw std::invalid_argument("point dimension mismatch");
  if (!intrinsic_coords(p.hull_origin, p.hull_basis, x)) return false;
  for (const auto& [a, b] : p.facets)
    if (dot(a, x) > b) return false;
  return true;
}

size_t minimal_face_index(const PolytopeQ& p, const qvec& x) {
  if (!polytope_contains(p, x))
    throw std::invalid_argument("point lies outside the polytope");
  std::vector<size_t> subset(p.vertices.size());
  for (size_t i = 0; i < subset.size(); ++i) subset[i] = i;
  for (const auto& [a, b] : p.facets) {
    if (dot(a, x) != b) continue;
    std::vector<size_t> tight;
    for (size_t i : subset)
      if (dot(a, p.vertices[i]) == b) tight.push_back(i);
    subset = std::move(tight);
  }
  return face_index_of_subset(p, subset);
}

IntegerPointReport is_integer_point(const PolytopeQ& p, const qvec& x) {
  IntegerPointReport rep;
  rep.face = minimal_face_index(p, x);
  rep.lattice = p.face_lattices[rep.face];
  rep.integer = lattice_member(rep.lattice, x);
  return rep;
}

std::vector<std::pair<qvec, size_t>> integer_points(const PolytopeQ& p,
                                                    int64_t budget) {
  BudgetMeter meter(budget, "integer_points");
  std::vector<std::pair<qvec, size_t>> out;
  for (size_t fi = 0; fi < p.faces.size(); ++fi) {
    const FaceDescriptor& fd = p.faces[fi];
    const AffineLattice& lat = p.face_lattices[fi];
    qvec lo(p.ambient_dim), hi(p.ambient_dim);
    for (size_t c = 0; c < p.ambient_dim; ++c) {
      lo[c] = hi[c] = p.vertices[fd.vertex_subset[0]][c];
      for (size_t i : fd.vertex_subset) {
        lo[c] = std::min(lo[c], p.vertices[i][c]);
        hi[c] = std::max(hi[c], p.vertices[i][c]);
      }
    }
    std::vector<size_t> pivot(lat.rank());
    for (size_t r = 0; r < lat.rank(); ++r) {
      size_t c = 0;
      while (lat.basis[r][c] == 0) ++c;
      pivot[r] = c;
    }
    qvec cur = lat.origin;
    auto rec = [&](auto&& self, size_t r) -> void {
      if (r == lat.rank()) {
        meter.spend();
        for (size_t c = 0; c < p.ambient_dim; ++c)
          if (cur[c] < lo[c] || cur[c] > hi[c]) return;
        if (!polytope_contains(p, cur)) return;
        if (minimal_face_index(p, cur) != fi) return;
        out.emplace_back(cur, fi);
        return;
      }
      size_t c = pivot[r];
      const rat& piv = lat.basis[r][c];
      bigint a_lo = rat_ceil((lo[c] - cur[c]) / piv);
      bigint a_hi = rat_floor((hi[c] - cur[c]) / piv);
      for (bigint a = a_lo; a <= a_hi; ++a) {
        meter.spend();
        qvec saved = cur;
        for (size_t j = 0; j < p.ambient_dim; ++j)
          cur[j] += rat(a) * lat.basis[r][j];
        self(self, r + 1);
        cur = std::move(saved);
      }
    };
    rec(rec, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<qvec> lattice_points_in(const PolytopeQ& p,
                                    const AffineLattice& lat, int64_t budget) {
  if (lat.ambient_dim != p.ambient_dim)
    throw std::invalid_argument("lattice ambient dimension mismatch");
  BudgetMeter meter(budget, "lattice_points_in");
  qvec lo(p.ambient_dim), hi(p.ambient_dim);
  for (size_t c = 0; c < p.ambient_dim; ++c) {
    lo[c] = hi[c] = p.vertices[0][c];
    for (const auto& v : p.vertices) {
      lo[c] = std::min(lo[c], v[c]);
      hi[c] = std::max(hi[c], v[c]);
    }
  }
  std::vector<size_t> pivot(lat.rank());
  for (size_t r = 0; r < lat.rank(); ++r) {
    size_t c = 0;
    while (lat.basis[r][c] == 0) ++c;
    pivot[r] = c;
  }
  std::vector<qvec> out;
  qvec cur = lat.origin;
  auto rec = [&](auto&& self, size_t r) -> void {
    if (r == lat.rank()) {
      meter.spend();
      for (size_t c = 0; c < p.ambient_dim; ++c)
        if (cur[c] < lo[c] || cur[c] > hi[c]) return;
      if (polytope_contains(p, cur)) out.push_back(cur);
      return;
    }
    size_t c = pivot[r];
    const rat& piv = lat.basis[r][c];
    bigint a_lo = rat_ceil((lo[c] - cur[c]) / piv);
    bigint a_hi = rat_floor((hi[c] - cur[c]) / piv);
    for (bigint a = a_lo; a <= a_hi; ++a) {
      meter.spend();
      qvec saved = cur;
      for (size_t j = 0; j < p.ambient_dim; ++j)
        cur[j] += rat(a) * lat.basis[r][j];
      self(self, r + 1);
      cur = std::move(saved);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

HollownessReport is_hollow(const PolytopeQ& p, int64_t budget) {
  HollownessReport rep;
  for (const auto& [pt, face] : integer_points(p, budget)) {
    if (p.faces[face].dim == 0) continue;  // a vertex
    rep.hollow = false;
    rep.witness = {pt, face};
    break;  // points are sorted, first counterexample is the least
  }
  return rep;
}

PolytopeQ product(const PolytopeQ& a, const PolytopeQ& b) {
  PolytopeQ p;
  p.ambient_dim = a.ambient_dim + b.ambient_dim;
  p.dim = a.dim + b.dim;
  size_t nb = b.vertices.size();
  auto concat = [&](const qvec& u, const qvec& v) {
    qvec w = u;
    w.insert(w.end(), v.begin(), v.end());
    return w;
  };
  for (const auto& u : a.vertices)
    for (const auto& v : b.vertices) p.vertices.push_back(concat(u, v));
  p.hull_origin = concat(a.hull_origin, b.hull_origin);
  for (const auto& d : a.hull_basis)
    p.hull_basis.push_back(concat(d, qvec(b.ambient_dim, 0)));
  for (const auto& d : b.hull_basis)
    p.hull_basis.push_back(concat(qvec(a.ambient_dim, 0), d));
  for (const auto& [n, off] : a.facets)
    p.facets.emplace_back(concat(n, qvec(b.ambient_dim, 0)), off);
  for (const auto& [n, off] : b.facets)
    p.facets.emplace_back(concat(qvec(a.ambient_dim, 0), n), off);

  std::vector<std::pair<FaceDescriptor, AffineLattice>> faces;
  for (size_t ia = 0; ia < a.faces.size(); ++ia)
    for (size_t ib = 0; ib < b.faces.size(); ++ib) {
      const FaceDescriptor& fa = a.faces[ia];
      const FaceDescriptor& fb = b.faces[ib];
      FaceDescriptor fd;
      fd.dim = fa.dim + fb.dim;
      for (size_t i : fa.vertex_subset)
        for (size_t j : fb.vertex_subset) fd.vertex_subset.push_back(i * nb + j);
      if (fa.supporting_functional || fb.supporting_functional) {
        qvec na(a.ambient_dim, 0), nb2(b.ambient_dim, 0);
        rat off = 0;
        if (fa.supporting_functional) {
          na = fa.supporting_functional->first;
          off += fa.supporting_functional->second;
        }
        if (fb.supporting_functional) {
          nb2 = fb.supporting_functional->first;
          off += fb.supporting_functional->second;
        }
        fd.supporting_functional = {concat(na, nb2), off};
      }
      const AffineLattice& la = a.face_lattices[ia];
      const AffineLattice& lb = b.face_lattices[ib];
      AffineLattice lat;
      lat.ambient_dim = p.ambient_dim;
      lat.origin = concat(la.origin, lb.origin);
      for (const auto& r : la.basis)
        lat.basis.push_back(concat(r, qvec(b.ambient_dim, 0)));
      for (const auto& r : lb.basis)
        lat.basis.push_back(concat(qvec(a.ambient_dim, 0), r));
      canonicalize(lat);
      faces.emplace_back(std::move(fd), std::move(lat));
    }
  std::sort(faces.begin(), faces.end(), [](const auto& x, const auto& y) {
    if (x.first.dim != y.first.dim) return x.first.dim < y.first.dim;
    return x.first.vertex_subset < y.first.vertex_subset;
  });
  for (auto& [fd, lat] : faces) {
    p.faces.push_back(std::move(fd));
    p.face_lattices.push_back(std::move(lat));
  }
  return p;
}

PolygonClass classify_hollow_polygon(const PolytopeQ& p, int64_t budget) {
  if (p.ambient_dim != 2)
    throw std::invalid_argument("classification expects ambient dimension 2");
  if (!is_hollow(p, budget).hollow) return PolygonClass::NotHollow;
  if (p.dim == 0) return PolygonClass::Point;
  if (p.dim == 1) return PolygonClass::Segment;
  size_t nv = p.vertices.size();
  if (nv == 3) return PolygonClass::Triangle;
  if (nv > 4)
    throw std::logic_error("hollow polygon with more than 4 vertices");
  std::vector<qvec> dirs;
  for (const auto& fd : p.faces) {
    if (fd.dim != 1) continue;
    dirs.push_back(vsub(p.vertices[fd.vertex_subset[1]],
                        p.vertices[fd.vertex_subset[0]]));
  }
  for (size_t i = 0; i < dirs.size(); ++i)
    for (size_t j = i + 1; j < dirs.size(); ++j)
      if (dirs[i][0] * dirs[j][1] == dirs[i][1] * dirs[j][0])
        return PolygonClass::Trapezoid;
  throw std::logic_error("hollow quadrilateral without a parallel edge pair");
}

namespace {

// Integer matrix of the system sum alpha_i (v_i, 1) = n (q, 1) after
// clearing denominators row by row: a has d+1 rows over the face's vertices,
// and the right-hand side for a given n is n * w.
void build_crit_system(const std::vector<qvec>& fverts, const qvec& q,
                       zmat& a, zvec& w) {
  size_t d = q.size(), s = fverts.size();
  a.assign(d + 1, zvec(s, 0));
  w.assign(d + 1, 0);
  for (size_t row = 0; row < d; ++row) {
    qvec vals(s + 1);
    for (size_t i = 0; i < s; ++i) vals[i] = fverts[i][row];
    vals[s] = q[row];
    bigint den = common_denominator(vals);
    for (size_t i = 0; i < s; ++i) a[row][i] = num(vals[i] * den);
    w[row] = num(q[row] * den);
  }
  for (size_t i = 0; i < s; ++i) a[d][i] = 1;
  w[d] = 1;
}

zvec scaled(const zvec& v, int64_t n) {
  zvec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] * n;
  return r;
}

bool verify_crit(const zmat& a, const zvec& w, int64_t n, const zvec& alpha) {
  for (const auto& x : alpha)
    if (x < 0) return false;
  for (size_t row = 0; row < a.size(); ++row) {
    bigint s = 0;
    for (size_t i = 0; i < alpha.size(); ++i) s += a[row][i] * alpha[i];
    if (s != w[row] * n) return false;
  }
  return true;
}

// Bound R_i on how far, per coordinate, a kernel-coset point rounded to
// pivot-box position can sit from the rational ray point it was rounded
// toward. Derived purely from the kernel basis.
qvec rounding_radius(const zmat& kernel, size_t s) {
  std::vector<size_t> pivot(kernel.size());
  std::vector<bigint> pv(kernel.size());
  for (size_t r = 0; r < kernel.size(); ++r) {
    size_t c = 0;
    while (kernel[r][c] == 0) ++c;
    pivot[r] = c;
    pv[r] = kernel[r][c];
  }
  // |t_r| bounds from triangular back-substitution with pivot coordinates
  // confined to [0, pivot).
  std::vector<rat> tb(kernel.size(), 0);
  for (size_t r = 0; r < kernel.size(); ++r) {
    rat acc = rat(pv[r]);  // pivot coordinate deviation is below pv[r]
    for (size_t sdx = 0; sdx < r; ++sdx) {
      bigint entry = kernel[sdx][pivot[r]];
      if (entry < 0) entry = -entry;
      acc += tb[sdx] * rat(entry);
    }
    tb[r] = acc / rat(pv[r]);
  }
  qvec radius(s, 0);
  for (size_t i = 0; i < s; ++i)
    for (size_t r = 0; r < kernel.size(); ++r) {
      bigint entry = kernel[r][i];
      if (entry < 0) entry = -entry;
      radius[i] += tb[r] * rat(entry);
    }
  return radius;
}

// Move delta along the kernel lattice so each pivot coordinate lands in
// [target, target + pivot); keeps membership in the solution coset.
zvec round_to_ray(zvec delta, const zmat& kernel, const qvec& target) {
  for (size_t r = 0; r < kernel.size(); ++r) {
    size_t c = 0;
    while (kernel[r][c] == 0) ++c;
    rat gap = (rat(delta[c]) - target[c]) / rat(kernel[r][c]);
    bigint t = rat_floor(gap);
    if (t == 0) continue;
    for (size_t i = 0; i < delta.size(); ++i) delta[i] -= t * kernel[r][i];
  }
  return delta;
}

// Exhaustive search for a nonnegative integer solution with rational
// feasibility pruning; only used below the rounding threshold.
bool crit_dfs(const zmat& a, const zvec& target, size_t idx, zvec& alpha,
              BudgetMeter& meter) {
  meter.spend();
  size_t s = a[0].size();
  if (idx == s) {
    for (const auto& t : target)
      if (t != 0) return false;
    return true;
  }
  {
    std::vector<LinConstraint> cons;
    size_t rest = s - idx;
    for (size_t row = 0; row < a.size(); ++row) {
      LinConstraint lc;
      lc.rel = Rel::EQ;
      lc.a.assign(rest, 0);
      for (size_t i = idx; i < s; ++i) lc.a[i - idx] = rat(a[row][i]);
      lc.b = rat(target[row]);
      cons.push_back(std::move(lc));
    }
    for (size_t i = 0; i < rest; ++i) {
      LinConstraint lc;
      lc.rel = Rel::LE;
      lc.a.assign(rest, 0);
      lc.a[i] = -1;
      lc.b = 0;
      cons.push_back(std::move(lc));
    }
    if (!rational_interior_point(cons, rest)) return false;
  }
  // remaining count bound from the sum row (last row of a, all ones)
  bigint ub = target[a.size() - 1];
  if (ub < 0) return false;
  for (bigint v = 0; v <= ub; ++v) {
    alpha[idx] = v;
    zvec rest(target.size());
    for (size_t row = 0; row < target.size(); ++row)
      rest[row] = target[row] - a[row][idx] * v;
    if (crit_dfs(a, rest, idx + 1, alpha, meter)) return true;
  }
  return false;
}

}  // namespace

CritReport crit_check(const PolytopeQ& p, const qvec& q, int64_t n_lo,
                      int64_t n_hi, int64_t budget) {
  if (n_lo > n_hi) throw std::invalid_argument("empty n window");
  BudgetMeter meter(budget, "crit_check");
  CritReport rep;
  rep.face = minimal_face_index(p, q);  // throws when q is outside
  rep.cond1 = lattice_member(p.face_lattices[rep.face], q);
  rep.in_vertex_lattice =
      lattice_member(p.face_lattices[whole_face_index(p)], q);

  const FaceDescriptor& fd = p.faces[rep.face];
  std::vector<qvec> fverts;
  for (size_t i : fd.vertex_subset) fverts.push_back(p.vertices[i]);
  size_t s = fverts.size();

  zmat a;
  zvec w;
  build_crit_system(fverts, q, a, w);
  zmat kernel;
  solve_integer(a, zvec(a.size(), 0), &kernel);

  // A positive rational combination exists because q lies in the relative
  // interior of its minimal face.
  std::optional<qvec> beta = convex_combination(fverts, q, true);
  if (!beta)
    throw std::logic_error("no interior combination on the minimal face");

  qvec radius = rounding_radius(kernel, s);
  bigint threshold = 0;
  for (size_t i = 0; i < s; ++i) {
    bigint t = rat_floor(radius[i] / (*beta)[i]) + 1;
    threshold = std::max(threshold, t);
  }
  rep.threshold = threshold;

  if (rep.cond1) {
    CritConstruction con;
    std::optional<zvec> c = integer_affine_solve(fverts, q);
    if (!c) throw std::logic_error("integer combination missing under cond1");
    con.c = *c;
    con.m0 = common_denominator(*beta);
    con.b.resize(s);
    for (size_t i = 0; i < s; ++i) {
      rat bi = (*beta)[i] * rat(con.m0);
      con.b[i] = num(bi);
      if (den(bi) != 1 || con.b[i] <= 0)
        throw std::logic_error("cleared combination not a positive integer");
    }
    con.k_bound = 0;
    for (const auto& ci : con.c) {
      bigint m = ci < 0 ? bigint(-ci) : ci;
      con.k_bound = std::max(con.k_bound, m);
    }
    con.n0 = 2 * con.k_bound * con.m0 * con.m0;
    rep.construction = std::move(con);
  }

  auto embed = [&](const zvec& alpha) {
    zvec full(p.vertices.size(), 0);
    for (size_t i = 0; i < s; ++i) full[fd.vertex_subset[i]] = alpha[i];
    return full;
  };

  for (int64_t n = n_lo; n <= n_hi; ++n) {
    meter.spend();
    std::optional<zvec> delta = solve_integer(a, scaled(w, n), nullptr);
    if (!delta) {
      rep.cond2[n] = false;
      continue;
    }
    zvec alpha;
    bool ok = false;
    if (rep.construction && bigint(n) > rep.construction->n0) {
      const CritConstruction& con = *rep.construction;
      bigint k = floor_div(bigint(n), con.m0);
      bigint r = bigint(n) - k * con.m0;
      alpha.resize(s);
      for (size_t i = 0; i < s; ++i) alpha[i] = k * con.b[i] + r * con.c[i];
      ok = true;
    } else if (kernel.empty()) {
      ok = true;
      for (const auto& x : *delta)
        if (x < 0) ok = false;
      if (ok) alpha = *delta;
    } else if (bigint(n) > threshold) {
      qvec ray(s);
      for (size_t i = 0; i < s; ++i) ray[i] = rat(n) * (*beta)[i];
      alpha = round_to_ray(*delta, kernel, ray);
      ok = true;
    } else {
      alpha.assign(s, 0);
      ok = crit_dfs(a, scaled(w, n), 0, alpha, meter);
    }
    if (ok && !verify_crit(a, w, n, alpha))
      throw std::logic_error("crit certificate failed verification");
    rep.cond2[n] = ok;
    if (ok) rep.coefficients[n] = embed(alpha);
  }
  return rep;
}

}  // namespace egz
