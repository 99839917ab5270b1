#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "egz/lattice.hpp"
#include "egz/linalg.hpp"
#include "egz/lp.hpp"
#include "egz/polytope.hpp"
#include "egz/rational.hpp"

using namespace egz;

namespace {

std::mt19937_64 rng(460229);

int64_t rnd(int64_t lo, int64_t hi) {
  return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
}

qvec qv(std::vector<int64_t> v) {
  qvec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

std::vector<qvec> qpts(std::vector<std::vector<int64_t>> pts) {
  std::vector<qvec> r;
  for (auto& p : pts) r.push_back(qv(p));
  return r;
}

// Membership in the hull of a point list by barycentric LP, bypassing the
// facet machinery entirely.
bool oracle_member(const std::vector<qvec>& pts, const qvec& x) {
  return convex_combination(pts, x, false).has_value();
}

// All faces of a 2D integer polygon as argmax vertex sets over every integer
// functional with entries up to the coordinate spread; edge normals of such a
// polygon cannot need larger entries, so the scan is complete.
std::set<std::vector<size_t>> oracle_faces_2d(const std::vector<qvec>& verts,
                                              int64_t spread) {
  std::set<std::vector<size_t>> out;
  std::vector<size_t> full(verts.size());
  for (size_t i = 0; i < full.size(); ++i) full[i] = i;
  out.insert(full);
  for (int64_t a = -spread; a <= spread; ++a)
    for (int64_t b = -spread; b <= spread; ++b) {
      if (a == 0 && b == 0) continue;
      rat best;
      bool first = true;
      for (const auto& v : verts) {
        rat val = rat(a) * v[0] + rat(b) * v[1];
        if (first || val > best) best = val, first = false;
      }
      std::vector<size_t> arg;
      for (size_t i = 0; i < verts.size(); ++i)
        if (rat(a) * verts[i][0] + rat(b) * verts[i][1] == best)
          arg.push_back(i);
      out.insert(arg);
    }
  return out;
}

// Is x an integer affine combination of pts with coefficients in
// [-bound, bound]? A bounded scan, used only where membership is expected or
// where non-membership was derived by hand (parity or pivot arguments).
bool oracle_affine_member(const std::vector<qvec>& pts, const qvec& x,
                          int64_t bound) {
  size_t k = pts.size();
  std::vector<int64_t> c(k, -bound);
  for (;;) {
    int64_t sum = 0;
    for (auto v : c) sum += v;
    if (sum == 1) {
      bool ok = true;
      for (size_t j = 0; j < x.size() && ok; ++j) {
        rat s = 0;
        for (size_t i = 0; i < k; ++i) s += rat(c[i]) * pts[i][j];
        ok = s == x[j];
      }
      if (ok) return true;
    }
    size_t i = 0;
    while (i < k && c[i] == bound) c[i++] = -bound;
    if (i == k) return false;
    ++c[i];
  }
}

// Nonnegative-integer n-fold representation by direct enumeration over all
// compositions, independent of the lattice and LP machinery.
bool oracle_cond2(const std::vector<qvec>& verts, const qvec& q, int64_t n) {
  size_t s = verts.size();
  std::vector<int64_t> alpha(s, 0);
  auto rec = [&](auto&& self, size_t i, int64_t left) -> bool {
    if (i + 1 == s) {
      alpha[i] = left;
      for (size_t j = 0; j < q.size(); ++j) {
        rat sum = 0;
        for (size_t v = 0; v < s; ++v) sum += rat(alpha[v]) * verts[v][j];
        if (sum != rat(n) * q[j]) return false;
      }
      return true;
    }
    for (int64_t v = 0; v <= left; ++v) {
      alpha[i] = v;
      if (self(self, i + 1, left - v)) return true;
    }
    return false;
  };
  return rec(rec, 0, n);
}

std::vector<qvec> apply_affine(const std::vector<qvec>& pts, const zmat& u,
                               const zvec& t) {
  std::vector<qvec> out;
  for (const auto& p : pts) {
    qvec img(t.size());
    for (size_t i = 0; i < t.size(); ++i) {
      img[i] = rat(t[i]);
      for (size_t j = 0; j < p.size(); ++j) img[i] += rat(u[i][j]) * p[j];
    }
    out.push_back(img);
  }
  return out;
}

// Random element of GL_d(Z) with translation, as a product of elementary
// row additions, swaps and sign flips.
void random_unimodular(size_t d, zmat& u, zvec& t) {
  u.assign(d, zvec(d, 0));
  for (size_t i = 0; i < d; ++i) u[i][i] = 1;
  for (int step = 0; step < 6; ++step) {
    size_t i = rnd(0, d - 1), j = rnd(0, d - 1);
    switch (rnd(0, 2)) {
      case 0:
        if (i != j) {
          int64_t c = rnd(-2, 2);
          for (size_t k = 0; k < d; ++k) u[i][k] += c * u[j][k];
        }
        break;
      case 1:
        std::swap(u[i], u[j]);
        break;
      default:
        for (size_t k = 0; k < d; ++k) u[i][k] = -u[i][k];
    }
  }
  t.assign(d, 0);
  for (size_t i = 0; i < d; ++i) t[i] = rnd(-3, 3);
}

std::set<qvec> point_set(const std::vector<std::pair<qvec, size_t>>& pts) {
  std::set<qvec> s;
  for (const auto& [p, f] : pts) s.insert(p);
  return s;
}

// (normal, offset) scaled to integer content 1 for order-free comparison.
std::pair<zvec, bigint> facet_canon(const std::pair<qvec, rat>& f) {
  qvec all = f.first;
  all.push_back(f.second);
  bigint d = common_denominator(all);
  zvec n(f.first.size());
  bigint g = 0;
  for (size_t i = 0; i < n.size(); ++i) {
    n[i] = num(f.first[i] * d);
    g = gcd(g, n[i]);
  }
  bigint b = num(f.second * d);
  g = gcd(g, b);
  if (g > 1) {
    for (auto& v : n) v /= g;
    b /= g;
  }
  return {n, b};
}

}  // namespace

TEST_CASE("hull drops interior and duplicate points") {
  PolytopeQ p = hull_and_faces(
      qpts({{0, 0}, {1, 0}, {0, 1}, {0, 0}, {1, 0}}));
  CHECK(p.vertices == qpts({{0, 0}, {0, 1}, {1, 0}}));
  CHECK(p.dim == 2);

  qvec mid = {rat(1, 2), rat(1, 2)};
  std::vector<qvec> with_mid = qpts({{0, 0}, {1, 0}, {0, 1}});
  with_mid.push_back(mid);
  PolytopeQ q = hull_and_faces(with_mid);
  CHECK(q.vertices == qpts({{0, 0}, {0, 1}, {1, 0}}));
  CHECK(q.faces.size() == 7);  // a triangle is a simplex: 2^3 - 1 faces
}

TEST_CASE("hull of a single point") {
  PolytopeQ p = hull_and_faces(qpts({{3, -2, 5}, {3, -2, 5}}));
  CHECK(p.dim == 0);
  CHECK(p.vertices.size() == 1);
  CHECK(p.faces.size() == 1);
  CHECK(!p.faces[0].supporting_functional.has_value());
  CHECK(polytope_contains(p, qv({3, -2, 5})));
  CHECK(!polytope_contains(p, qv({3, -2, 4})));
}

TEST_CASE("unit square face lattice") {
  PolytopeQ p = hull_and_faces(qpts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  REQUIRE(p.vertices == qpts({{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  CHECK(p.dim == 2);
  CHECK(p.facets.size() == 4);
  REQUIRE(p.faces.size() == 9);
  std::vector<std::vector<size_t>> expect = {
      {0}, {1}, {2}, {3}, {0, 1}, {0, 2}, {1, 3}, {2, 3}, {0, 1, 2, 3}};
  for (size_t i = 0; i < expect.size(); ++i) {
    CHECK(p.faces[i].vertex_subset == expect[i]);
    CHECK(p.faces[i].dim == (i < 4 ? 0 : i < 8 ? 1 : 2));
  }

  // supporting functionals are maximized exactly on their subset
  for (const auto& fd : p.faces) {
    if (!fd.supporting_functional) {
      CHECK(fd.vertex_subset.size() == 4);
      continue;
    }
    const auto& [a, b] = *fd.supporting_functional;
    for (size_t i = 0; i < p.vertices.size(); ++i) {
      bool on = std::binary_search(fd.vertex_subset.begin(),
                                   fd.vertex_subset.end(), i);
      CHECK(dot(a, p.vertices[i]) <= b);
      CHECK((dot(a, p.vertices[i]) == b) == on);
    }
  }
}

TEST_CASE("2d face lattices match the functional-scan oracle") {
  for (int inst = 0; inst < 40; ++inst) {
    std::set<qvec> gen;
    while (gen.size() < size_t(rnd(3, 7)))
      gen.insert(qv({rnd(-4, 4), rnd(-4, 4)}));
    std::vector<qvec> pts(gen.begin(), gen.end());
    PolytopeQ p = hull_and_faces(pts);
    if (p.dim != 2) continue;
    for (const auto& v : p.vertices) CHECK(oracle_member(pts, v));
    for (const auto& v : pts)
      CHECK(polytope_contains(p, v) == oracle_member(p.vertices, v));
    auto oracle = oracle_faces_2d(p.vertices, 16);
    std::set<std::vector<size_t>> got;
    for (const auto& fd : p.faces) got.insert(fd.vertex_subset);
    CHECK(got == oracle);
  }
}

TEST_CASE("random simplices have simplex face counts and are hollow") {
  for (int inst = 0; inst < 30; ++inst) {
    size_t d = rnd(1, 3);
    std::vector<qvec> pts;
    while (true) {
      pts.clear();
      std::set<qvec> gen;
      while (gen.size() < d + 1) {
        qvec v(d);
        for (size_t c = 0; c < d; ++c) v[c] = rnd(-4, 4);
        gen.insert(v);
      }
      pts.assign(gen.begin(), gen.end());
      qmat diffs;
      for (size_t i = 1; i < pts.size(); ++i)
        diffs.push_back(vsub(pts[i], pts[0]));
      if (qrank(diffs) == d) break;
    }
    PolytopeQ p = hull_and_faces(pts);
    CHECK(p.vertices.size() == d + 1);
    CHECK(p.faces.size() == (size_t(1) << (d + 1)) - 1);
    // in a simplex the unique barycentric coordinates of a non-vertex point
    // can never be nonnegative integers summing to one
    CHECK(is_hollow(p).hollow);
  }
}

TEST_CASE("integer point membership on frozen instances") {
  PolytopeQ tri33 = hull_and_faces(qpts({{0, 0}, {3, 0}, {0, 3}}));
  for (const auto& v : tri33.vertices)
    CHECK(is_integer_point(tri33, v).integer);
  // whole-triangle lattice is 3Zx3Z
  auto rep = is_integer_point(tri33, qv({1, 1}));
  CHECK(!rep.integer);
  CHECK(tri33.faces[rep.face].dim == 2);
  CHECK(oracle_affine_member(tri33.vertices, qv({3, 3}), 4));
  CHECK(!oracle_affine_member(tri33.vertices, qv({1, 1}), 4));

  PolytopeQ tri22 = hull_and_faces(qpts({{0, 0}, {2, 0}, {0, 2}}));
  // (1,1) sits on the edge conv{(2,0),(0,2)} whose lattice is (2,0)+k(-2,2)
  auto rep2 = is_integer_point(tri22, qv({1, 1}));
  CHECK(!rep2.integer);
  CHECK(tri22.faces[rep2.face].dim == 1);
  CHECK(tri22.faces[rep2.face].vertex_subset ==
        std::vector<size_t>{1, 2});
  CHECK(is_hollow(tri22).hollow);

  CHECK_THROWS_AS(is_integer_point(tri22, qv({5, 5})), std::invalid_argument);
}

TEST_CASE("integer point enumeration on frozen instances") {
  // unit square: every face lattice meets the square in vertices only
  PolytopeQ sq = hull_and_faces(qpts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  auto pts = integer_points(sq);
  REQUIRE(pts.size() == 4);
  for (const auto& [pt, f] : pts) CHECK(sq.faces[f].dim == 0);

  // doubled square: edge midpoints and the center are NOT integer points
  // (edge lattices step by 2, the full lattice is 2Zx2Z), so the doubled
  // square is hollow, exactly like the unit square it rescales
  PolytopeQ sq2 = hull_and_faces(qpts({{0, 0}, {2, 0}, {0, 2}, {2, 2}}));
  auto pts2 = integer_points(sq2);
  REQUIRE(pts2.size() == 4);
  CHECK(point_set(pts2) ==
        std::set<qvec>{qv({0, 0}), qv({0, 2}), qv({2, 0}), qv({2, 2})});
  CHECK(is_hollow(sq2).hollow);
  CHECK(!oracle_affine_member({qv({0, 0}), qv({2, 0})}, qv({1, 0}), 6));
  CHECK(!oracle_affine_member(sq2.vertices, qv({1, 1}), 6));

  // right triangle with the vertical edge from (1,0) to (1,2): that edge's
  // lattice is {(1, 2k)}, so (1,1) is not an integer point
  PolytopeQ tri = hull_and_faces(qpts({{0, 0}, {1, 0}, {1, 2}}));
  auto pts3 = integer_points(tri);
  REQUIRE(pts3.size() == 3);
  CHECK(is_hollow(tri).hollow);
  CHECK(!oracle_affine_member({qv({1, 0}), qv({1, 2})}, qv({1, 1}), 6));

  // quadrilateral whose vertex lattice is the even-parity sublattice;
  // (1,1) is interior with even parity, and no other candidate survives
  PolytopeQ quad = hull_and_faces(qpts({{0, 0}, {2, 0}, {3, 1}, {1, 3}}));
  auto pts4 = integer_points(quad);
  REQUIRE(pts4.size() == 5);
  auto rep = is_integer_point(quad, qv({1, 1}));
  CHECK(rep.integer);
  CHECK(quad.faces[rep.face].dim == 2);
  CHECK(oracle_affine_member(quad.vertices, qv({1, 1}), 6));
  auto hollow = is_hollow(quad);
  CHECK(!hollow.hollow);
  REQUIRE(hollow.witness.has_value());
  CHECK(hollow.witness->first == qv({1, 1}));
  // (2,2) lies on the edge conv{(3,1),(1,3)} but its lattice steps by
  // (-2,2), so it is excluded
  CHECK(!oracle_affine_member({qv({3, 1}), qv({1, 3})}, qv({2, 2}), 6));
}

TEST_CASE("hollow quadrilateral with a coarse top edge lattice") {
  // top edge runs from (-1,1) to (2,1); its lattice {(-1+3k, 1)} skips the
  // integer points (0,1) and (1,1) sitting on it
  PolytopeQ p =
      hull_and_faces(qpts({{0, 0}, {1, 0}, {-1, 1}, {2, 1}}));
  CHECK(p.vertices.size() == 4);
  CHECK(is_hollow(p).hollow);
  CHECK(integer_points(p).size() == 4);
  CHECK(!oracle_affine_member({qv({-1, 1}), qv({2, 1})}, qv({0, 1}), 6));
  CHECK(!oracle_affine_member({qv({-1, 1}), qv({2, 1})}, qv({1, 1}), 6));
  auto on_edge = is_integer_point(p, qv({1, 1}));
  CHECK(!on_edge.integer);
  CHECK(p.faces[on_edge.face].dim == 1);
}

TEST_CASE("unit cube is hollow with the full face count") {
  std::vector<qvec> corners;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) corners.push_back(qv({x, y, z}));
  PolytopeQ cube = hull_and_faces(corners);
  CHECK(cube.vertices.size() == 8);
  CHECK(cube.facets.size() == 6);
  CHECK(cube.faces.size() == 27);  // 8 + 12 + 6 + 1
  CHECK(is_hollow(cube).hollow);
  CHECK(integer_points(cube).size() == 8);
}

TEST_CASE("polygons with five or more vertices are never hollow") {
  int checked = 0;
  while (checked < 25) {
    std::set<qvec> gen;
    while (gen.size() < 8) gen.insert(qv({rnd(-4, 4), rnd(-4, 4)}));
    PolytopeQ p = hull_and_faces({gen.begin(), gen.end()});
    if (p.dim != 2 || p.vertices.size() < 5) continue;
    ++checked;
    auto rep = is_hollow(p);
    CHECK(!rep.hollow);
    REQUIRE(rep.witness.has_value());
    // the witness is a genuine non-vertex integer point
    auto ver = is_integer_point(p, rep.witness->first);
    CHECK(ver.integer);
    CHECK(p.faces[ver.face].dim > 0);
  }
}

TEST_CASE("integer point sets transform with unimodular affine maps") {
  std::vector<std::vector<qvec>> bases = {
      qpts({{0, 0}, {2, 0}, {3, 1}, {1, 3}}),
      qpts({{0, 0}, {1, 0}, {-1, 1}, {2, 1}}),
      qpts({{0, 0}, {3, 0}, {0, 3}}),
  };
  for (const auto& base : bases) {
    PolytopeQ p = hull_and_faces(base);
    auto pts = integer_points(p);
    for (int trial = 0; trial < 5; ++trial) {
      zmat u;
      zvec t;
      random_unimodular(2, u, t);
      PolytopeQ img = hull_and_faces(apply_affine(base, u, t));
      auto ipts = integer_points(img);
      REQUIRE(ipts.size() == pts.size());
      std::set<qvec> expect;
      for (const auto& [pt, f] : pts) {
        qvec moved = apply_affine({pt}, u, t)[0];
        expect.insert(moved);
      }
      CHECK(point_set(ipts) == expect);
      CHECK(is_hollow(img).hollow == is_hollow(p).hollow);
    }
  }
}

TEST_CASE("hollowness is invariant under positive rational scaling") {
  std::vector<std::vector<qvec>> bases = {
      qpts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}),
      qpts({{0, 0}, {2, 0}, {3, 1}, {1, 3}}),
      qpts({{0, 0}, {1, 0}, {-1, 1}, {2, 1}}),
      qpts({{0, 0}, {3, 0}, {0, 3}}),
  };
  std::vector<rat> scales = {rat(1, 2), rat(2), rat(3, 5), rat(7, 2)};
  for (const auto& base : bases) {
    bool expected = is_hollow(hull_and_faces(base)).hollow;
    for (const auto& s : scales) {
      std::vector<qvec> scaled;
      for (const auto& v : base) scaled.push_back(vscale(s, v));
      CHECK(is_hollow(hull_and_faces(scaled)).hollow == expected);
    }
  }
}

TEST_CASE("products multiply vertices and faces and preserve hollowness") {
  PolytopeQ seg = hull_and_faces({qvec{rat(0)}, qvec{rat(1)}});
  PolytopeQ sq = product(seg, seg);
  CHECK(sq.vertices == qpts({{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  CHECK(sq.dim == 2);
  CHECK(sq.faces.size() == 9);

  // the direct product construction agrees with a fresh hull
  PolytopeQ sq_hull = hull_and_faces(sq.vertices);
  REQUIRE(sq_hull.vertices == sq.vertices);
  std::set<std::pair<zvec, bigint>> fa, fb;
  for (const auto& f : sq.facets) fa.insert(facet_canon(f));
  for (const auto& f : sq_hull.facets) fb.insert(facet_canon(f));
  CHECK(fa == fb);
  for (size_t i = 0; i < sq.faces.size(); ++i) {
    CHECK(sq.faces[i].vertex_subset == sq_hull.faces[i].vertex_subset);
    CHECK(sq.faces[i].dim == sq_hull.faces[i].dim);
    CHECK(sq.face_lattices[i] == sq_hull.face_lattices[i]);
  }

  PolytopeQ four = product(sq, sq);
  CHECK(four.vertices.size() == 16);
  CHECK(four.dim == 4);
  CHECK(four.faces.size() == 81);
  CHECK(is_hollow(four).hollow);

  PolytopeQ tri = hull_and_faces(qpts({{0, 0}, {1, 0}, {0, 1}}));
  PolytopeQ prism = product(tri, seg);
  CHECK(prism.vertices.size() == 6);
  CHECK(prism.dim == 3);
  CHECK(prism.faces.size() == 21);  // 7 * 3
  CHECK(is_hollow(prism).hollow);

  // a non-hollow factor forces a non-hollow product
  PolytopeQ quad = hull_and_faces(qpts({{0, 0}, {2, 0}, {3, 1}, {1, 3}}));
  CHECK(!is_hollow(product(quad, seg)).hollow);
}

TEST_CASE("polygon classification") {
  CHECK(classify_hollow_polygon(hull_and_faces(qpts(
            {{0, 0}, {1, 0}, {0, 1}, {1, 1}}))) == PolygonClass::Trapezoid);
  CHECK(classify_hollow_polygon(hull_and_faces(qpts(
            {{0, 0}, {1, 0}, {0, 1}}))) == PolygonClass::Triangle);
  CHECK(classify_hollow_polygon(hull_and_faces(qpts(
            {{0, 0}, {1, 0}, {-1, 1}, {2, 1}}))) == PolygonClass::Trapezoid);
  CHECK(classify_hollow_polygon(hull_and_faces(qpts(
            {{0, 0}, {2, 0}, {3, 1}, {1, 3}}))) == PolygonClass::NotHollow);
  CHECK(classify_hollow_polygon(hull_and_faces(qpts(
            {{0, 0}, {2, 1}}))) == PolygonClass::Segment);
  CHECK(classify_hollow_polygon(hull_and_faces(qpts({{5, -3}}))) ==
        PolygonClass::Point);
  CHECK_THROWS_AS(
      classify_hollow_polygon(hull_and_faces(qpts({{0, 0, 0}, {1, 0, 0}}))),
      std::invalid_argument);
}

TEST_CASE("crit check on the frozen window instances") {
  // segment conv{0,2} with q=1: representable exactly at even n
  PolytopeQ seg = hull_and_faces({qvec{rat(0)}, qvec{rat(2)}});
  CritReport rep = crit_check(seg, qvec{rat(1)}, 10, 20);
  CHECK(!rep.cond1);
  CHECK(!rep.in_vertex_lattice);
  CHECK(!rep.construction.has_value());
  for (int64_t n = 10; n <= 20; ++n) {
    CHECK(rep.cond2.at(n) == (n % 2 == 0));
    CHECK(rep.cond2.at(n) == oracle_cond2(seg.vertices, qvec{rat(1)}, n));
  }
  // the even-n certificate is alpha = (n/2, n/2)
  CHECK(rep.coefficients.at(12) == zvec{bigint(6), bigint(6)});

  // q a vertex: representable at every n via alpha = (n, 0)
  PolytopeQ unit = hull_and_faces({qvec{rat(0)}, qvec{rat(1)}});
  CritReport rep2 = crit_check(unit, qvec{rat(0)}, 1, 8);
  CHECK(rep2.cond1);
  REQUIRE(rep2.construction.has_value());
  for (int64_t n = 1; n <= 8; ++n) {
    CHECK(rep2.cond2.at(n));
    CHECK(rep2.coefficients.at(n) == zvec{bigint(n), bigint(0)});
  }

  // scaled triangle with interior q=(1,1): the vertex lattice is 3Zx3Z, so
  // only multiples of 3 are representable
  PolytopeQ tri = hull_and_faces(qpts({{0, 0}, {3, 0}, {0, 3}}));
  CritReport rep3 = crit_check(tri, qv({1, 1}), 50, 60);
  CHECK(!rep3.cond1);
  for (int64_t n = 50; n <= 60; ++n) CHECK(rep3.cond2.at(n) == (n % 3 == 0));

  CHECK_THROWS_AS(crit_check(tri, qv({7, 7}), 1, 3), std::invalid_argument);
}

TEST_CASE("crit certificates verify and match the naive oracle") {
  for (int inst = 0; inst < 25; ++inst) {
    std::set<qvec> gen;
    while (gen.size() < 3) gen.insert(qv({rnd(-3, 3), rnd(-3, 3)}));
    std::vector<qvec> pts(gen.begin(), gen.end());
    PolytopeQ p = hull_and_faces(pts);
    // q: a vertex, an edge midpoint, or a small-denominator inner point
    qvec q;
    switch (rnd(0, 2)) {
      case 0:
        q = p.vertices[rnd(0, p.vertices.size() - 1)];
        break;
      case 1: {
        const qvec& a = p.vertices[0];
        const qvec& b = p.vertices[p.vertices.size() - 1];
        q = vscale(rat(1, 2), vadd(a, b));
        break;
      }
      default: {
        q = qvec(p.ambient_dim, 0);
        for (const auto& v : p.vertices) q = vadd(q, v);
        q = vscale(rat(1, int64_t(p.vertices.size())), q);
      }
    }
    CritReport rep = crit_check(p, q, 1, 6);
    for (int64_t n = 1; n <= 6; ++n) {
      CHECK(rep.cond2.at(n) == oracle_cond2(p.vertices, q, n));
      if (!rep.cond2.at(n)) continue;
      const zvec& alpha = rep.coefficients.at(n);
      bigint total = 0;
      qvec sum(p.ambient_dim, 0);
      for (size_t i = 0; i < alpha.size(); ++i) {
        CHECK(alpha[i] >= 0);
        total += alpha[i];
        sum = vadd(sum, vscale(rat(alpha[i]), p.vertices[i]));
      }
      CHECK(total == n);
      CHECK(sum == vscale(rat(n), q));
    }
    // above the construction threshold representability never lapses
    if (rep.cond1) {
      int64_t n0 = int64_t(rep.construction->n0);
      CritReport far = crit_check(p, q, n0 + 1, n0 + 10);
      for (auto& [n, ok] : far.cond2) CHECK(ok);
    }
  }
}

TEST_CASE("budget guards fire") {
  PolytopeQ big = hull_and_faces(qpts({{0, 0}, {60, 0}, {0, 60}, {60, 60}}));
  CHECK_THROWS_AS(integer_points(big, 20), BudgetError);
  std::vector<qvec> many;
  for (int i = 0; i < 40; ++i) many.push_back(qv({i, i * i}));
  CHECK_THROWS_AS(hull_and_faces(many, 100), BudgetError);
}
