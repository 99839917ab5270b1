#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "egz/fp.hpp"
#include "egz/zerosum.hpp"

using namespace egz;

namespace {

std::mt19937_64 rng(771231);

int64_t rnd(int64_t lo, int64_t hi) {
  return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
}

// oracle: plain recursion over per-element counts, no DP
bool naive_has_zero_sum(const FpMultiset& x, int64_t n) {
  fvec zero(x.dim, 0);
  auto rec = [&](auto&& self, size_t i, int64_t left, fvec sum) -> bool {
    if (left == 0)
      return std::all_of(sum.begin(), sum.end(),
                         [](int64_t e) { return e == 0; });
    if (i == x.elements.size()) return false;
    int64_t hi = std::min(left, x.elements[i].second);
    for (int64_t c = 0; c <= hi; ++c) {
      if (self(self, i + 1, left - c, sum)) return true;
      sum = fp_add(sum, x.elements[i].first, x.n);
    }
    return false;
  };
  return rec(rec, 0, n, zero);
}

// oracle: all certificates by direct enumeration, smallest one returned
std::optional<ZeroSumCertificate> naive_least_certificate(const FpMultiset& x,
                                                          int64_t n) {
  std::vector<int64_t> counts(x.elements.size(), 0);
  std::optional<ZeroSumCertificate> best;
  auto lt = [](const ZeroSumCertificate& a, const ZeroSumCertificate& b) {
    std::vector<fvec> va, vb;
    std::vector<int64_t> ca, cb;
    for (const auto& e : a.chosen) va.push_back(e.first), ca.push_back(e.second);
    for (const auto& e : b.chosen) vb.push_back(e.first), cb.push_back(e.second);
    if (va != vb)
      return std::lexicographical_compare(va.begin(), va.end(), vb.begin(),
                                          vb.end());
    return ca < cb;
  };
  auto rec = [&](auto&& self, size_t i, int64_t left) -> void {
    if (i == x.elements.size()) {
      if (left != 0) return;
      fvec sum(x.dim, 0);
      ZeroSumCertificate cert;
      cert.n = n;
      for (size_t j = 0; j < counts.size(); ++j) {
        if (counts[j] == 0) continue;
        cert.chosen.emplace_back(x.elements[j].first, counts[j]);
        sum = fp_add(sum, fp_scale(counts[j], x.elements[j].first, x.n), x.n);
      }
      if (!std::all_of(sum.begin(), sum.end(), [](int64_t e) { return e == 0; }))
        return;
      if (!best || lt(cert, *best)) best = cert;
      return;
    }
    int64_t hi = std::min(left, x.elements[i].second);
    for (int64_t c = 0; c <= hi; ++c) {
      counts[i] = c;
      self(self, i + 1, left - c);
    }
    counts[i] = 0;
  };
  rec(rec, 0, n);
  return best;
}

// oracle: violation existence by enumerating weight compositions directly
bool naive_weak_violation(const std::vector<fvec>& vs, int64_t p) {
  size_t d = vs.empty() ? 0 : vs[0].size();
  fvec zero(d, 0);
  auto rec = [&](auto&& self, size_t i, int64_t left, fvec sum) -> bool {
    if (i == vs.size())
      return left == 0 && std::all_of(sum.begin(), sum.end(),
                                      [](int64_t e) { return e == 0; });
    for (int64_t c = 0; c <= std::min(left, p - 1); ++c) {
      if (self(self, i + 1, left - c, sum)) return true;
      sum = fp_add(sum, vs[i], p);
    }
    return false;
  };
  return rec(rec, 0, p, zero);
}

// oracle: weak constant by full subset search with the naive check
int64_t naive_weak_constant(int64_t p, int64_t d) {
  std::vector<fvec> all;
  size_t g = 1;
  for (int64_t i = 0; i < d; ++i) g *= size_t(p);
  for (size_t i = 0; i < g; ++i) all.push_back(fp_unindex(i, p, size_t(d)));
  std::sort(all.begin(), all.end());
  std::vector<fvec> cur;
  int64_t best = 0;
  auto rec = [&](auto&& self, size_t start) -> void {
    best = std::max<int64_t>(best, int64_t(cur.size()));
    for (size_t j = start; j < all.size(); ++j) {
      cur.push_back(all[j]);
      if (!naive_weak_violation(cur, p)) self(self, j + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

// oracle: EGZ constant by searching every multiset, no symmetry reduction
int64_t naive_egz_constant(int64_t n, int64_t d) {
  std::vector<fvec> all;
  size_t g = 1;
  for (int64_t i = 0; i < d; ++i) g *= size_t(n);
  for (size_t i = 0; i < g; ++i) all.push_back(fp_unindex(i, n, size_t(d)));
  std::sort(all.begin(), all.end());
  FpMultiset cur;
  cur.n = n;
  cur.dim = size_t(d);
  int64_t best = 0;
  auto rec = [&](auto&& self, size_t start, int64_t size) -> void {
    best = std::max(best, size);
    for (size_t j = start; j < all.size(); ++j) {
      for (int64_t c = 1; c <= n - 1; ++c) {
        cur.elements.emplace_back(all[j], c);
        if (!naive_has_zero_sum(cur, n)) self(self, j + 1, size + c);
        cur.elements.pop_back();
      }
    }
  };
  rec(rec, 0, 0);
  return best + 1;
}

FpMultiset ms(int64_t n, size_t dim,
              std::vector<std::pair<fvec, int64_t>> elems) {
  FpMultiset x;
  x.n = n;
  x.dim = dim;
  x.elements = std::move(elems);
  normalize(x);
  return x;
}

}  // namespace

TEST_CASE("zero sum certificate for a triple of ones") {
  auto c = find_zero_sum(ms(3, 1, {{{1}, 3}}), 3);
  REQUIRE(c.has_value());
  REQUIRE(c->chosen.size() == 1);
  CHECK(c->chosen[0].first == fvec{1});
  CHECK(c->chosen[0].second == 3);
  CHECK(verify_zero_sum(ms(3, 1, {{{1}, 3}}), 3, *c));
}

TEST_CASE("doubled boolean pair has no three-term zero sum") {
  auto c = find_zero_sum(ms(3, 1, {{{0}, 2}, {{1}, 2}}), 3);
  CHECK(!c.has_value());
}

TEST_CASE("all residues modulo five sum to zero") {
  auto x = ms(5, 1, {{{0}, 1}, {{1}, 1}, {{2}, 1}, {{3}, 1}, {{4}, 1}});
  auto c = find_zero_sum(x, 5);
  REQUIRE(c.has_value());
  REQUIRE(c->chosen.size() == 5);
  for (int64_t i = 0; i < 5; ++i) {
    CHECK(c->chosen[size_t(i)].first == fvec{i});
    CHECK(c->chosen[size_t(i)].second == 1);
  }
  CHECK(verify_zero_sum(x, 5, *c));
}

TEST_CASE("zero sum search matches naive enumeration") {
  for (int trial = 0; trial < 300; ++trial) {
    int64_t n = rnd(2, 5);
    size_t d = size_t(rnd(1, 2));
    FpMultiset x;
    x.n = n;
    x.dim = d;
    int64_t total = 0;
    while (total < 12 && rnd(0, 4) > 0) {
      fvec v(d);
      for (auto& e : v) e = rnd(0, n - 1);
      int64_t m = rnd(1, 3);
      x.elements.emplace_back(v, m);
      total += m;
    }
    normalize(x);
    auto mine = find_zero_sum(x, n);
    auto naive = naive_least_certificate(x, n);
    CHECK(mine.has_value() == naive.has_value());
    CHECK(mine.has_value() == naive_has_zero_sum(x, n));
    if (mine && naive) {
      CHECK(verify_zero_sum(x, n, *mine));
      CHECK(mine->chosen == naive->chosen);
    }
  }
}

TEST_CASE("egz constants in one dimension") {
  for (int64_t n = 2; n <= 5; ++n) {
    auto r = egz_constant(n, 1);
    CHECK(r.s == 2 * n - 1);
    CHECK(r.extremal.total() == r.s - 1);
    CHECK(!naive_has_zero_sum(r.extremal, n));
  }
  auto r3 = egz_constant(3, 1);
  REQUIRE(r3.extremal.elements.size() == 2);
  CHECK(r3.extremal.elements[0] == std::pair<fvec, int64_t>{{0}, 2});
  CHECK(r3.extremal.elements[1] == std::pair<fvec, int64_t>{{1}, 2});
}

TEST_CASE("egz constants for the boolean group") {
  for (int64_t d = 1; d <= 3; ++d) {
    auto r = egz_constant(2, d);
    CHECK(r.s == (int64_t(1) << d) + 1);
    CHECK(r.extremal.total() == r.s - 1);
    CHECK(!naive_has_zero_sum(r.extremal, 2));
  }
  auto r22 = egz_constant(2, 2);
  REQUIRE(r22.extremal.elements.size() == 4);
  CHECK(r22.extremal.elements[0].first == fvec{0, 0});
  CHECK(r22.extremal.elements[1].first == fvec{0, 1});
  CHECK(r22.extremal.elements[2].first == fvec{1, 0});
  CHECK(r22.extremal.elements[3].first == fvec{1, 1});
}

TEST_CASE("egz constant for nine points in the plane") {
  auto r = egz_constant(3, 2);
  CHECK(r.s == 9);
  CHECK(r.extremal.total() == 8);
  CHECK(!naive_has_zero_sum(r.extremal, 3));
}

TEST_CASE("egz constant agrees with the unreduced search") {
  CHECK(egz_constant(2, 1).s == naive_egz_constant(2, 1));
  CHECK(egz_constant(3, 1).s == naive_egz_constant(3, 1));
  CHECK(egz_constant(4, 1).s == naive_egz_constant(4, 1));
  CHECK(egz_constant(2, 2).s == naive_egz_constant(2, 2));
  CHECK(egz_constant(2, 3).s == naive_egz_constant(2, 3));
}

TEST_CASE("multisets at the threshold always have a zero sum") {
  for (auto [n, d] : std::vector<std::pair<int64_t, int64_t>>{
           {3, 1}, {5, 1}, {2, 2}, {3, 2}}) {
    int64_t s = egz_constant(n, d).s;
    for (int trial = 0; trial < 200; ++trial) {
      FpMultiset x;
      x.n = n;
      x.dim = size_t(d);
      for (int64_t i = 0; i < s; ++i) {
        fvec v(size_t(d), 0);
        for (auto& e : v) e = rnd(0, n - 1);
        x.elements.emplace_back(v, 1);
      }
      normalize(x);
      auto c = find_zero_sum(x, n);
      REQUIRE(c.has_value());
      CHECK(verify_zero_sum(x, n, *c));
    }
  }
}

TEST_CASE("weak zero-sum check on a pair") {
  CHECK(!weak_egz_check({{0}, {1}}, 5).has_value());
}

TEST_CASE("weak zero-sum violation for three residues") {
  auto v = weak_egz_check({{0}, {1}, {2}}, 5);
  REQUIRE(v.has_value());
  REQUIRE(v->alphas.size() == 3);
  CHECK(v->alphas[0].second == 2);
  CHECK(v->alphas[1].second == 1);
  CHECK(v->alphas[2].second == 2);
}

TEST_CASE("boolean square is weakly zero-sum free over five") {
  CHECK(!weak_egz_check({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, 5).has_value());
}

TEST_CASE("weak check matches naive enumeration and verifies") {
  for (int trial = 0; trial < 300; ++trial) {
    int64_t p = std::vector<int64_t>{2, 3, 5, 7}[size_t(rnd(0, 3))];
    size_t d = size_t(rnd(1, 2));
    std::set<fvec> chosen;
    int64_t universe = 1;
    for (size_t i = 0; i < d; ++i) universe *= p;
    int64_t want = rnd(1, std::min<int64_t>(5, universe));
    while (int64_t(chosen.size()) < want) {
      fvec v(d);
      for (auto& e : v) e = rnd(0, p - 1);
      chosen.insert(v);
    }
    std::vector<fvec> vs(chosen.begin(), chosen.end());
    std::shuffle(vs.begin(), vs.end(), rng);
    auto mine = weak_egz_check(vs, p);
    CHECK(mine.has_value() == naive_weak_violation(vs, p));
    if (mine) {
      int64_t tot = 0;
      fvec sum(d, 0);
      for (size_t i = 0; i < vs.size(); ++i) {
        auto [v, alpha] = mine->alphas[i];
        CHECK(v == fp_reduce(vs[i], p));
        CHECK(alpha >= 0);
        CHECK(alpha < p);
        tot += alpha;
        sum = fp_add(sum, fp_scale(alpha, v, p), p);
      }
      CHECK(tot == p);
      CHECK(std::all_of(sum.begin(), sum.end(),
                        [](int64_t e) { return e == 0; }));
    }
  }
}

TEST_CASE("weak check rejects duplicates") {
  CHECK_THROWS_AS(weak_egz_check({{1}, {1}}, 5), std::invalid_argument);
  CHECK_THROWS_AS(weak_egz_check({{0}, {5}}, 5), std::invalid_argument);
}

TEST_CASE("weak constants match known values") {
  auto r51 = weak_egz_constant(5, 1);
  CHECK(r51.w == 2);
  CHECK(r51.maximal_set == std::vector<fvec>{{0}, {1}});
  CHECK(weak_egz_constant(3, 1).w == 2);
  CHECK(weak_egz_constant(7, 1).w == 2);
  CHECK(weak_egz_constant(2, 2).w == 4);
  CHECK(weak_egz_constant(2, 3).w == 8);
  auto r52 = weak_egz_constant(5, 2);
  CHECK(r52.w == 4);
  for (const auto& v : r52.maximal_set) CHECK(v.size() == 2);
  CHECK(!weak_egz_check(r52.maximal_set, 5).has_value());
  CHECK(weak_egz_constant(3, 2).w == 4);
}

TEST_CASE("weak constants agree with the unreduced search") {
  CHECK(weak_egz_constant(3, 1).w == naive_weak_constant(3, 1));
  CHECK(weak_egz_constant(5, 1).w == naive_weak_constant(5, 1));
  CHECK(weak_egz_constant(2, 2).w == naive_weak_constant(2, 2));
  CHECK(weak_egz_constant(2, 3).w == naive_weak_constant(2, 3));
  CHECK(weak_egz_constant(3, 2).w == naive_weak_constant(3, 2));
}

TEST_CASE("binomial upper bound and lower bound chain") {
  for (auto [p, d] : std::vector<std::pair<int64_t, int64_t>>{
           {3, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2}, {5, 2}, {2, 3}}) {
    int64_t w = weak_egz_constant(p, d).w;
    CHECK(w <= binomial(2 * d - 1, d) + 1);
    if (p <= 3 && d <= 2) {
      int64_t s = egz_constant(p, d).s;
      CHECK(s >= w * (p - 1) + 1);
    }
  }
}

TEST_CASE("budget errors are loud") {
  FpMultiset x;
  x.n = 97;
  x.dim = 4;
  x.elements = {{{1, 2, 3, 4}, 5}};
  CHECK_THROWS_AS(find_zero_sum(x, 97, 1000), BudgetError);
  CHECK_THROWS_AS(egz_constant(11, 3, 1000), BudgetError);
}

namespace {

qvec qv(std::vector<int64_t> v) {
  qvec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

PolytopeQ hull_of(std::vector<std::vector<int64_t>> pts) {
  std::vector<qvec> r;
  for (auto& p : pts) r.push_back(qv(p));
  return hull_and_faces(r);
}

std::vector<qvec> translate(std::vector<qvec> pts, const qvec& t) {
  for (auto& p : pts)
    for (size_t i = 0; i < t.size(); ++i) p[i] += t[i];
  return pts;
}

// x_i += x_j, an elementary unimodular change of coordinates
std::vector<qvec> shear(std::vector<qvec> pts, size_t i, size_t j) {
  for (auto& p : pts) p[i] += p[j];
  return pts;
}

}  // namespace

TEST_CASE("hollow polytopes reduce to weak zero-sum-free sets") {
  // lattice already standard: reduction is the identity on the vertices
  HollowReduction red = hollow_to_weak_egz(
      hull_of({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), 7);
  CHECK(red.p == 7);
  CHECK(red.vectors == std::vector<fvec>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(!red.violation);

  red = hollow_to_weak_egz(hull_of({{0}, {1}}), 5);
  CHECK(red.vectors == std::vector<fvec>{{0}, {1}});
  CHECK(!red.violation);

  // doubled triangle: the vertex lattice is 2Z^2, so rescaling halves
  red = hollow_to_weak_egz(hull_of({{0, 0}, {2, 0}, {0, 2}}), 7);
  CHECK(red.vectors == std::vector<fvec>{{0, 0}, {0, 1}, {1, 0}});
  CHECK(!red.violation);

  // off-origin segment of lattice length one
  red = hollow_to_weak_egz(hull_of({{3}, {10}}), 5);
  CHECK(red.vectors == std::vector<fvec>{{0}, {1}});
  CHECK(!red.violation);

  // a single point reduces to the empty vector and passes vacuously
  red = hollow_to_weak_egz(hull_of({{4, 5}}), 7);
  CHECK(red.vectors == std::vector<fvec>{{}});
  CHECK(!red.violation);
}

TEST_CASE("vertices colliding mod p defeat the reduction") {
  // hollow trapezoid whose top edge has lattice length seven: its endpoints
  // agree mod 7, and the (6, 1) split on them is the reported violation
  PolytopeQ trap = hull_of({{0, 0}, {1, 0}, {0, 1}, {7, 1}});
  CHECK(is_hollow(trap).hollow);
  HollowReduction red = hollow_to_weak_egz(trap, 7);
  CHECK(red.vectors == std::vector<fvec>{{0, 0}, {0, 1}, {1, 0}, {0, 1}});
  REQUIRE(red.violation.has_value());
  std::vector<std::pair<fvec, int64_t>> want = {
      {{0, 0}, 0}, {{0, 1}, 6}, {{1, 0}, 0}, {{0, 1}, 1}};
  CHECK(red.violation->alphas == want);

  // at p = 11 the vertices stay distinct and the set passes: weights
  // a(0,1) + b(1,0) + c(7,1) = 0 mod 11 with a,b,c in [0,10] force
  // a + c in {0, 11}; both branches collapse to all mass on (0,0)
  red = hollow_to_weak_egz(trap, 11);
  CHECK(red.vectors == std::vector<fvec>{{0, 0}, {0, 1}, {1, 0}, {7, 1}});
  CHECK(!red.violation);
}

TEST_CASE("reduction verdict survives integral affine changes") {
  std::vector<std::vector<std::vector<int64_t>>> shapes = {
      {{0, 0}, {1, 0}, {0, 1}, {1, 1}},
      {{0, 0}, {2, 0}, {0, 2}},
      {{0, 0}, {1, 0}, {0, 1}, {7, 1}},
      {{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}},
  };
  for (const auto& shape : shapes) {
    for (int64_t p : {5, 7}) {
      std::vector<qvec> pts;
      for (const auto& v : shape) pts.push_back(qv(v));
      HollowReduction base = hollow_to_weak_egz(hull_and_faces(pts), p);

      // dilation rescales away entirely: the reduction is unchanged
      std::vector<qvec> doubled = pts;
      for (auto& v : doubled)
        for (auto& c : v) c *= 2;
      HollowReduction dil = hollow_to_weak_egz(hull_and_faces(doubled), p);
      CHECK(dil.vectors == base.vectors);
      CHECK(dil.violation.has_value() == base.violation.has_value());

      // translations and shears keep the verdict, not the coordinates
      qvec t(pts[0].size());
      for (size_t i = 0; i < t.size(); ++i) t[i] = int64_t(i) * 3 - 2;
      HollowReduction tr =
          hollow_to_weak_egz(hull_and_faces(translate(pts, t)), p);
      CHECK(tr.violation.has_value() == base.violation.has_value());
      CHECK(tr.vectors.size() == base.vectors.size());

      HollowReduction sh =
          hollow_to_weak_egz(hull_and_faces(shear(pts, 0, 1)), p);
      CHECK(sh.violation.has_value() == base.violation.has_value());
      CHECK(sh.vectors.size() == base.vectors.size());
    }
  }
}

TEST_CASE("reduction rejects bad inputs") {
  PolytopeQ square = hull_of({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK_THROWS_AS(hollow_to_weak_egz(square, 6), std::invalid_argument);
  CHECK_THROWS_AS(hollow_to_weak_egz(square, 1), std::invalid_argument);
  // quadrilateral with (1,1) inside and Z^2 as its vertex lattice
  PolytopeQ bad = hull_of({{0, 0}, {1, 0}, {0, 1}, {2, 2}});
  CHECK(!is_hollow(bad).hollow);
  CHECK_THROWS_AS(hollow_to_weak_egz(bad, 7), std::invalid_argument);
  CHECK_THROWS_AS(hollow_to_weak_egz(square, 7, 2), BudgetError);
}
