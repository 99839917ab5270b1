#include "egz/balanced.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "egz/lattice.hpp"
#include "egz/lp.hpp"

namespace egz {

namespace {

void validate(const WeightedPointSet& s, const qvec& c) {
  if (s.points.empty()) throw std::invalid_argument("point set is empty");
  if (s.points.size() != s.weights.size())
    throw std::invalid_argument("weights not parallel to points");
  for (const auto& p : s.points)
    if (p.size() != c.size())
      throw std::invalid_argument("point dimension mismatch");
  for (const auto& w : s.weights)
    if (w <= 0) throw std::invalid_argument("weights must be positive");
  std::set<qvec> seen(s.points.begin(), s.points.end());
  if (seen.size() != s.points.size())
    throw std::invalid_argument("points must be distinct");
}

qvec qneg(qvec v) {
  for (auto& e : v) e = -e;
  return v;
}

rat qdot(const qvec& a, const qvec& b) {
  rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

qvec qcross(const qvec& a, const qvec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

bool qzero(const qvec& v) {
  return std::all_of(v.begin(), v.end(), [](const rat& e) { return e == 0; });
}

// Weight captured by the closed halfspace of a perturbation chain: points
// whose first nonzero dot is positive, plus points zero on every level
// (those sit on the boundary of the limiting halfspace).
rat captured(const WeightedPointSet& s, const std::vector<qvec>& diffs,
             const std::vector<qvec>& chain) {
  rat got = 0;
  for (size_t i = 0; i < diffs.size(); ++i) {
    int sign = 0;
    for (const auto& xi : chain) {
      rat d = qdot(xi, diffs[i]);
      if (d > 0) sign = 1;
      if (d < 0) sign = -1;
      if (sign != 0) break;
    }
    if (sign >= 0) got += s.weights[i];
  }
  return got;
}

}  // namespace

rat max_centrality(const WeightedPointSet& s, const qvec& c,
                   qvec* min_direction) {
  validate(s, c);
  const size_t d = c.size();
  if (d > 3)
    throw std::invalid_argument("dimension over halfspace enumeration budget");
  if (min_direction) min_direction->assign(d, rat(0));

  std::vector<qvec> diffs;
  for (const auto& p : s.points) {
    qvec v(d);
    for (size_t i = 0; i < d; ++i) v[i] = p[i] - c[i];
    diffs.push_back(std::move(v));
  }
  std::vector<qvec> vs;
  for (const auto& v : diffs)
    if (!qzero(v)) vs.push_back(v);
  if (vs.empty()) return 1;  // every halfspace through c captures everything

  // chains covering every arrangement cell: a cell of a central arrangement
  // is adjacent to a ray (d = 2) or a vertex (d = 3) unless the normals have
  // rank one, and the bare +-v chains handle that case
  std::vector<std::vector<qvec>> chains;
  if (d == 1) {
    chains.push_back({qvec{1}});
    chains.push_back({qvec{-1}});
  } else if (d == 2) {
    for (const auto& v : vs) {
      qvec p{-v[1], v[0]};
      for (const qvec& a : {p, qneg(p)})
        for (const qvec& b : {v, qneg(v)}) chains.push_back({a, b});
    }
  } else {
    for (const auto& v : vs) {
      chains.push_back({v});
      chains.push_back({qneg(v)});
    }
    for (size_t i = 0; i < vs.size(); ++i)
      for (size_t j = i + 1; j < vs.size(); ++j) {
        qvec x0 = qcross(vs[i], vs[j]);
        if (qzero(x0)) continue;
        for (const qvec& xi : {x0, qneg(x0)})
          for (const auto& v : vs) {
            if (qdot(xi, v) != 0) continue;
            qvec p = qcross(xi, v);
            for (const qvec& a : {p, qneg(p)})
              for (const qvec& b : {v, qneg(v)}) chains.push_back({xi, a, b});
          }
      }
  }

  const rat x = s.total();
  rat best = 1;
  for (const auto& chain : chains) {
    rat got = captured(s, diffs, chain) / x;
    if (got < best) {
      best = got;
      if (min_direction) *min_direction = chain[0];
    }
  }
  return best;
}

qvec rational_balanced(const WeightedPointSet& s, const qvec& c,
                       const rat& theta) {
  validate(s, c);
  if (theta <= 0) throw std::invalid_argument("theta must be positive");
  if (max_centrality(s, c) < theta)
    throw std::invalid_argument("c is not a theta-central point");
  if (!convex_combination(s.points, c, true))
    throw std::invalid_argument(
        "c is not in the relative interior of the hull");

  const size_t k = s.points.size();
  const size_t d = c.size();
  const rat x = s.total();
  std::vector<LinConstraint> cons;
  for (size_t j = 0; j < d; ++j) {
    LinConstraint eq;
    eq.a.resize(k);
    for (size_t i = 0; i < k; ++i) eq.a[i] = s.points[i][j];
    eq.rel = Rel::EQ;
    eq.b = c[j];
    cons.push_back(std::move(eq));
  }
  {
    LinConstraint eq;
    eq.a.assign(k, rat(1));
    eq.rel = Rel::EQ;
    eq.b = 1;
    cons.push_back(std::move(eq));
  }
  for (size_t i = 0; i < k; ++i) {
    LinConstraint lo;
    lo.a.assign(k, rat(0));
    lo.a[i] = -1;
    lo.rel = Rel::LT;
    lo.b = 0;
    cons.push_back(std::move(lo));
    LinConstraint hi;
    hi.a.assign(k, rat(0));
    hi.a[i] = 1;
    hi.rel = Rel::LT;
    hi.b = s.weights[i] / (theta * x);
    cons.push_back(std::move(hi));
  }
  auto beta = rational_interior_point(cons, k);
  if (!beta)
    throw std::logic_error("balanced system infeasible despite hypotheses");
  return *beta;
}

BalancedCoefficients integer_balanced(const WeightedPointSet& s, const qvec& c,
                                      const rat& theta, const rat& epsilon,
                                      const bigint& n,
                                      const std::optional<zvec>& perturbation) {
  validate(s, c);
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  for (const auto& p : s.points)
    for (const auto& e : p)
      if (den(e) != 1)
        throw std::invalid_argument("points must be integer vectors");

  auto delta = integer_affine_solve(s.points, c);
  if (!delta)
    throw std::invalid_argument("c is not in the affine lattice of the points");
  qvec beta = rational_balanced(s, c, theta);

  const size_t k = s.points.size();
  const rat x = s.total();
  bigint m = common_denominator(beta);
  bigint cmax = 0;
  for (const auto& e : *delta) {
    bigint a = abs(e);
    if (a > cmax) cmax = a;
  }
  rat maxinv = 0;
  for (const auto& w : s.weights) {
    rat inv = x / w;
    if (inv > maxinv) maxinv = inv;
  }
  rat n0 = rat(2 * cmax * m * m) + rat(cmax * m) * theta * maxinv / epsilon;
  if (rat(n) <= n0)
    throw std::invalid_argument("n too small: the construction needs n > " +
                                rat_to_string(n0));

  bigint a = n / m;
  bigint r = n % m;
  BalancedCoefficients out;
  out.n = n;
  out.epsilon = epsilon;
  out.n0 = n0;
  out.alphas.resize(k);
  for (size_t i = 0; i < k; ++i) {
    rat mb = rat(m) * beta[i];
    out.alphas[i] = a * num(mb) + r * (*delta)[i];
  }
  if (perturbation) {
    if (perturbation->size() != k)
      throw std::invalid_argument("perturbation not parallel to points");
    bigint gsum = 0;
    qvec gpoint(c.size(), rat(0));
    for (size_t i = 0; i < k; ++i) {
      gsum += (*perturbation)[i];
      for (size_t j = 0; j < c.size(); ++j)
        gpoint[j] += rat((*perturbation)[i]) * s.points[i][j];
    }
    if (gsum != 0 || !qzero(gpoint))
      throw std::invalid_argument("perturbation is not an affine dependence");
    for (size_t i = 0; i < k; ++i) out.alphas[i] += (*perturbation)[i];
  }

  // the defining identities and both coefficient bounds, checked exactly
  bigint asum = 0;
  qvec apoint(c.size(), rat(0));
  out.mu = 1;
  for (size_t i = 0; i < k; ++i) {
    asum += out.alphas[i];
    for (size_t j = 0; j < c.size(); ++j)
      apoint[j] += rat(out.alphas[i]) * s.points[i][j];
    rat share = rat(out.alphas[i]) / rat(n);
    if (share < out.mu) out.mu = share;
    rat cap = (1 + epsilon) * rat(n) * s.weights[i] / (theta * x);
    if (rat(out.alphas[i]) > cap || out.alphas[i] <= 0) {
      if (perturbation)
        throw std::invalid_argument("perturbation breaks the coefficient bounds");
      throw std::logic_error("coefficient bounds failed despite n > n0");
    }
  }
  bool center_ok = asum == n;
  for (size_t j = 0; j < c.size(); ++j)
    if (apoint[j] != rat(n) * c[j]) center_ok = false;
  if (!center_ok)
    throw std::logic_error("balanced identities failed despite hypotheses");
  return out;
}

}  // namespace egz
