#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "egz/budget.hpp"
#include "egz/lattice.hpp"
#include "egz/polytope.hpp"

namespace egz {

// Affine map x -> rows * x + offset.
struct AffineMapQ {
  qmat rows;
  qvec offset;

  qvec operator()(const qvec& x) const;
  bool operator==(const AffineMapQ& o) const = default;
};

AffineMapQ identity_map(size_t dim);

// Map applying inner first, then outer.
AffineMapQ compose(const AffineMapQ& outer, const AffineMapQ& inner);

// One poset element together with its polytope and lattice. A missing
// lattice is the empty lattice: no integer point lives at this node.
struct FlagNode {
  std::string id;
  size_t ambient_dim = 0;
  PolytopeQ polytope;
  std::optional<AffineLattice> lattice;
};

// Structure map attached to an order relation low <= high, sending the
// ambient space of the low node into that of the high node.
struct FlagArrow {
  std::string low;
  std::string high;
  AffineMapQ map;
};

// A point based at a node. Its images at the nodes above the base are
// determined by the structure maps, so the base data suffices.
struct FlagPoint {
  std::string base;
  qvec coords;

  bool operator==(const FlagPoint& o) const = default;
  bool operator<(const FlagPoint& o) const;
};

struct ConvexFlag {
  std::vector<FlagNode> nodes;
  // Generating relations low <= high; the reflexive transitive closure is
  // taken automatically.
  std::vector<std::pair<std::string, std::string>> order;
  std::vector<FlagArrow> maps;
  // Generators of the convex body of proper points.
  std::vector<FlagPoint> omega;
};

struct FlagReport {
  bool valid = true;
  std::vector<std::string> problems;
};

// Checks the poset axioms (antisymmetry, pairwise suprema), the structure
// maps (every covering pair carries a declared map, compositions along
// different routes agree), polytope containment psi(P_low) in P_high,
// lattice compatibility psi(Lambda_low) in Lambda_high, and that omega
// generators lie in their polytopes.
FlagReport validate_flag(const ConvexFlag& f);

// Face poset of p with identity structure maps, per-face minimal vertex
// lattices, and omega generated by the vertex points based at the vertex
// nodes, so the proper points based at a face are exactly the points of its
// relative interior. Node ids are "f0", "f1", ... in the face order of p.
ConvexFlag from_polytope(const PolytopeQ& p);

// Binary strings of length at most d, a child sitting below its parent and
// the empty string on top. Every node carries [0,1] with lattice Z, the map
// from a child into its parent is constant at the child's last letter, and
// omega makes every point proper. Node ids are "n", "n0", "n1", "n00", ...
ConvexFlag binary_tree(size_t d);

// Core polygon with n petals glued along joint segments: petal i projects
// onto the core edge from vertex i-1 to vertex i (vertices in
// counterclockwise order starting at the lexicographically least), joint i
// maps onto the top edge of petal i and the bottom edge of petal i+1.
// Petals must be polygons with horizontal bottom and top edges; the
// one-argument form uses unit squares. Lattices are the minimal vertex
// lattices and omega makes every point proper.
ConvexFlag sunflower(const PolytopeQ& core,
                     const std::vector<PolytopeQ>& petals);
ConvexFlag sunflower(const PolytopeQ& core);

// from_polytope of [0,1] with two extra omega generators based at the whole
// segment over its endpoints, so 0 and 1 reappear as proper points 0' and
// 1' that remember only the top node.
ConvexFlag interval_with_duplicated_endpoints();

// Image of q at a node at or above its base.
FlagPoint point_image(const ConvexFlag& f, const FlagPoint& q,
                      const std::string& node);

// Convex combination: the base is the supremum of the bases carrying
// positive weight and the coordinates are the weighted sum of the images
// there. Coefficients must be nonnegative with sum 1.
FlagPoint convex_combine(const ConvexFlag& f,
                         const std::vector<FlagPoint>& points,
                         const qvec& alphas);

// Membership of q in the weak convex hull of gens: the image of q at its
// base must be a convex combination of the images of the generators based
// at or below it. Returns coefficients parallel to gens (zero at generators
// that do not reach the base), or nullopt.
std::optional<qvec> weak_hull_member(const ConvexFlag& f,
                                     const std::vector<FlagPoint>& gens,
                                     const FlagPoint& q);

// Whether q belongs to the convex body spanned by f.omega: some convex
// combination of generators must reproduce q's coordinates with the
// supremum of the participating bases equal to q's base.
bool proper_point(const ConvexFlag& f, const FlagPoint& q);

// All proper points lying in their node's lattice, ordered by decreasing
// height of the base (longest chain down to a minimal node), then
// coordinates, then node id. This is also the candidate order used by
// centerpoint.
std::vector<FlagPoint> integer_proper_points(const ConvexFlag& f,
                                             int64_t budget = kDefaultBudget);

struct HellyViolation {
  std::vector<FlagPoint> support;  // two or more integer proper points
  qvec alphas;                     // positive, summing to 1
  FlagPoint result;  // integer proper point equal to the combination
};

struct HellyReport {
  int64_t L = 0;
  int64_t L_geometric = 0;
  std::vector<FlagPoint> witness_set;
  std::vector<FlagPoint> geometric_witness_set;
  // Inclusion-minimal violating supports among the integer proper points; a
  // set counts towards L exactly when it contains none of them.
  std::vector<HellyViolation> violations;
};

// L: the largest number of integer proper points such that every convex
// combination of them equal to an integer proper point puts weight 1 on a
// single point. L_geometric: the largest weakly convex set of integer
// proper points whose weak convex hull contains no integer proper point
// beyond the set itself. Witness sets realize the maxima.
HellyReport helly_constants(const ConvexFlag& f,
                            int64_t budget = kDefaultBudget);

struct HellyVerification {
  bool hypothesis_holds = true;
  std::vector<size_t> failing_subset;  // family indices when it fails
  std::optional<FlagPoint> common;  // point in every family's weak hull
};

// Checks the Helly hypothesis, that every min(L, n) of the n families share
// an integer proper point in the intersection of their weak convex hulls,
// and when it holds produces a point common to all families.
HellyVerification verify_helly(const ConvexFlag& f,
                               const std::vector<std::vector<FlagPoint>>& families,
                               int64_t budget = kDefaultBudget);

struct CenterpointCheck {
  std::string node;
  rat defined_weight = 0;  // weight of inputs whose base reaches the node
  rat min_capture = 0;  // least weight in a closed halfspace at the point
  qvec functional;      // direction attaining it, zero if none restricts
};

struct CenterpointResult {
  FlagPoint point;
  rat threshold = 0;  // total weight / L
  std::vector<CenterpointCheck> checks;  // one per node above the base
};

// First integer proper point, in enumeration order, capturing at least
// total/L of the weight against every linear functional defined on it.
// helly_L overrides the Helly constant of the flag; any upper bound of the
// true constant keeps the guarantee. Requires distinct integer proper
// inputs, nonnegative weights and per-node dimension at most 3.
CenterpointResult centerpoint(const ConvexFlag& f,
                              const std::vector<FlagPoint>& points,
                              const std::vector<rat>& weights,
                              std::optional<int64_t> helly_L = std::nullopt,
                              int64_t budget = kDefaultBudget);

struct PolytopeCenterpointResult {
  FlagPoint point;  // node "f<face>" carrying the coordinates of q
  size_t face = 0;  // minimal face of p containing q
  AffineLattice face_lattice;  // minimal lattice of the points on that face
  std::vector<qvec> face_points;      // the input points on that face
  zvec membership;  // integral affine combination of face_points giving q
  CenterpointResult trace;
};

// 1/L(dim p)-central point of a weighted point set inside p lying in the
// minimal lattice of the points on its minimal face. Runs centerpoint on
// the face flag of p with lattices generated by the points; zero-weight
// points count for the lattices but not for centrality.
PolytopeCenterpointResult polytope_centerpoint(const PolytopeQ& p,
                                               const std::vector<qvec>& points,
                                               const std::vector<rat>& weights,
                                               int64_t budget = kDefaultBudget);

struct HollowFlagReport {
  bool hollow = true;
  std::string violation;  // description of the first failed condition
};

// A flag is hollow when no lattice point is interior to a positive
// dimensional node polytope, node polytopes are single points exactly at
// the minimal nodes, and every nonempty face G of every node polytope is
// good: among the minimal-node vertex points, those whose images lie on G
// must exist and the polytope at the supremum of their bases must map into
// G. Uses the canonical proper points generated by the minimal nodes.
HollowFlagReport is_hollow_flag(const ConvexFlag& f,
                                int64_t budget = kDefaultBudget);

}  // namespace egz
