#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "egz/budget.hpp"
#include "egz/lattice.hpp"
#include "egz/linalg.hpp"
#include "egz/rational.hpp"

namespace egz {

// A face given by its vertex set. The supporting functional (a, b) satisfies
// a.x <= b on the whole polytope with equality exactly on this face; it is
// absent for the polytope itself.
struct FaceDescriptor {
  std::vector<size_t> vertex_subset;  // sorted indices into PolytopeQ::vertices
  int64_t dim = 0;
  std::optional<std::pair<qvec, rat>> supporting_functional;
};

// Exact convex hull with its full face lattice. Vertices are the extreme
// points sorted lexicographically; faces are every nonempty face including
// the polytope, sorted by (dim, vertex_subset). Facet inequalities a.x <= b
// hold on all of P and are irredundant within the affine hull; when dim <
// ambient_dim the affine hull itself is carried by hull_origin/hull_basis.
struct PolytopeQ {
  size_t ambient_dim = 0;
  int64_t dim = 0;
  std::vector<qvec> vertices;
  std::vector<std::pair<qvec, rat>> facets;
  std::vector<FaceDescriptor> faces;
  qvec hull_origin;                         // a point of the affine hull
  std::vector<qvec> hull_basis;             // dim independent directions
  std::vector<AffineLattice> face_lattices; // minimal affine lattice of each
                                            // face's vertex set
};

// Exact hull of the given points (duplicates and non-extreme points dropped)
// with the complete face lattice and per-face vertex lattices. The budget
// bounds the facet-candidate enumeration, which scans vertex subsets of size
// dim; intrinsic dimension is capped at 6.
PolytopeQ hull_and_faces(const std::vector<qvec>& points,
                         int64_t budget = kDefaultBudget);

bool polytope_contains(const PolytopeQ& p, const qvec& x);

// Index into p.faces of the smallest face containing x. Throws
// std::invalid_argument when x lies outside p.
size_t minimal_face_index(const PolytopeQ& p, const qvec& x);

struct IntegerPointReport {
  bool integer = false;
  size_t face = 0;          // minimal face containing the queried point
  AffineLattice lattice;    // minimal affine lattice of that face's vertices
};

// Whether x lies in the minimal affine lattice spanned by the vertices of its
// minimal containing face. Throws when x is outside p.
IntegerPointReport is_integer_point(const PolytopeQ& p, const qvec& x);

// All integer points of p in the per-face sense, each with the index of its
// minimal face, sorted lexicographically by point. Enumerates every face's
// vertex lattice inside the face's bounding box; the budget caps the number
// of candidate lattice points visited.
std::vector<std::pair<qvec, size_t>> integer_points(
    const PolytopeQ& p, int64_t budget = kDefaultBudget);

// All points of the given affine lattice lying in p, sorted
// lexicographically. The lattice must live in the same ambient space.
std::vector<qvec> lattice_points_in(const PolytopeQ& p,
                                    const AffineLattice& lat,
                                    int64_t budget = kDefaultBudget);

struct HollownessReport {
  bool hollow = true;
  // Lexicographically least non-vertex integer point and its minimal face.
  std::optional<std::pair<qvec, size_t>> witness;
};

HollownessReport is_hollow(const PolytopeQ& p, int64_t budget = kDefaultBudget);

// Cartesian product in Q^{dim(a) + dim(b)}. Vertices, facets, faces and face
// lattices are assembled directly from the factors (faces of a product are
// exactly the products of faces).
PolytopeQ product(const PolytopeQ& a, const PolytopeQ& b);

enum class PolygonClass { NotHollow, Triangle, Trapezoid, Segment, Point };

// Classification of polytopes in Q^2 by hollowness and shape. Hollow
// 2-dimensional instances are guaranteed to have at most 4 vertices, and with
// 4 vertices a parallel edge pair; both facts are asserted at runtime.
PolygonClass classify_hollow_polygon(const PolytopeQ& p,
                                     int64_t budget = kDefaultBudget);

// Data of the n-fold representation construction on the minimal face of q:
// b = m0 * (positive rational convex combination), c = an integer affine
// combination, K = max |c_i|, and for every n > n0 = 2*K*m0^2 writing
// n = m0*k + r gives nonnegative coefficients k*b + r*c.
struct CritConstruction {
  zvec b;        // over the minimal face's vertices, all positive
  zvec c;        // over the minimal face's vertices, sum 1
  bigint m0;
  bigint k_bound;  // K
  bigint n0;
};

struct CritReport {
  bool cond1 = false;             // q is an integer point of p
  bool in_vertex_lattice = false; // q is in the affine lattice of all vertices
  size_t face = 0;                // minimal face of q
  // Above this, every n whose scaled system is solvable over Z admits a
  // nonnegative certificate (and one is constructed).
  bigint threshold;
  std::optional<CritConstruction> construction;  // present iff cond1
  std::map<int64_t, bool> cond2;
  // Exact certificate per representable n: nonnegative integers over all
  // vertices of p with sum n and weighted vertex sum n*q.
  std::map<int64_t, zvec> coefficients;
};

// For each n in [n_lo, n_hi], decides exactly whether q has an n-fold
// representation sum alpha_i q_i = n q, sum alpha_i = n with nonnegative
// integers alpha, and reports whether q is an integer point. Throws when q
// lies outside p.
CritReport crit_check(const PolytopeQ& p, const qvec& q, int64_t n_lo,
                      int64_t n_hi, int64_t budget = kDefaultBudget);

}  // namespace egz
