#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "spl/lp.hpp"

namespace spl {

using Point = Eigen::VectorXd;

class ConvexPolytope;

// Axis-aligned box  center + prod_i [-a_i, a_i].
class Orthotope {
 public:
  explicit Orthotope(std::vector<double> half_lengths);
  Orthotope(std::vector<double> half_lengths, Point center);

  int dim() const { return static_cast<int>(half_lengths_.size()); }
  const std::vector<double>& half_lengths() const { return half_lengths_; }
  double half_length(int axis) const { return half_lengths_[static_cast<std::size_t>(axis)]; }
  const Point& center() const { return center_; }

  double volume() const;
  double diameter() const;
  Point lower() const;
  Point upper() const;

  // Outward facets in the order +e_0, -e_0, +e_1, -e_1, ...
  std::vector<Halfspace> halfspaces() const;
  std::vector<Point> corners() const;
  ConvexPolytope to_polytope() const;

 private:
  std::vector<double> half_lengths_;
  Point center_;
};

// H-representation with unit normals and an optional cached vertex list.
//
// Construction normalizes every normal and checks the body is bounded and
// nonempty: with cached vertices every vertex is checked against every
// halfspace (tolerance 1e-9 * scale); without them an LP is solved in
// +/- each coordinate direction.
class ConvexPolytope {
 public:
  ConvexPolytope(int dim, std::vector<Halfspace> halfspaces);
  ConvexPolytope(int dim, std::vector<Halfspace> halfspaces, std::vector<Point> vertices);

  // Convex hull of a planar point cloud.
  static ConvexPolytope polygon(std::span<const Point> points);

  int dim() const { return dim_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const std::optional<std::vector<Point>>& vertices() const { return vertices_; }

  // max |offset| over the facets; the unit of every geometric tolerance.
  double scale() const { return scale_; }
  double tolerance() const { return 1e-9 * scale_; }

  // Copy with the V-representation filled in (n <= 4); no-op when cached.
  ConvexPolytope with_vertices() const;

  // 2D only: vertices in counter-clockwise order, collinear points dropped.
  std::vector<Point> ordered_polygon() const;

  // Axis-aligned bounding box from LP (or from cached vertices).
  Orthotope bounding_box() const;

  bool contains_point(const Point& p, double tol) const;

 private:
  int dim_ = 0;
  std::vector<Halfspace> halfspaces_;
  std::optional<std::vector<Point>> vertices_;
  double scale_ = 1.0;
};

// Points with a certified pairwise minimum distance.
class PointSet {
 public:
  explicit PointSet(double separation) : separation_(separation) {}

  // Adds p if it keeps every pairwise distance >= separation.
  bool try_insert(const Point& p);
  // As try_insert, but throws "separation violated" on rejection.
  void insert(const Point& p);

  const std::vector<Point>& points() const { return points_; }
  double separation() const { return separation_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

 private:
  double separation_;
  std::vector<Point> points_;
};

struct Diameter {
  double value = 0.0;
  // true when value is a certified upper bound rather than exact.
  bool upper_bound = false;
};

Diameter diameter(const Orthotope& box);
Diameter diameter(const ConvexPolytope& body);

// Points at distance >= r from the boundary of the box.
Orthotope inner_offset(const Orthotope& box, double r);

// Lexicographic greedy over a grid of spacing grid_fraction * sep / sqrt(n)
// laid over the region. The result is sep-separated and every grid point is
// within distance < sep of some chosen point.
PointSet greedy_separated_net(const Orthotope& region, double sep, double grid_fraction = 0.25);

std::vector<ConvexPolytope> voronoi_cells(const PointSet& sites, const Orthotope& ambient);

struct Containment {
  bool contained = false;
  // max over outer facets of (normal . x - offset) over the inner body.
  double max_violation = 0.0;
};

Containment contains(const ConvexPolytope& outer, const ConvexPolytope& inner);
Containment contains(const ConvexPolytope& outer, const Orthotope& inner);

double volume(const Orthotope& box);
double volume(const ConvexPolytope& body);

// Prism  [-half_length, half_length] x body, the new axis placed first.
ConvexPolytope extrude(const ConvexPolytope& body, double half_length);

// Coordinates reordered so that new axis i is old axis perm[i].
ConvexPolytope permute_axes(const ConvexPolytope& body, std::span<const int> perm);
ConvexPolytope translate(const ConvexPolytope& body, const Point& shift);
ConvexPolytope scale_about(const ConvexPolytope& body, const Point& origin, double factor);

// True when every facet normal is +/- a coordinate axis and the body is a box.
std::optional<Orthotope> as_orthotope(const ConvexPolytope& body);

}  // namespace spl
