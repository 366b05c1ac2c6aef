#pragma once

#include <Eigen/Core>

#include "spl/geometry.hpp"

namespace spl {

// An orthotope R in a rotated frame with (1/sqrt(n)) R ⊆ body ⊆ n R, both
// scalings taken about the frame origin.
struct JohnBox {
  Orthotope box;             // frame coordinates, centered at the origin
  Point center;              // world position of the frame origin
  Eigen::MatrixXd rotation;  // columns are the frame axes in world coordinates
  // Certified margins, relative to the body scale; >= 0 means strictly inside.
  double inner_margin = 0.0;  // (1/sqrt(n)) R inside the body
  double outer_margin = 0.0;  // body inside n R
  int newton_steps = 0;

  // factor * R as a world-coordinate polytope.
  ConvexPolytope world(double factor) const;
};

// Box approximation built from the maximum-volume inscribed ellipsoid: its
// principal axes give the frame, its semi-axes the half-lengths. Bodies of
// dimension other than 2 or 3 are accepted only when already axis-aligned
// boxes.
JohnBox john_box(const ConvexPolytope& body);

}  // namespace spl
