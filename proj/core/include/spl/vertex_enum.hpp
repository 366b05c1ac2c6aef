#pragma once

#include <span>
#include <vector>

#include "spl/geometry.hpp"

namespace spl {

// Vertices of a polytope together with the ids of the constraints active at
// each one. Maintained incrementally by clipping (double description).
struct VertexSet {
  int dim = 0;
  std::vector<Point> points;
  std::vector<std::vector<int>> active;  // sorted ids
};

// Corners of the box; constraint ids follow Orthotope::halfspaces() order.
VertexSet box_vertex_set(const Orthotope& box);

// Intersects the set with {normal . x <= offset}, tagging new and incident
// vertices with id. Returns false when the result is empty. Vertices within
// eps of the hyperplane are treated as lying on it.
bool clip(VertexSet& set, const Halfspace& h, int id, double eps);

// Vertices of the polytope {x : h.normal . x <= h.offset}, which must lie in
// the bounding box.
std::vector<Point> enumerate_vertices(std::span<const Halfspace> halfspaces, const Orthotope& bounding_box,
                                      double eps);

}  // namespace spl
