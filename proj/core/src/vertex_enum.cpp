#include "spl/vertex_enum.hpp"

#include <algorithm>
#include <iterator>

#include "spl/error.hpp"

namespace spl {
namespace {

bool includes_all(const std::vector<int>& super, const std::vector<int>& sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace

VertexSet box_vertex_set(const Orthotope& box) {
  const int n = box.dim();
  VertexSet set;
  set.dim = n;
  const auto count = std::size_t{1} << n;
  set.points.reserve(count);
  set.active.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    Point p = box.center();
    std::vector<int> act;
    act.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const bool upper = (mask >> i) & 1U;
      p[i] += upper ? box.half_length(i) : -box.half_length(i);
      act.push_back(2 * i + (upper ? 0 : 1));
    }
    set.points.push_back(std::move(p));
    set.active.push_back(std::move(act));
  }
  return set;
}

bool clip(VertexSet& set, const Halfspace& h, int id, double eps) {
  const std::size_t nv = set.points.size();
  std::vector<double> val(nv);
  std::vector<std::size_t> in, out, on;
  for (std::size_t v = 0; v < nv; ++v) {
    val[v] = h.normal.dot(set.points[v]) - h.offset;
    if (val[v] > eps) out.push_back(v);
    else if (val[v] < -eps) in.push_back(v);
    else on.push_back(v);
  }
  if (out.empty()) {
    for (auto v : on) {
      auto& act = set.active[v];
      act.insert(std::upper_bound(act.begin(), act.end(), id), id);
    }
    return true;
  }
  if (in.empty() && on.empty()) return false;

  const auto need = static_cast<std::size_t>(set.dim - 1);
  VertexSet next;
  next.dim = set.dim;
  std::vector<int> common;
  for (auto u : in) {
    for (auto w : out) {
      common.clear();
      std::set_intersection(set.active[u].begin(), set.active[u].end(), set.active[w].begin(),
                            set.active[w].end(), std::back_inserter(common));
      if (common.size() < need) continue;
      // Combinatorial adjacency: no third vertex lies on every shared facet.
      bool adjacent = true;
      for (std::size_t z = 0; z < nv && adjacent; ++z) {
        if (z != u && z != w && includes_all(set.active[z], common)) adjacent = false;
      }
      if (!adjacent) continue;
      const double t = val[u] / (val[u] - val[w]);
      next.points.push_back(set.points[u] + t * (set.points[w] - set.points[u]));
      common.insert(std::upper_bound(common.begin(), common.end(), id), id);
      next.active.push_back(common);
    }
  }
  for (auto v : in) {
    next.points.push_back(set.points[v]);
    next.active.push_back(set.active[v]);
  }
  for (auto v : on) {
    auto act = set.active[v];
    act.insert(std::upper_bound(act.begin(), act.end(), id), id);
    next.points.push_back(set.points[v]);
    next.active.push_back(std::move(act));
  }
  set = std::move(next);
  return !set.points.empty();
}

std::vector<Point> enumerate_vertices(std::span<const Halfspace> halfspaces, const Orthotope& bounding_box,
                                      double eps) {
  // Inflate the box slightly so that none of its facets coincide with the body.
  std::vector<double> a = bounding_box.half_lengths();
  double pad = eps;
  for (double v : a) pad = std::max(pad, 1e-6 * v);
  for (double& v : a) v += pad;
  VertexSet set = box_vertex_set(Orthotope(a, bounding_box.center()));
  const int base = 2 * bounding_box.dim();
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    if (!clip(set, halfspaces[i], base + static_cast<int>(i), eps)) throw Error("empty polytope");
  }
  // Merge near-duplicates produced by degenerate clipping.
  std::vector<Point> out;
  for (const auto& p : set.points) {
    bool dup = false;
    for (const auto& q : out) {
      if ((p - q).lpNorm<Eigen::Infinity>() <= 4 * eps) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

}  // namespace spl
