#include "spl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "spl/error.hpp"
#include "spl/vertex_enum.hpp"

namespace spl {
namespace {

constexpr double kCoincidentSites = 1e-12;
constexpr double kMaxGridRows = 5e7;

double cross2(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double max_abs_offset(const std::vector<Halfspace>& hs) {
  double s = 0.0;
  for (const auto& h : hs) s = std::max(s, std::abs(h.offset));
  return s > 0.0 ? s : 1.0;
}

// Polygon vertices sorted counter-clockwise around their centroid.
std::vector<Point> sort_ccw(std::vector<Point> pts) {
  if (pts.empty()) return pts;
  Point c = Point::Zero(2);
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
    return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
  });
  return pts;
}

double shoelace(const std::vector<Point>& ring) {
  double area = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const auto& p = ring[i];
    const auto& q = ring[(i + 1) % ring.size()];
    area += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * area;
}

}  // namespace

// ---------------------------------------------------------------------------
// Orthotope

Orthotope::Orthotope(std::vector<double> half_lengths)
    : Orthotope(half_lengths, Point::Zero(static_cast<Eigen::Index>(half_lengths.size()))) {}

Orthotope::Orthotope(std::vector<double> half_lengths, Point center)
    : half_lengths_(std::move(half_lengths)), center_(std::move(center)) {
  if (half_lengths_.empty()) throw Error("invalid orthotope: dimension must be >= 1");
  if (center_.size() != dim()) throw Error("invalid orthotope: center dimension mismatch");
  for (double a : half_lengths_) {
    if (!(a > 0.0) || !std::isfinite(a)) throw Error("invalid orthotope: half-lengths must be positive");
  }
}

double Orthotope::volume() const {
  double v = 1.0;
  for (double a : half_lengths_) v *= 2.0 * a;
  return v;
}

double Orthotope::diameter() const {
  double s = 0.0;
  for (double a : half_lengths_) s += a * a;
  return 2.0 * std::sqrt(s);
}

Point Orthotope::lower() const {
  Point p = center_;
  for (int i = 0; i < dim(); ++i) p[i] -= half_length(i);
  return p;
}

Point Orthotope::upper() const {
  Point p = center_;
  for (int i = 0; i < dim(); ++i) p[i] += half_length(i);
  return p;
}

std::vector<Halfspace> Orthotope::halfspaces() const {
  std::vector<Halfspace> hs;
  hs.reserve(2 * half_lengths_.size());
  for (int i = 0; i < dim(); ++i) {
    Point e = Point::Zero(dim());
    e[i] = 1.0;
    hs.push_back({e, center_[i] + half_length(i)});
    hs.push_back({-e, -center_[i] + half_length(i)});
  }
  return hs;
}

std::vector<Point> Orthotope::corners() const { return box_vertex_set(*this).points; }

ConvexPolytope Orthotope::to_polytope() const { return ConvexPolytope(dim(), halfspaces(), corners()); }

// ---------------------------------------------------------------------------
// ConvexPolytope

ConvexPolytope::ConvexPolytope(int dim, std::vector<Halfspace> halfspaces)
    : dim_(dim), halfspaces_(std::move(halfspaces)) {
  if (dim_ < 1) throw Error("invalid polytope: dimension must be >= 1");
  for (auto& h : halfspaces_) {
    if (h.normal.size() != dim_) throw Error("invalid polytope: normal dimension mismatch");
    const double len = h.normal.norm();
    if (!(len > 0.0) || !std::isfinite(len) || !std::isfinite(h.offset))
      throw Error("invalid polytope: degenerate halfspace");
    h.normal /= len;
    h.offset /= len;
  }
  scale_ = max_abs_offset(halfspaces_);
  for (int i = 0; i < dim_; ++i) {
    for (double sign : {1.0, -1.0}) {
      Point dir = Point::Zero(dim_);
      dir[i] = sign;
      const auto res = lp_maximize(dir, halfspaces_);
      if (res.status == LpStatus::infeasible) throw Error("empty polytope");
      if (res.status == LpStatus::unbounded) throw Error("unbounded");
    }
  }
}

ConvexPolytope::ConvexPolytope(int dim, std::vector<Halfspace> halfspaces, std::vector<Point> vertices)
    : dim_(dim), halfspaces_(std::move(halfspaces)) {
  if (dim_ < 1) throw Error("invalid polytope: dimension must be >= 1");
  if (vertices.empty()) throw Error("empty polytope");
  for (auto& h : halfspaces_) {
    if (h.normal.size() != dim_) throw Error("invalid polytope: normal dimension mismatch");
    const double len = h.normal.norm();
    if (!(len > 0.0) || !std::isfinite(len)) throw Error("invalid polytope: degenerate halfspace");
    h.normal /= len;
    h.offset /= len;
  }
  scale_ = max_abs_offset(halfspaces_);
  for (const auto& v : vertices) {
    if (v.size() != dim_) throw Error("invalid polytope: vertex dimension mismatch");
    if (!contains_point(v, tolerance())) throw Error("invalid polytope: cached vertex violates a halfspace");
  }
  vertices_ = std::move(vertices);
}

ConvexPolytope ConvexPolytope::polygon(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  for (const auto& p : pts) {
    if (p.size() != 2) throw Error("invalid polygon: points must be 2D");
  }
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  // Andrew's monotone chain; collinear points are dropped.
  std::vector<Point> hull;
  hull.reserve(2 * pts.size());
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = hull.size();
    for (const auto& p : pts) {
      while (hull.size() >= base + 2 && cross2(hull[hull.size() - 2], hull.back(), p) <= 0.0) hull.pop_back();
      hull.push_back(p);
    }
    hull.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  if (hull.size() < 3) throw Error("not full-dimensional");
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point& p = hull[i];
    const Point& q = hull[(i + 1) % hull.size()];
    Point nrm(2);
    nrm << q[1] - p[1], p[0] - q[0];
    nrm.normalize();
    hs.push_back({nrm, nrm.dot(p)});
  }
  return ConvexPolytope(2, std::move(hs), std::move(hull));
}

ConvexPolytope ConvexPolytope::with_vertices() const {
  if (vertices_) return *this;
  if (dim_ > 4) throw Error("vertex enumeration unsupported for dimension > 4");
  auto verts = enumerate_vertices(halfspaces_, bounding_box(), 1e-11 * scale_);
  return ConvexPolytope(dim_, halfspaces_, std::move(verts));
}

std::vector<Point> ConvexPolytope::ordered_polygon() const {
  if (dim_ != 2) throw Error("ordered_polygon requires a 2D polytope");
  const auto full = with_vertices();
  auto ring = sort_ccw(*full.vertices());
  // Drop duplicates and collinear points.
  const double tol = 1e-12 * scale_ * scale_;
  bool changed = true;
  while (changed && ring.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const auto& prev = ring[(i + ring.size() - 1) % ring.size()];
      const auto& next = ring[(i + 1) % ring.size()];
      if (std::abs(cross2(prev, ring[i], next)) <= tol) {
        ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return ring;
}

Orthotope ConvexPolytope::bounding_box() const {
  Point lo(dim_), hi(dim_);
  if (vertices_) {
    lo = vertices_->front();
    hi = vertices_->front();
    for (const auto& v : *vertices_) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
  } else {
    for (int i = 0; i < dim_; ++i) {
      Point dir = Point::Zero(dim_);
      dir[i] = 1.0;
      const auto up = lp_maximize(dir, halfspaces_);
      const auto down = lp_maximize(-dir, halfspaces_);
      if (up.status != LpStatus::optimal || down.status != LpStatus::optimal) throw Error("unbounded");
      hi[i] = up.value;
      lo[i] = -down.value;
    }
  }
  std::vector<double> half(static_cast<std::size_t>(dim_));
  // Flat bodies still get a (tiny) positive extent so the box is valid.
  const double floor = 1e-300;
  for (int i = 0; i < dim_; ++i) half[static_cast<std::size_t>(i)] = std::max(0.5 * (hi[i] - lo[i]), floor);
  return Orthotope(std::move(half), 0.5 * (lo + hi));
}

bool ConvexPolytope::contains_point(const Point& p, double tol) const {
  for (const auto& h : halfspaces_) {
    if (h.normal.dot(p) - h.offset > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// PointSet

bool PointSet::try_insert(const Point& p) {
  for (const auto& q : points_) {
    if ((p - q).norm() < separation_) return false;
  }
  points_.push_back(p);
  return true;
}

void PointSet::insert(const Point& p) {
  if (!try_insert(p)) throw Error("separation violated");
}

// ---------------------------------------------------------------------------
// Measurements

Diameter diameter(const Orthotope& box) { return {box.diameter(), false}; }

Diameter diameter(const ConvexPolytope& body) {
  if (!body.vertices() && body.dim() > 4) {
    // Diagonal of the LP bounding box: the diameter of its circumscribed ball.
    return {body.bounding_box().diameter(), true};
  }
  const auto full = body.with_vertices();
  const auto& v = *full.vertices();
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) best = std::max(best, (v[i] - v[j]).squaredNorm());
  }
  return {std::sqrt(best), false};
}

Orthotope inner_offset(const Orthotope& box, double r) {
  if (!(r >= 0.0)) throw Error("offset must be non-negative");
  const double amin = *std::min_element(box.half_lengths().begin(), box.half_lengths().end());
  if (r >= amin) throw Error("offset collapses box");
  std::vector<double> a = box.half_lengths();
  for (double& v : a) v -= r;
  return Orthotope(std::move(a), box.center());
}

PointSet greedy_separated_net(const Orthotope& region, double sep, double grid_fraction) {
  if (!(sep > 0.0)) throw Error("separation must be positive");
  if (!(grid_fraction > 0.0 && grid_fraction <= 1.0)) throw Error("grid_fraction must lie in (0, 1]");
  const int n = region.dim();
  const double spacing = grid_fraction * sep / std::sqrt(static_cast<double>(n));
  const Point lo = region.lower();
  const Point hi = region.upper();
  std::vector<long> steps(static_cast<std::size_t>(n));
  double rows = 1.0;
  for (int i = 0; i < n; ++i) {
    steps[static_cast<std::size_t>(i)] = std::max(1L, static_cast<long>(std::ceil((hi[i] - lo[i]) / spacing)));
    if (i + 1 < n) rows *= static_cast<double>(steps[static_cast<std::size_t>(i)] + 1);
  }
  if (rows > kMaxGridRows) throw Error("request too large: net grid");
  auto coord = [&](int axis, long j) {
    return lo[axis] + (hi[axis] - lo[axis]) * static_cast<double>(j) /
                          static_cast<double>(steps[static_cast<std::size_t>(axis)]);
  };

  PointSet net(sep);
  const int last = n - 1;
  const long last_steps = steps[static_cast<std::size_t>(last)];
  std::vector<long> idx(static_cast<std::size_t>(n), 0);
  Point cand(n);
  std::vector<std::size_t> nearby;
  std::vector<double> perp2;
  while (true) {
    for (int i = 0; i < last; ++i) cand[i] = coord(i, idx[static_cast<std::size_t>(i)]);
    // Net points whose distance to this grid line is below sep.
    nearby.clear();
    perp2.clear();
    for (std::size_t p = 0; p < net.size(); ++p) {
      const double d2 = (net.points()[p].head(last) - cand.head(last)).squaredNorm();
      if (d2 < sep * sep) {
        nearby.push_back(p);
        perp2.push_back(d2);
      }
    }
    long j = 0;
    while (j <= last_steps) {
      cand[last] = coord(last, j);
      long jump = -1;
      for (std::size_t q = 0; q < nearby.size(); ++q) {
        const Point& p = net.points()[nearby[q]];
        if ((cand - p).norm() < sep) {
          // Skip the open interval this point blocks on the line.
          const double w = std::sqrt(std::max(0.0, sep * sep - perp2[q]));
          const double t = (p[last] + w - lo[last]) / (hi[last] - lo[last]) * static_cast<double>(last_steps);
          jump = std::max(j + 1, static_cast<long>(std::ceil(t)) - 1);
          break;
        }
      }
      if (jump >= 0) {
        j = jump;
        continue;
      }
      if (net.try_insert(cand)) {
        nearby.push_back(net.size() - 1);
        perp2.push_back(0.0);
      }
      ++j;
    }
    // Odometer over the leading axes.
    int axis = last - 1;
    while (axis >= 0) {
      auto& k = idx[static_cast<std::size_t>(axis)];
      if (++k <= steps[static_cast<std::size_t>(axis)]) break;
      k = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return net;
}

std::vector<ConvexPolytope> voronoi_cells(const PointSet& sites, const Orthotope& ambient) {
  const auto& x = sites.points();
  if (x.empty()) throw Error("voronoi_cells requires at least one site");
  const int n = ambient.dim();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != n) throw Error("site dimension mismatch");
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if ((x[i] - x[j]).norm() < kCoincidentSites) throw Error("coincident sites");
    }
  }
  const auto box_hs = ambient.halfspaces();
  const double scale = max_abs_offset(box_hs);
  const double eps = 1e-11 * scale;
  for (const auto& s : x) {
    for (const auto& h : box_hs) {
      if (h.normal.dot(s) - h.offset > 1e-9 * scale) throw Error("site outside ambient");
    }
  }

  std::vector<ConvexPolytope> cells;
  cells.reserve(x.size());
  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<Halfspace> hs = box_hs;
    std::vector<Halfspace> bisectors(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j == i) continue;
      const Point diff = x[j] - x[i];
      const double d = diff.norm();
      bisectors[j] = {diff / d, (x[j].squaredNorm() - x[i].squaredNorm()) / (2.0 * d)};
      hs.push_back(bisectors[j]);
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return (x[a] - x[i]).squaredNorm() < (x[b] - x[i]).squaredNorm();
    });

    VertexSet set = box_vertex_set(ambient);
    for (std::size_t j : order) {
      if (j == i) continue;
      double reach = 0.0;
      for (const auto& v : set.points) reach = std::max(reach, (v - x[i]).norm());
      // Bisector planes farther than the current cell's reach cannot cut it.
      if (0.5 * (x[j] - x[i]).norm() > reach + eps) break;
      const int id = static_cast<int>(box_hs.size() + (j < i ? j : j - 1));
      if (!clip(set, bisectors[j], id, eps)) throw Error("empty Voronoi cell");
    }
    cells.emplace_back(n, std::move(hs), std::move(set.points));
  }
  return cells;
}

// ---------------------------------------------------------------------------
// Containment and volume

Containment contains(const ConvexPolytope& outer, const ConvexPolytope& inner) {
  if (outer.dim() != inner.dim()) throw Error("dimension mismatch");
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& h : outer.halfspaces()) {
    double reach;
    if (inner.vertices()) {
      reach = -std::numeric_limits<double>::infinity();
      for (const auto& v : *inner.vertices()) reach = std::max(reach, h.normal.dot(v));
    } else {
      const auto res = lp_maximize(h.normal, inner.halfspaces());
      if (res.status != LpStatus::optimal) throw Error("unbounded");
      reach = res.value;
    }
    worst = std::max(worst, reach - h.offset);
  }
  return {worst <= outer.tolerance(), worst};
}

Containment contains(const ConvexPolytope& outer, const Orthotope& inner) {
  if (outer.dim() != inner.dim()) throw Error("dimension mismatch");
  if (inner.dim() <= 12) return contains(outer, inner.to_polytope());
  return contains(outer, ConvexPolytope(inner.dim(), inner.halfspaces()));
}

double volume(const Orthotope& box) { return box.volume(); }

double volume(const ConvexPolytope& body) {
  const int n = body.dim();
  if (n > 3) throw Error("volume unsupported");
  const auto full = body.with_vertices();
  const auto& verts = *full.vertices();
  if (n == 1) {
    double lo = verts.front()[0], hi = lo;
    for (const auto& v : verts) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    return hi - lo;
  }
  if (n == 2) return std::abs(shoelace(sort_ccw(verts)));

  // Divergence theorem: vol = sum_f h_f area_f / 3 with h_f measured from the centroid.
  Point c = Point::Zero(3);
  for (const auto& v : verts) c += v;
  c /= static_cast<double>(verts.size());
  const double tol = body.tolerance();
  std::vector<Halfspace> seen;
  double vol = 0.0;
  for (const auto& h : body.halfspaces()) {
    bool dup = false;
    for (const auto& s : seen) {
      if ((s.normal - h.normal).norm() < 1e-12 && std::abs(s.offset - h.offset) <= tol) dup = true;
    }
    if (dup) continue;
    seen.push_back(h);
    std::vector<Point> face;
    for (const auto& v : verts) {
      if (std::abs(h.normal.dot(v) - h.offset) <= tol) face.push_back(v);
    }
    if (face.size() < 3) continue;
    // Orthonormal basis of the facet plane.
    Eigen::Vector3d nrm = h.normal;
    Eigen::Vector3d u = std::abs(nrm[0]) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    u = (u - u.dot(nrm) * nrm).normalized();
    const Eigen::Vector3d w = nrm.cross(u);
    std::vector<Point> flat;
    flat.reserve(face.size());
    for (const auto& v : face) {
      Point q(2);
      q << u.dot(v), w.dot(v);
      flat.push_back(q);
    }
    const double area = std::abs(shoelace(sort_ccw(flat)));
    vol += (h.offset - h.normal.dot(c)) * area / 3.0;
  }
  return vol;
}

// ---------------------------------------------------------------------------
// Transformations

ConvexPolytope extrude(const ConvexPolytope& body, double half_length) {
  if (!(half_length > 0.0)) throw Error("extrusion half-length must be positive");
  const int n = body.dim() + 1;
  std::vector<Halfspace> hs;
  hs.reserve(body.halfspaces().size() + 2);
  Point e = Point::Zero(n);
  e[0] = 1.0;
  hs.push_back({e, half_length});
  hs.push_back({-e, half_length});
  for (const auto& h : body.halfspaces()) {
    Point nrm(n);
    nrm << 0.0, h.normal;
    hs.push_back({std::move(nrm), h.offset});
  }
  if (!body.vertices()) return ConvexPolytope(n, std::move(hs));
  std::vector<Point> verts;
  verts.reserve(2 * body.vertices()->size());
  for (double s : {-half_length, half_length}) {
    for (const auto& v : *body.vertices()) {
      Point p(n);
      p << s, v;
      verts.push_back(std::move(p));
    }
  }
  return ConvexPolytope(n, std::move(hs), std::move(verts));
}

ConvexPolytope permute_axes(const ConvexPolytope& body, std::span<const int> perm) {
  const int n = body.dim();
  if (static_cast<int>(perm.size()) != n) throw Error("permutation size mismatch");
  auto apply = [&](const Point& p) {
    Point q(n);
    for (int i = 0; i < n; ++i) q[i] = p[perm[static_cast<std::size_t>(i)]];
    return q;
  };
  std::vector<Halfspace> hs;
  for (const auto& h : body.halfspaces()) hs.push_back({apply(h.normal), h.offset});
  if (!body.vertices()) return ConvexPolytope(n, std::move(hs));
  std::vector<Point> verts;
  for (const auto& v : *body.vertices()) verts.push_back(apply(v));
  return ConvexPolytope(n, std::move(hs), std::move(verts));
}

ConvexPolytope translate(const ConvexPolytope& body, const Point& shift) {
  std::vector<Halfspace> hs;
  for (const auto& h : body.halfspaces()) hs.push_back({h.normal, h.offset + h.normal.dot(shift)});
  if (!body.vertices()) return ConvexPolytope(body.dim(), std::move(hs));
  std::vector<Point> verts;
  for (const auto& v : *body.vertices()) verts.push_back(v + shift);
  return ConvexPolytope(body.dim(), std::move(hs), std::move(verts));
}

ConvexPolytope scale_about(const ConvexPolytope& body, const Point& origin, double factor) {
  if (!(factor > 0.0)) throw Error("scale factor must be positive");
  std::vector<Halfspace> hs;
  for (const auto& h : body.halfspaces()) {
    const double base = h.normal.dot(origin);
    hs.push_back({h.normal, base + factor * (h.offset - base)});
  }
  if (!body.vertices()) return ConvexPolytope(body.dim(), std::move(hs));
  std::vector<Point> verts;
  for (const auto& v : *body.vertices()) verts.push_back(origin + factor * (v - origin));
  return ConvexPolytope(body.dim(), std::move(hs), std::move(verts));
}

std::optional<Orthotope> as_orthotope(const ConvexPolytope& body) {
  const int n = body.dim();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> up(static_cast<std::size_t>(n), inf), down(static_cast<std::size_t>(n), inf);
  for (const auto& h : body.halfspaces()) {
    Eigen::Index axis;
    const double m = h.normal.cwiseAbs().maxCoeff(&axis);
    if (std::abs(m - 1.0) > 1e-12) return std::nullopt;
    auto& slot = h.normal[axis] > 0 ? up[static_cast<std::size_t>(axis)] : down[static_cast<std::size_t>(axis)];
    slot = std::min(slot, h.offset);
  }
  std::vector<double> half(static_cast<std::size_t>(n));
  Point center(n);
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!std::isfinite(up[k]) || !std::isfinite(down[k])) return std::nullopt;
    half[k] = 0.5 * (up[k] + down[k]);
    center[i] = 0.5 * (up[k] - down[k]);
    if (!(half[k] > 0.0)) return std::nullopt;
  }
  return Orthotope(std::move(half), std::move(center));
}

}  // namespace spl
