#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "spl/error.hpp"
#include "spl/mesh_fem.hpp"

namespace spl {
namespace {

constexpr double kMaxDofs = 2e6;

using Vec2 = Eigen::Vector2d;

double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

// > 0 when d lies inside the circumcircle of the counter-clockwise a, b, c.
long double incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const long double adx = a.x() - d.x(), ady = a.y() - d.y();
  const long double bdx = b.x() - d.x(), bdy = b.y() - d.y();
  const long double cdx = c.x() - d.x(), cdy = c.y() - d.y();
  const long double ad = adx * adx + ady * ady;
  const long double bd = bdx * bdx + bdy * bdy;
  const long double cd = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

// Triangulation keyed by directed edges: edge (u, v) belongs to the
// triangle that traverses it counter-clockwise.
class Triangulation {
 public:
  explicit Triangulation(std::vector<Vec2> pts, double scale)
      : pts_(std::move(pts)), orient_eps_(1e-12 * scale * scale) {}

  const std::vector<Vec2>& points() const { return pts_; }

  int add(int a, int b, int c) {
    int id;
    if (!free_.empty()) {
      id = free_.back();
      free_.pop_back();
      tris_[static_cast<std::size_t>(id)] = {a, b, c};
      alive_[static_cast<std::size_t>(id)] = true;
    } else {
      id = static_cast<int>(tris_.size());
      tris_.push_back({a, b, c});
      alive_.push_back(true);
    }
    edges_[key(a, b)] = id;
    edges_[key(b, c)] = id;
    edges_[key(c, a)] = id;
    last_ = id;
    return id;
  }

  void remove(int id) {
    const auto& t = tris_[static_cast<std::size_t>(id)];
    for (int i = 0; i < 3; ++i) {
      auto it = edges_.find(key(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>((i + 1) % 3)]));
      if (it != edges_.end() && it->second == id) edges_.erase(it);
    }
    alive_[static_cast<std::size_t>(id)] = false;
    free_.push_back(id);
  }

  int owner(int u, int v) const {
    auto it = edges_.find(key(u, v));
    return it == edges_.end() ? -1 : it->second;
  }

  // Inserts point p (an index into points()).
  void insert(int p) {
    const Vec2& q = pts_[static_cast<std::size_t>(p)];
    const int t = locate(q);
    const auto tri = tris_[static_cast<std::size_t>(t)];
    for (int e = 0; e < 3; ++e) {
      const int a = tri[static_cast<std::size_t>(e)];
      const int b = tri[static_cast<std::size_t>((e + 1) % 3)];
      const int c = tri[static_cast<std::size_t>((e + 2) % 3)];
      if (std::abs(orient(pts_[static_cast<std::size_t>(a)], pts_[static_cast<std::size_t>(b)], q)) > orient_eps_)
        continue;
      // q on edge (a, b).
      const int u = owner(b, a);
      remove(t);
      add(c, a, p);
      add(b, c, p);
      if (u >= 0) {
        const auto other = tris_[static_cast<std::size_t>(u)];
        int d = -1;
        for (int x : other) {
          if (x != a && x != b) d = x;
        }
        remove(u);
        add(a, d, p);
        add(d, b, p);
        legalize(p, a, d);
        legalize(p, d, b);
      }
      legalize(p, c, a);
      legalize(p, b, c);
      return;
    }
    const int a = tri[0], b = tri[1], c = tri[2];
    remove(t);
    add(a, b, p);
    add(b, c, p);
    add(c, a, p);
    legalize(p, a, b);
    legalize(p, b, c);
    legalize(p, c, a);
  }

  // Flips every non-locally-Delaunay interior edge until none remain.
  void make_delaunay() {
    bool flipped = true;
    while (flipped) {
      flipped = false;
      for (std::size_t id = 0; id < tris_.size(); ++id) {
        if (!alive_[id]) continue;
        const auto t = tris_[id];
        for (int e = 0; e < 3 && alive_[id]; ++e) {
          if (flip_if_needed(t[static_cast<std::size_t>((e + 2) % 3)], t[static_cast<std::size_t>(e)],
                             t[static_cast<std::size_t>((e + 1) % 3)]) >= 0) {
            flipped = true;
            break;
          }
        }
      }
    }
  }

  std::vector<std::array<int, 3>> triangles() const {
    std::vector<std::array<int, 3>> out;
    for (std::size_t i = 0; i < tris_.size(); ++i) {
      if (alive_[i]) out.push_back(tris_[i]);
    }
    return out;
  }

 private:
  static std::uint64_t key(int u, int v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
  }

  int locate(const Vec2& q) {
    int t = last_;
    if (t < 0 || !alive_[static_cast<std::size_t>(t)]) {
      for (std::size_t i = 0; i < alive_.size(); ++i) {
        if (alive_[i]) t = static_cast<int>(i);
      }
    }
    for (std::size_t step = 0; step < 4 * tris_.size() + 16; ++step) {
      const auto tri = tris_[static_cast<std::size_t>(t)];
      int next = -1;
      const int start = static_cast<int>(step % 3);
      for (int k = 0; k < 3; ++k) {
        const int e = (start + k) % 3;
        const int a = tri[static_cast<std::size_t>(e)];
        const int b = tri[static_cast<std::size_t>((e + 1) % 3)];
        if (orient(pts_[static_cast<std::size_t>(a)], pts_[static_cast<std::size_t>(b)], q) < -orient_eps_) {
          next = owner(b, a);
          if (next < 0) throw Error("mesh point outside polygon");
          break;
        }
      }
      if (next < 0) return t;
      t = next;
    }
    // Walk failed to terminate; fall back to a scan.
    for (std::size_t i = 0; i < tris_.size(); ++i) {
      if (!alive_[i]) continue;
      const auto& tri = tris_[i];
      bool inside = true;
      for (int e = 0; e < 3 && inside; ++e) {
        inside = orient(pts_[static_cast<std::size_t>(tri[static_cast<std::size_t>(e)])],
                        pts_[static_cast<std::size_t>(tri[static_cast<std::size_t>((e + 1) % 3)])], q) >= -orient_eps_;
      }
      if (inside) return static_cast<int>(i);
    }
    throw Error("mesh point outside polygon");
  }

  // Triangle (w, u, v) was just created with edge (u, v) opposite w.
  void legalize(int w, int u, int v) {
    std::vector<std::array<int, 3>> stack{{w, u, v}};
    while (!stack.empty()) {
      const auto [pw, pu, pv] = stack.back();
      stack.pop_back();
      const int d = flip_if_needed(pw, pu, pv);
      if (d >= 0) {
        stack.push_back({pw, pu, d});
        stack.push_back({pw, d, pv});
      }
    }
  }

  // Checks edge (u, v) of triangle (w, u, v) against the opposite vertex;
  // flips when it is not locally Delaunay. Returns the opposite vertex on a
  // flip, -1 otherwise.
  int flip_if_needed(int w, int u, int v) {
    const int t = owner(u, v);
    const int s = owner(v, u);
    if (t < 0 || s < 0) return -1;
    const auto& own = tris_[static_cast<std::size_t>(t)];
    if (own[0] != w && own[1] != w && own[2] != w) return -1;
    int d = -1;
    for (int x : tris_[static_cast<std::size_t>(s)]) {
      if (x != u && x != v) d = x;
    }
    const Vec2& pw = pts_[static_cast<std::size_t>(w)];
    const Vec2& pu = pts_[static_cast<std::size_t>(u)];
    const Vec2& pv = pts_[static_cast<std::size_t>(v)];
    const Vec2& pd = pts_[static_cast<std::size_t>(d)];
    const double len = std::max({(pu - pw).norm(), (pv - pw).norm(), (pd - pw).norm()});
    const long double tol = 1e-10L * static_cast<long double>(len * len * len * len);
    if (incircle(pw, pu, pv, pd) <= tol) return -1;
    if (orient(pw, pu, pd) <= orient_eps_ || orient(pw, pd, pv) <= orient_eps_) return -1;
    remove(t);
    remove(s);
    add(w, u, d);
    add(w, d, v);
    return d;
  }

  std::vector<Vec2> pts_;
  std::vector<std::array<int, 3>> tris_;
  std::vector<bool> alive_;
  std::vector<int> free_;
  std::unordered_map<std::uint64_t, int> edges_;
  int last_ = -1;
  double orient_eps_;
};

}  // namespace

double TriMesh::area() const {
  double a = 0.0;
  for (const auto& t : triangles) {
    a += 0.5 * orient(vertices[static_cast<std::size_t>(t[0])], vertices[static_cast<std::size_t>(t[1])],
                      vertices[static_cast<std::size_t>(t[2])]);
  }
  return a;
}

double TriMesh::min_angle_degrees() const {
  double best = 180.0;
  for (const auto& t : triangles) {
    for (int i = 0; i < 3; ++i) {
      const Vec2& p = vertices[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
      const Vec2& q = vertices[static_cast<std::size_t>(t[static_cast<std::size_t>((i + 1) % 3)])];
      const Vec2& r = vertices[static_cast<std::size_t>(t[static_cast<std::size_t>((i + 2) % 3)])];
      const double c = (q - p).normalized().dot((r - p).normalized());
      best = std::min(best, std::acos(std::clamp(c, -1.0, 1.0)) * 180.0 / std::numbers::pi);
    }
  }
  return best;
}

double TriMesh::max_edge() const {
  double best = 0.0;
  for (const auto& t : triangles) {
    for (int i = 0; i < 3; ++i) {
      best = std::max(best, (vertices[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])] -
                             vertices[static_cast<std::size_t>(t[static_cast<std::size_t>((i + 1) % 3)])])
                                .norm());
    }
  }
  return best;
}

TriMesh triangulate(const ConvexPolytope& polygon, double h) {
  if (polygon.dim() != 2) throw Error("triangulate requires a 2D polygon");
  if (!(h > 0.0)) throw Error("mesh size must be positive");
  const auto ring = polygon.ordered_polygon();
  if (ring.size() < 3) throw Error("not full-dimensional");
  const Orthotope bbox = polygon.bounding_box();
  const double scale = bbox.diameter();
  const double area = volume(polygon);
  if (area / (h * h) + 4.0 * scale / h > kMaxDofs) throw Error("mesh too fine: dof limit exceeded");

  std::vector<Vec2> pts;
  for (const auto& v : ring) pts.emplace_back(v[0], v[1]);
  const std::size_t corners = pts.size();
  // Boundary subdivision.
  for (std::size_t i = 0; i < corners; ++i) {
    const Vec2 p = pts[i];
    const Vec2 q = pts[(i + 1) % corners];
    const int pieces = std::max(1, static_cast<int>(std::ceil((q - p).norm() / h - 1e-9)));
    for (int j = 1; j < pieces; ++j) pts.push_back(p + (q - p) * (static_cast<double>(j) / pieces));
  }
  // Interior grid.
  const Point lo = bbox.lower();
  const Point hi = bbox.upper();
  const long nx = static_cast<long>(std::floor((hi[0] - lo[0]) / h + 1e-9));
  const long ny = static_cast<long>(std::floor((hi[1] - lo[1]) / h + 1e-9));
  for (long j = 0; j <= ny; ++j) {
    for (long i = 0; i <= nx; ++i) {
      const Vec2 p(lo[0] + static_cast<double>(i) * h, lo[1] + static_cast<double>(j) * h);
      double dist = std::numeric_limits<double>::infinity();
      for (const auto& f : polygon.halfspaces()) dist = std::min(dist, f.offset - f.normal[0] * p.x() - f.normal[1] * p.y());
      if (dist >= 0.5 * h - 1e-12 * scale) pts.push_back(p);
    }
  }

  Triangulation tri(pts, scale);
  for (std::size_t i = 1; i + 1 < corners; ++i) tri.add(0, static_cast<int>(i), static_cast<int>(i + 1));
  tri.make_delaunay();
  for (std::size_t i = corners; i < pts.size(); ++i) tri.insert(static_cast<int>(i));
  tri.make_delaunay();

  TriMesh mesh;
  mesh.vertices = std::move(pts);
  mesh.triangles = tri.triangles();
  mesh.h = h;
  return mesh;
}

}  // namespace spl
