#include "spl/john.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "spl/error.hpp"

namespace spl {
namespace {

constexpr int kMaxNewton = 4000;

// Barrier problem for the maximum-volume inscribed ellipsoid
// {B u + d : |u| <= 1}:  minimize  -t log det B - sum_i log(b_i - a_i.d - |B a_i|).
// B is symmetric, parametrized by its upper triangle theta.
class MvieBarrier {
 public:
  MvieBarrier(const ConvexPolytope& body) : n_(body.dim()), p_(n_ * (n_ + 1) / 2) {
    for (int i = 0; i < n_; ++i) {
      for (int j = i; j < n_; ++j) {
        Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n_, n_);
        e(i, j) = 1.0;
        e(j, i) = 1.0;
        basis_.push_back(e);
      }
    }
    for (const auto& h : body.halfspaces()) {
      Eigen::MatrixXd m(n_, p_);
      for (int k = 0; k < p_; ++k) m.col(k) = basis_[static_cast<std::size_t>(k)] * h.normal;
      rows_.push_back({h.normal, h.offset, m});
    }
  }

  int size() const { return p_ + n_; }
  int constraints() const { return static_cast<int>(rows_.size()); }

  Eigen::MatrixXd shape(const Eigen::VectorXd& z) const {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n_, n_);
    for (int k = 0; k < p_; ++k) b += z[k] * basis_[static_cast<std::size_t>(k)];
    return 0.5 * (b + b.transpose());
  }
  Eigen::VectorXd offset(const Eigen::VectorXd& z) const { return z.tail(n_); }

  // Returns +inf outside the domain.
  double value(const Eigen::VectorXd& z, double t) const {
    const Eigen::MatrixXd b = shape(z);
    Eigen::LLT<Eigen::MatrixXd> llt(b);
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    double logdet = 0.0;
    for (int i = 0; i < n_; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
    if (!std::isfinite(logdet)) return std::numeric_limits<double>::infinity();
    const Eigen::VectorXd d = offset(z);
    double f = -t * logdet;
    for (const auto& r : rows_) {
      const double s = r.b - r.a.dot(d) - (b * r.a).norm();
      if (!(s > 0.0)) return std::numeric_limits<double>::infinity();
      f -= std::log(s);
    }
    return f;
  }

  void derivatives(const Eigen::VectorXd& z, double t, Eigen::VectorXd& g, Eigen::MatrixXd& h) const {
    const int dim = size();
    g = Eigen::VectorXd::Zero(dim);
    h = Eigen::MatrixXd::Zero(dim, dim);
    const Eigen::MatrixXd b = shape(z);
    const Eigen::MatrixXd binv = b.inverse();
    for (int k = 0; k < p_; ++k) {
      const Eigen::MatrixXd bk = binv * basis_[static_cast<std::size_t>(k)];
      g[k] -= t * bk.trace();
      for (int l = 0; l < p_; ++l) h(k, l) += t * (bk * binv * basis_[static_cast<std::size_t>(l)]).trace();
    }
    const Eigen::VectorXd d = offset(z);
    for (const auto& r : rows_) {
      const Eigen::VectorXd y = b * r.a;
      const double ny = std::max(y.norm(), 1e-300);
      const double s = r.b - r.a.dot(d) - ny;
      Eigen::VectorXd ds(dim);
      ds.head(p_) = -r.m.transpose() * y / ny;
      ds.tail(n_) = -r.a;
      g -= ds / s;
      h += ds * ds.transpose() / (s * s);
      const Eigen::MatrixXd proj =
          (Eigen::MatrixXd::Identity(n_, n_) - y * y.transpose() / (ny * ny)) / ny;
      h.topLeftCorner(p_, p_) += r.m.transpose() * proj * r.m / s;
    }
  }

 private:
  struct Row {
    Eigen::VectorXd a;
    double b;
    Eigen::MatrixXd m;  // B a = m * theta
  };
  int n_;
  int p_;
  std::vector<Eigen::MatrixXd> basis_;
  std::vector<Row> rows_;
};

JohnBox make_john_box(const ConvexPolytope& body, std::vector<double> half, Point center, Eigen::MatrixXd rot,
                      int steps) {
  JohnBox jb{Orthotope(std::move(half)), std::move(center), std::move(rot), 0.0, 0.0, steps};
  const int n = body.dim();
  const double scale = body.scale();
  const auto inner = contains(body, jb.world(1.0 / std::sqrt(static_cast<double>(n))));
  const auto outer = contains(jb.world(static_cast<double>(n)), body.vertices() || n > 4 ? body : body.with_vertices());
  jb.inner_margin = -inner.max_violation / scale;
  jb.outer_margin = -outer.max_violation / scale;
  return jb;
}

}  // namespace

ConvexPolytope JohnBox::world(double factor) const {
  const int n = box.dim();
  std::vector<Halfspace> hs;
  for (int i = 0; i < n; ++i) {
    const Point axis = rotation.col(i);
    const double base = axis.dot(center);
    hs.push_back({axis, base + factor * box.half_length(i)});
    hs.push_back({-axis, -base + factor * box.half_length(i)});
  }
  std::vector<Point> verts;
  for (const auto& c : box.corners()) verts.push_back(center + factor * (rotation * c));
  return ConvexPolytope(n, std::move(hs), std::move(verts));
}

JohnBox john_box(const ConvexPolytope& body) {
  const int n = body.dim();
  if (n != 2 && n != 3) {
    const auto box = as_orthotope(body);
    if (!box) throw Error("john_box supports dimension 2 or 3 (or axis-aligned boxes)");
    return make_john_box(body, box->half_lengths(), box->center(), Eigen::MatrixXd::Identity(n, n), 0);
  }

  // Chebyshev center as a strictly feasible start: max tau s.t. a.x + tau <= b.
  std::vector<Halfspace> cheb;
  for (const auto& h : body.halfspaces()) {
    Point a(n + 1);
    a << h.normal, 1.0;
    cheb.push_back({a, h.offset});
  }
  Point obj = Point::Zero(n + 1);
  obj[n] = 1.0;
  const auto lp = lp_maximize(obj, cheb);
  if (lp.status != LpStatus::optimal) throw Error("unbounded");
  const double radius = lp.x[n];
  if (!(radius > 1e-9 * body.scale())) throw Error("not full-dimensional");

  MvieBarrier barrier(body);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(barrier.size());
  {
    int k = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j, ++k) z[k] = i == j ? 0.5 * radius : 0.0;
    }
    z.tail(n) = lp.x.head(n);
  }

  const double m = barrier.constraints();
  double t = 1.0;
  int steps = 0;
  double decrement = 0.0;
  Eigen::VectorXd g;
  Eigen::MatrixXd hess;
  while (true) {
    // Centering by damped Newton.
    for (int inner = 0; inner < 200; ++inner) {
      barrier.derivatives(z, t, g, hess);
      const Eigen::VectorXd step = hess.ldlt().solve(-g);
      decrement = -g.dot(step);
      if (!(decrement >= 0.0) || decrement < 1e-20) break;
      if (0.5 * decrement < 1e-14) break;
      const double f0 = barrier.value(z, t);
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        const Eigen::VectorXd trial = z + alpha * step;
        if (barrier.value(trial, t) <= f0 - 0.25 * alpha * decrement) {
          z = trial;
          moved = true;
          break;
        }
      }
      ++steps;
      if (!moved || steps > kMaxNewton) break;
    }
    if (steps > kMaxNewton) {
      throw Error("MVIE did not converge: Newton decrement " + std::to_string(decrement));
    }
    if (m / t < 1e-12) break;
    t *= 8.0;
  }

  const Eigen::MatrixXd b = barrier.shape(z);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
  Eigen::MatrixXd rot = eig.eigenvectors();
  for (int i = 0; i < n; ++i) {
    Eigen::Index arg;
    rot.col(i).cwiseAbs().maxCoeff(&arg);
    if (rot(arg, i) < 0.0) rot.col(i) *= -1.0;
  }
  std::vector<double> half(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) half[static_cast<std::size_t>(i)] = eig.eigenvalues()[i];
  return make_john_box(body, std::move(half), barrier.offset(z), std::move(rot), steps);
}

}  // namespace spl
