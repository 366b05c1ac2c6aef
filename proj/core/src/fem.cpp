#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "spl/error.hpp"
#include "spl/mesh_fem.hpp"

namespace spl {
namespace {

constexpr int kBlock = 4;
constexpr int kMaxBasis = 800;

// y = K^+ M x restricted to the M-orthogonal complement of the constants.
// K is factored with the first dof pinned; the pinned row is consistent
// because M x has zero sum on that complement.
class InverseOperator {
 public:
  explicit InverseOperator(const OperatorPair& ops) : m_(ops.mass), n_(ops.dofs) {
    const SparseMatrix reduced = ops.stiffness.bottomRightCorner(n_ - 1, n_ - 1);
    solver_.compute(reduced);
    if (solver_.info() != Eigen::Success) throw Error("stiffness factorization failed");
    m_one_ = m_ * Eigen::VectorXd::Ones(n_);
    total_ = m_one_.sum();
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd f = m_ * x;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n_);
    y.tail(n_ - 1) = solver_.solve(f.tail(n_ - 1));
    project(y);
    return y;
  }

  void project(Eigen::VectorXd& x) const { x.array() -= m_one_.dot(x) / total_; }
  double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const { return a.dot(m_ * b); }
  double total_mass() const { return total_; }

 private:
  const SparseMatrix& m_;
  int n_;
  Eigen::SimplicialLDLT<SparseMatrix> solver_;
  Eigen::VectorXd m_one_;
  double total_ = 0.0;
};

// M-orthonormalizes x against the columns of basis (twice); false when x is
// numerically dependent.
bool orthonormalize(const InverseOperator& op, const SparseMatrix& mass, const std::vector<Eigen::VectorXd>& basis,
                    Eigen::VectorXd& x) {
  const double before = std::sqrt(std::max(0.0, op.inner(x, x)));
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd mx = mass * x;
    for (const auto& v : basis) x -= v.dot(mx) * v;
    op.project(x);
  }
  const double after = std::sqrt(std::max(0.0, op.inner(x, x)));
  if (!(after > 1e-10 * before) || after == 0.0) return false;
  x /= after;
  return true;
}

}  // namespace

OperatorPair assemble(const TriMesh& mesh) {
  const int n = static_cast<int>(mesh.vertices.size());
  std::vector<Eigen::Triplet<double>> kt, mt;
  kt.reserve(9 * mesh.triangles.size());
  mt.reserve(9 * mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    Eigen::Vector2d p[3];
    for (int i = 0; i < 3; ++i) {
      const int v = tri[static_cast<std::size_t>(i)];
      if (v < 0 || v >= n) throw Error("triangle " + std::to_string(t) + " references a missing vertex");
      p[i] = mesh.vertices[static_cast<std::size_t>(v)];
    }
    const double twice = (p[1].x() - p[0].x()) * (p[2].y() - p[0].y()) - (p[1].y() - p[0].y()) * (p[2].x() - p[0].x());
    const double area = 0.5 * twice;
    const double ref = std::max({(p[1] - p[0]).squaredNorm(), (p[2] - p[1]).squaredNorm(), (p[0] - p[2]).squaredNorm()});
    if (!(area > 1e-14 * ref)) throw Error("degenerate triangle " + std::to_string(t));
    // grad phi_i = rot90(edge opposite i) / (2 area).
    Eigen::Vector2d g[3];
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector2d e = p[(i + 2) % 3] - p[(i + 1) % 3];
      g[i] = Eigen::Vector2d(-e.y(), e.x()) / twice;
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const int a = tri[static_cast<std::size_t>(i)];
        const int b = tri[static_cast<std::size_t>(j)];
        kt.emplace_back(a, b, area * g[i].dot(g[j]));
        mt.emplace_back(a, b, area * (i == j ? 2.0 : 1.0) / 12.0);
      }
    }
  }
  OperatorPair ops;
  ops.dofs = n;
  ops.stiffness.resize(n, n);
  ops.mass.resize(n, n);
  ops.stiffness.setFromTriplets(kt.begin(), kt.end());
  ops.mass.setFromTriplets(mt.begin(), mt.end());
  return ops;
}

Spectrum smallest_neumann_eigs(const OperatorPair& ops, int k, double tol, EigenSolveInfo* info,
                               std::vector<Eigen::VectorXd>* eigenvectors) {
  const int n = ops.dofs;
  if (k < 1) throw Error("k must be >= 1");
  if (k + 1 > n) throw Error("k + 1 exceeds the number of degrees of freedom");
  if (!(tol > 0.0)) throw Error("tolerance must be positive");

  InverseOperator op(ops);
  const SparseMatrix& K = ops.stiffness;
  const SparseMatrix& M = ops.mass;
  const int limit = std::min(n - 1, std::max(kMaxBasis, 4 * k + 40));

  std::vector<Eigen::VectorXd> basis;   // M-orthonormal Krylov basis
  std::vector<Eigen::VectorXd> images;  // operator applied to each basis vector
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> gauss;

  std::vector<Eigen::VectorXd> block;
  for (int b = 0; b < kBlock; ++b) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = gauss(rng);
    op.project(x);
    if (orthonormalize(op, M, basis, x)) {
      basis.push_back(x);
      block.push_back(x);
    }
  }

  std::vector<Eigen::VectorXd> m_images;
  Eigen::MatrixXd proj(0, 0);
  std::vector<double> lambdas;
  std::vector<Eigen::VectorXd> vectors;
  double worst = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<Eigen::VectorXd> next;
    for (const auto& v : block) images.push_back(op.apply(v));
    for (std::size_t b = images.size() - block.size(); b < images.size(); ++b) {
      if (static_cast<int>(basis.size()) >= limit) break;
      Eigen::VectorXd x = images[b];
      if (orthonormalize(op, M, basis, x)) {
        basis.push_back(x);
        next.push_back(x);
      }
    }
    const bool exhausted = next.empty() || static_cast<int>(basis.size()) >= limit;

    const int s = static_cast<int>(images.size());
    // Projected operator basis^T M images, grown by the new block.
    const int s0 = static_cast<int>(proj.rows());
    proj.conservativeResize(s, s);
    for (int j = s0; j < s; ++j) m_images.push_back(M * images[static_cast<std::size_t>(j)]);
    for (int i = 0; i < s; ++i) {
      for (int j = std::max(s0, i); j < s; ++j) {
        const double v = 0.5 * (basis[static_cast<std::size_t>(i)].dot(m_images[static_cast<std::size_t>(j)]) +
                                basis[static_cast<std::size_t>(j)].dot(m_images[static_cast<std::size_t>(i)]));
        proj(i, j) = v;
        proj(j, i) = v;
      }
    }
    if (s >= k) {
      const Eigen::MatrixXd& h = proj;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
      lambdas.clear();
      vectors.clear();
      worst = 0.0;
      for (int r = 0; r < k; ++r) {
        const int col = s - 1 - r;
        const double theta = eig.eigenvalues()[col];
        if (!(theta > 0.0)) {
          worst = std::numeric_limits<double>::infinity();
          break;
        }
        Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
        for (int j = 0; j < s; ++j) u += eig.eigenvectors()(j, col) * basis[static_cast<std::size_t>(j)];
        const double lam = 1.0 / theta;
        const Eigen::VectorXd mu = M * u;
        const double res = (K * u - lam * mu).norm() / mu.norm();
        worst = std::max(worst, res / std::max(1.0, lam));
        lambdas.push_back(lam);
        vectors.push_back(std::move(u));
      }
      if (worst <= tol) break;
    }
    if (exhausted) {
      throw Error("eigensolver did not converge: worst relative residual " + std::to_string(worst) +
                  " with basis size " + std::to_string(basis.size()));
    }
    block = std::move(next);
  }

  Spectrum spec;
  spec.source = SpectrumSource::fem;
  spec.rel_error = 0.0;
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(n);
  spec.values.push_back(std::max(0.0, one.dot(K * one) / op.total_mass()));
  std::vector<int> order(lambdas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lambdas[static_cast<std::size_t>(a)] < lambdas[static_cast<std::size_t>(b)]; });
  for (int i : order) spec.values.push_back(lambdas[static_cast<std::size_t>(i)]);
  if (eigenvectors) {
    eigenvectors->clear();
    eigenvectors->push_back(one / std::sqrt(op.total_mass()));
    for (int i : order) eigenvectors->push_back(vectors[static_cast<std::size_t>(i)]);
  }
  if (info) {
    info->basis_size = static_cast<int>(basis.size());
    info->max_residual = worst;
  }
  return spec;
}

Spectrum polygon_spectrum(const ConvexPolytope& polygon, int k, double h, double tol,
                          const PolygonSpectrumOptions& options) {
  if (!(tol > 0.0)) throw Error("tolerance must be positive");
  Spectrum prev;
  Spectrum cur;
  double mesh_h = h;
  for (int level = 0; level <= options.max_halvings; ++level, mesh_h *= 0.5) {
    const TriMesh mesh = triangulate(polygon, mesh_h);
    if (static_cast<int>(mesh.vertices.size()) < k + 2) continue;
    cur = smallest_neumann_eigs(assemble(mesh), k, options.solver_tol);
    if (!prev.values.empty()) {
      double change = 0.0;
      for (int i = 1; i <= k; ++i) {
        const double a = prev.values[static_cast<std::size_t>(i)];
        const double b = cur.values[static_cast<std::size_t>(i)];
        change = std::max(change, std::abs(a - b) / b);
      }
      cur.rel_error = change / 3.0;
      if (change <= tol) return cur;
    }
    prev = cur;
  }
  if (cur.values.empty()) throw Error("mesh too coarse for the requested number of eigenvalues");
  return cur;
}

void write_triplets(std::ostream& os, const SparseMatrix& m) {
  const auto old = os.precision(17);
  for (int col = 0; col < m.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
  }
  os.precision(old);
}

}  // namespace spl
