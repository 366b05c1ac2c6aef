#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "spl/error.hpp"
#include "spl/mesh_fem.hpp"
#include "support.hpp"

using support::pi2;

namespace {

double signed_area(const spl::TriMesh& m, const std::array<int, 3>& t) {
  const auto& a = m.vertices[static_cast<std::size_t>(t[0])];
  const auto& b = m.vertices[static_cast<std::size_t>(t[1])];
  const auto& c = m.vertices[static_cast<std::size_t>(t[2])];
  return 0.5 * ((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
}

}  // namespace

TEST_SUITE("mesh_fem") {
  TEST_CASE("mesh of the unit square") {
    const auto mesh = spl::triangulate(support::unit_square(), 0.1);
    CHECK(mesh.area() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mesh.min_angle_degrees() >= 20.0);
    CHECK(mesh.max_edge() <= 0.1 * 1.5);
    double sum = 0.0;
    for (const auto& t : mesh.triangles) {
      const double a = signed_area(mesh, t);
      CHECK(a > 0.0);
      sum += a;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& v : mesh.vertices) {
      CHECK(v.x() >= -1e-12);
      CHECK(v.x() <= 1 + 1e-12);
      CHECK(v.y() >= -1e-12);
      CHECK(v.y() <= 1 + 1e-12);
    }
  }

  TEST_CASE("mesh quality on a thin polygon and a disc") {
    const auto thin = support::polygon({{0, 0}, {5, 0}, {5.2, 0.4}, {0.3, 0.5}});
    const auto m1 = spl::triangulate(thin, 0.05);
    CHECK(m1.min_angle_degrees() >= 20.0);
    CHECK(m1.area() == doctest::Approx(spl::volume(thin)).epsilon(1e-12));
    const auto disc = support::regular_polygon(128);
    const auto m2 = spl::triangulate(disc, 0.05);
    CHECK(m2.min_angle_degrees() >= 20.0);
    CHECK(m2.area() == doctest::Approx(spl::volume(disc)).epsilon(1e-12));
  }

  TEST_CASE("assembled matrices") {
    const auto mesh = spl::triangulate(support::polygon({{0, 0}, {2, 0}, {1.5, 1}, {0, 1.2}}), 0.2);
    const auto ops = spl::assemble(mesh);
    const Eigen::MatrixXd K(ops.stiffness);
    const Eigen::MatrixXd M(ops.mass);
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(ops.dofs);
    CHECK((K - K.transpose()).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((M - M.transpose()).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((K * one).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(one.dot(K * one)) < 1e-12);
    CHECK(one.dot(M * one) == doctest::Approx(mesh.area()).epsilon(1e-12));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> mass_eig(M);
    CHECK(mass_eig.eigenvalues().minCoeff() > 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> stiff_eig(K);
    CHECK(stiff_eig.eigenvalues().minCoeff() > -1e-10);
  }

  TEST_CASE("solver: constant mode, residuals, dense cross-check") {
    const auto mesh = spl::triangulate(support::unit_square(), 0.125);
    const auto ops = spl::assemble(mesh);
    spl::EigenSolveInfo info;
    std::vector<Eigen::VectorXd> vecs;
    const auto s = spl::smallest_neumann_eigs(ops, 6, 1e-10, &info, &vecs);
    REQUIRE(s.values.size() == 7);
    CHECK(std::abs(s.values[0]) < 1e-10);
    CHECK(info.max_residual <= 1e-10);
    const Eigen::VectorXd c = vecs[0] / vecs[0][0];
    CHECK((c - Eigen::VectorXd::Ones(ops.dofs)).cwiseAbs().maxCoeff() < 1e-12);

    const Eigen::MatrixXd K(ops.stiffness);
    const Eigen::MatrixXd M(ops.mass);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> dense(K, M);
    for (int i = 1; i <= 6; ++i) CHECK(s.values[static_cast<std::size_t>(i)] == doctest::Approx(dense.eigenvalues()[i]).epsilon(1e-8));
    for (std::size_t i = 1; i < vecs.size(); ++i) {
      const auto& u = vecs[i];
      CHECK((K * u - s.values[i] * (M * u)).norm() / (M * u).norm() <= 1e-10 * std::max(1.0, s.values[i]));
    }
  }

  TEST_CASE("unit square converges at second order") {
    std::vector<double> err;
    for (double h : {0.1, 0.05, 0.025}) {
      const auto s = spl::smallest_neumann_eigs(spl::assemble(spl::triangulate(support::unit_square(), h)), 4);
      err.push_back(std::abs(s.values[1] - pi2) / pi2);
      CHECK(s.values[1] >= pi2 * (1 - 1e-9));
      CHECK(s.values[2] == doctest::Approx(s.values[1]).epsilon(1e-2));
      CHECK(s.values[3] == doctest::Approx(2 * pi2).epsilon(5e-2));
    }
    CHECK(err.back() < 1e-2);
    for (std::size_t i = 1; i < err.size(); ++i) {
      const double order = std::log2(err[i - 1] / err[i]);
      CHECK(order > 1.7);
      CHECK(order < 2.3);
    }
  }

  TEST_CASE("disc against the Bessel root") {
    const double exact = oracle::disc_mu1();
    CHECK(exact == doctest::Approx(3.3900).epsilon(1e-4));
    const auto s = spl::polygon_spectrum(support::regular_polygon(256), 2, 0.05, 5e-3);
    CHECK(std::abs(s.values[1] - exact) / exact < 1e-2);
    CHECK(s.values[2] == doctest::Approx(s.values[1]).epsilon(1e-2));
    CHECK(s.source == spl::SpectrumSource::fem);
    CHECK(s.rel_error > 0.0);
    CHECK(s.rel_error < 5e-3);
  }

  TEST_CASE("right isosceles triangle and Payne-Weinberger") {
    const auto tri = support::polygon({{0, 0}, {1, 0}, {0, 1}});
    const auto s = spl::polygon_spectrum(tri, 1, 0.05, 5e-3);
    CHECK(std::abs(s.values[1] - pi2) / pi2 < 1e-2);
    CHECK(s.values[1] >= spl::pw_lower_bound(std::sqrt(2.0)));
  }

  TEST_CASE("scaling the mesh scales the spectrum") {
    auto mesh = spl::triangulate(support::polygon({{0, 0}, {1.3, 0.1}, {1, 1}, {-0.2, 0.7}}), 0.1);
    const auto base = spl::smallest_neumann_eigs(spl::assemble(mesh), 5, 1e-11);
    for (auto& v : mesh.vertices) v *= 2.5;
    const auto big = spl::smallest_neumann_eigs(spl::assemble(mesh), 5, 1e-11);
    for (int i = 1; i <= 5; ++i) {
      CHECK(big.values[static_cast<std::size_t>(i)] * 6.25 ==
            doctest::Approx(base.values[static_cast<std::size_t>(i)]).epsilon(1e-8));
    }
  }

  TEST_CASE("triplet output") {
    const auto ops = spl::assemble(spl::triangulate(support::unit_square(), 0.5));
    std::ostringstream os;
    spl::write_triplets(os, ops.stiffness);
    std::istringstream is(os.str());
    int r = 0, c = 0, lines = 0;
    double v = 0;
    Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(ops.dofs, ops.dofs);
    while (is >> r >> c >> v) {
      rebuilt(r, c) = v;
      ++lines;
    }
    CHECK(lines == ops.stiffness.nonZeros());
    CHECK((rebuilt - Eigen::MatrixXd(ops.stiffness)).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("errors") {
    spl::TriMesh flat;
    flat.vertices = {{0, 0}, {1, 0}, {2, 0}};
    flat.triangles = {{0, 1, 2}};
    CHECK_THROWS_WITH_AS(spl::assemble(flat), "degenerate triangle 0", spl::Error);
    CHECK_THROWS_WITH_AS(spl::triangulate(support::unit_square(), 1e-4), "mesh too fine: dof limit exceeded", spl::Error);
    CHECK_THROWS_AS(spl::triangulate(support::unit_square(), 0.0), spl::Error);
    CHECK_THROWS_AS(spl::triangulate(spl::Orthotope({1, 1, 1}).to_polytope(), 0.1), spl::Error);
    const auto ops = spl::assemble(spl::triangulate(support::unit_square(), 0.5));
    CHECK_THROWS_AS(spl::smallest_neumann_eigs(ops, ops.dofs), spl::Error);
    CHECK_THROWS_AS(spl::smallest_neumann_eigs(ops, 0), spl::Error);
  }
}
