#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "spl/geometry.hpp"
#include "spl/spectra.hpp"

namespace spl {

struct TriMesh {
  std::vector<Eigen::Vector2d> vertices;
  std::vector<std::array<int, 3>> triangles;  // counter-clockwise
  double h = 0.0;                             // target edge length

  double area() const;
  double min_angle_degrees() const;
  double max_edge() const;
};

// Delaunay mesh of a convex polygon: boundary edges split into pieces of
// length <= h plus a square grid of spacing h kept at distance >= h/2 from
// the boundary. Built incrementally with Lawson flips.
TriMesh triangulate(const ConvexPolytope& polygon, double h);

using SparseMatrix = Eigen::SparseMatrix<double>;

// P1 stiffness and consistent mass matrices with natural (Neumann) boundary.
struct OperatorPair {
  SparseMatrix stiffness;
  SparseMatrix mass;
  int dofs = 0;
};

OperatorPair assemble(const TriMesh& mesh);

struct EigenSolveInfo {
  int basis_size = 0;
  double max_residual = 0.0;
};

// k+1 smallest generalized eigenvalues of (stiffness, mass). The constant
// mode is deflated and the rest is found by a block Krylov method on the
// inverse operator (shift-invert at zero). Each returned pair satisfies
// |K u - lambda M u| / |M u| <= tol * max(1, lambda).
Spectrum smallest_neumann_eigs(const OperatorPair& ops, int k, double tol = 1e-8,
                               EigenSolveInfo* info = nullptr,
                               std::vector<Eigen::VectorXd>* eigenvectors = nullptr);

struct PolygonSpectrumOptions {
  double solver_tol = 1e-8;
  int max_halvings = 5;
};

// triangulate -> assemble -> solve, halving h until two successive levels
// agree on mu_1..mu_k to relative `tol`. rel_error is the Richardson
// estimate |mu(h) - mu(h/2)| / (3 mu(h/2)) from the last two levels.
Spectrum polygon_spectrum(const ConvexPolytope& polygon, int k, double h, double tol,
                          const PolygonSpectrumOptions& options = {});

// Coordinate-triplet text, one "row col value" line per stored entry.
void write_triplets(std::ostream& os, const SparseMatrix& m);

}  // namespace spl
