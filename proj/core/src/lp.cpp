#include "spl/lp.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace spl {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr int kMaxPivots = 20000;

// Tableau rows 0..m-1 are constraints, row m is the reduced-cost row
// (z_j - c_j for a maximization); the last column is the right-hand side.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<int> basis;
  int rows() const { return static_cast<int>(t.rows()) - 1; }
  int rhs() const { return static_cast<int>(t.cols()) - 1; }

  void pivot(int r, int c) {
    t.row(r) /= t(r, c);
    for (int i = 0; i < t.rows(); ++i) {
      if (i != r && t(i, c) != 0.0) t.row(i) -= t(i, c) * t.row(r);
    }
    basis[static_cast<std::size_t>(r)] = c;
  }
};

enum class Outcome { optimal, unbounded, stalled };

// Bland's rule on columns [0, allowed).
Outcome run_simplex(Tableau& tab, int allowed) {
  const int m = tab.rows();
  for (int iter = 0; iter < kMaxPivots; ++iter) {
    int enter = -1;
    for (int j = 0; j < allowed; ++j) {
      if (tab.t(m, j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return Outcome::optimal;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double a = tab.t(i, enter);
      if (a > kPivotEps) {
        const double ratio = tab.t(i, tab.rhs()) / a;
        if (ratio < best - 1e-14 ||
            (ratio <= best + 1e-14 && leave >= 0 &&
             tab.basis[static_cast<std::size_t>(i)] < tab.basis[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return Outcome::unbounded;
    tab.pivot(leave, enter);
  }
  return Outcome::stalled;
}

}  // namespace

LpResult lp_maximize(const Eigen::VectorXd& objective, std::span<const Halfspace> constraints) {
  const int n = static_cast<int>(objective.size());
  const int m = static_cast<int>(constraints.size());
  LpResult result;
  result.x = Eigen::VectorXd::Zero(n);

  // Columns: x+ (n), x- (n), slacks (m), artificials (one per negative rhs).
  int n_art = 0;
  for (const auto& h : constraints) n_art += h.offset < 0.0 ? 1 : 0;
  const int art0 = 2 * n + m;
  const int cols = art0 + n_art;

  Tableau tab;
  tab.t = Eigen::MatrixXd::Zero(m + 1, cols + 1);
  tab.basis.assign(static_cast<std::size_t>(m), -1);
  int next_art = art0;
  for (int i = 0; i < m; ++i) {
    const auto& h = constraints[static_cast<std::size_t>(i)];
    const double sign = h.offset < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      tab.t(i, j) = sign * h.normal[j];
      tab.t(i, n + j) = -sign * h.normal[j];
    }
    tab.t(i, 2 * n + i) = sign;
    tab.t(i, cols) = sign * h.offset;
    if (sign < 0.0) {
      tab.t(i, next_art) = 1.0;
      tab.basis[static_cast<std::size_t>(i)] = next_art++;
    } else {
      tab.basis[static_cast<std::size_t>(i)] = 2 * n + i;
    }
  }

  if (n_art > 0) {
    // Phase 1: maximize -sum(artificials).
    for (int j = art0; j < cols; ++j) tab.t(m, j) = 1.0;
    for (int i = 0; i < m; ++i) {
      if (tab.basis[static_cast<std::size_t>(i)] >= art0) tab.t.row(m) -= tab.t.row(i);
    }
    if (run_simplex(tab, cols) != Outcome::optimal) return result;
    double scale = 1.0;
    for (const auto& h : constraints) scale = std::max(scale, std::abs(h.offset));
    if (tab.t(m, cols) < -1e-9 * scale) {
      result.status = LpStatus::infeasible;
      return result;
    }
    // Drive remaining zero-level artificials out of the basis.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[static_cast<std::size_t>(i)] < art0) continue;
      for (int j = 0; j < art0; ++j) {
        if (std::abs(tab.t(i, j)) > kPivotEps) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase 2 on the original columns only.
  tab.t.row(m).setZero();
  for (int j = 0; j < n; ++j) {
    tab.t(m, j) = -objective[j];
    tab.t(m, n + j) = objective[j];
  }
  for (int i = 0; i < m; ++i) {
    const int b = tab.basis[static_cast<std::size_t>(i)];
    if (b < art0 && tab.t(m, b) != 0.0) tab.t.row(m) -= tab.t(m, b) * tab.t.row(i);
  }
  switch (run_simplex(tab, art0)) {
    case Outcome::unbounded:
      result.status = LpStatus::unbounded;
      return result;
    case Outcome::stalled:
      result.status = LpStatus::infeasible;
      return result;
    case Outcome::optimal:
      break;
  }
  for (int i = 0; i < m; ++i) {
    const int b = tab.basis[static_cast<std::size_t>(i)];
    if (b < n) result.x[b] += tab.t(i, cols);
    else if (b < 2 * n) result.x[b - n] -= tab.t(i, cols);
  }
  result.status = LpStatus::optimal;
  result.value = objective.dot(result.x);
  return result;
}

}  // namespace spl
