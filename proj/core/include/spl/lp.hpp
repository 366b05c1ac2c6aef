#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

namespace spl {

// A closed halfspace {x : normal . x <= offset}.
struct Halfspace {
  Eigen::VectorXd normal;
  double offset = 0.0;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  Eigen::VectorXd x;
};

// maximize objective . x  subject to  h.normal . x <= h.offset for all h,
// x free. Dense two-phase simplex with Bland's rule; intended for the small
// (n <= 10, m <= a few hundred) programs that certify containments.
LpResult lp_maximize(const Eigen::VectorXd& objective,
                     std::span<const Halfspace> constraints);

}  // namespace spl
