#pragma once

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "spl/geometry.hpp"

namespace support {

inline spl::Point pt(std::initializer_list<double> xs) {
  spl::Point p(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

inline spl::ConvexPolytope polygon(std::initializer_list<std::initializer_list<double>> xs) {
  std::vector<spl::Point> pts;
  for (auto x : xs) pts.push_back(pt(x));
  return spl::ConvexPolytope::polygon(pts);
}

inline spl::ConvexPolytope regular_polygon(int sides, double radius = 1.0) {
  std::vector<spl::Point> pts;
  for (int i = 0; i < sides; ++i) {
    const double t = 2.0 * std::numbers::pi * i / sides;
    pts.push_back(pt({radius * std::cos(t), radius * std::sin(t)}));
  }
  return spl::ConvexPolytope::polygon(pts);
}

inline spl::ConvexPolytope unit_square() { return polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

inline constexpr double pi2 = std::numbers::pi * std::numbers::pi;

}  // namespace support
