#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "spl/error.hpp"
#include "spl/spectra.hpp"
#include "support.hpp"

using support::pi2;

namespace {

std::vector<double> random_half_lengths(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(n));
  for (double& v : a) v = 0.5 * std::pow(10.0, 1.5 * u(rng));
  return a;
}

}  // namespace

TEST_SUITE("spectra") {
  TEST_CASE("closed forms") {
    auto s = spl::orthotope_spectrum(spl::Orthotope({0.5, 0.5}), 4);
    REQUIRE(s.values.size() == 5);
    CHECK(s.values[0] == 0.0);
    CHECK(s.values[1] == doctest::Approx(pi2).epsilon(1e-14));
    CHECK(s.values[2] == doctest::Approx(pi2).epsilon(1e-14));
    CHECK(s.values[3] == doctest::Approx(2 * pi2).epsilon(1e-14));
    CHECK(s.values[4] == doctest::Approx(4 * pi2).epsilon(1e-14));
    CHECK(s.source == spl::SpectrumSource::exact_orthotope);
    CHECK(s.rel_error == 0.0);

    s = spl::orthotope_spectrum(spl::Orthotope({0.5}), 3);
    for (int k = 0; k <= 3; ++k) CHECK(s.values[static_cast<std::size_t>(k)] == doctest::Approx(k * k * pi2));
  }

  TEST_CASE("brute-force oracle with m_i <= 60") {
    const std::vector<double> a = {0.5, 1.0};
    std::vector<double> brute;
    for (int i = 0; i <= 60; ++i) {
      for (int j = 0; j <= 60; ++j) {
        brute.push_back(std::pow(std::numbers::pi * i / (2 * a[0]), 2) + std::pow(std::numbers::pi * j / (2 * a[1]), 2));
      }
    }
    std::sort(brute.begin(), brute.end());
    const auto s = spl::orthotope_spectrum(spl::Orthotope(a), 100);
    for (int k = 1; k <= 100; ++k) {
      CHECK(std::abs(s.values[static_cast<std::size_t>(k)] - brute[static_cast<std::size_t>(k)]) <=
            1e-12 * brute[static_cast<std::size_t>(k)]);
    }
  }

  TEST_CASE("random boxes agree with the threshold enumerator") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
      const int n = 1 + trial % 4;
      const auto a = random_half_lengths(rng, n);
      const auto s = spl::orthotope_spectrum(spl::Orthotope(a), 300);
      const auto ref = oracle::box_spectrum(a, 300);
      for (std::size_t k = 1; k < ref.size(); ++k) CHECK(std::abs(s.values[k] - ref[k]) <= 1e-12 * ref[k]);
    }
  }

  TEST_CASE("lattice modes: values and lexicographic ties") {
    const auto modes = spl::orthotope_modes(spl::Orthotope({0.5, 0.5}), 4);
    REQUIRE(modes.size() == 5);
    CHECK(modes[1].multi_index == std::vector<int>{0, 1});
    CHECK(modes[2].multi_index == std::vector<int>{1, 0});
    for (const auto& m : modes) {
      double v = 0.0;
      for (int i : m.multi_index) v += std::pow(std::numbers::pi * i, 2);
      CHECK(m.eigenvalue == doctest::Approx(v));
    }
  }

  TEST_CASE("mu accessor") {
    const auto s = spl::orthotope_spectrum(spl::Orthotope({0.5, 0.5}), 4);
    CHECK(spl::mu(s, 0) == 0.0);
    CHECK(spl::mu(s, 1) == doctest::Approx(pi2));
    CHECK(spl::mu(s, 3) == doctest::Approx(2 * pi2));
    CHECK_THROWS_AS(spl::mu(s, 5), spl::Error);
    CHECK_THROWS_WITH_AS(spl::orthotope_spectrum(spl::Orthotope({1}), 10000001), "request too large", spl::Error);
  }

  TEST_CASE("Payne-Weinberger bound") {
    CHECK(spl::pw_lower_bound(1.0) == doctest::Approx(pi2));
    const double L = 3.7;
    const auto s = spl::orthotope_spectrum(spl::Orthotope({L / 2}), 1);
    CHECK(std::abs(spl::pw_lower_bound(L) - s.values[1]) <= 1e-12 * s.values[1]);
    CHECK(spl::pw_lower_bound(std::sqrt(2.0)) == doctest::Approx(pi2 / 2));
    CHECK(spl::pw_lower_bound(std::sqrt(2.0)) <= pi2);
  }

  TEST_CASE("unit ball volume and Kroger bound") {
    CHECK(spl::unit_ball_volume(1) == doctest::Approx(2));
    CHECK(spl::unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
    CHECK(spl::unit_ball_volume(3) == doctest::Approx(4 * std::numbers::pi / 3));
    for (int n = 1; n <= 12; ++n) CHECK(spl::unit_ball_volume(n) == doctest::Approx(oracle::unit_ball_volume(n)).epsilon(1e-13));

    CHECK(spl::kroger_bound(2, 1.0, 1) == doctest::Approx(8 * std::numbers::pi));
    const double expected3 =
        4 * pi2 * std::pow(2.5, 2.0 / 3) * std::pow(1.0 / oracle::unit_ball_volume(3), 2.0 / 3);
    CHECK(spl::kroger_bound(3, 1.0, 1) == doctest::Approx(expected3).epsilon(1e-13));
    CHECK(spl::kroger_bound(3, 1.0, 1) == doctest::Approx(27.985).epsilon(1e-4));
    CHECK(spl::kroger_bound(2, 1.0, 1) >= pi2);
  }

  TEST_CASE("Kroger dominates, monotone in k, cross-section monotonicity") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 2 + trial % 3;
      const auto a = random_half_lengths(rng, n);
      const spl::Orthotope box(a);
      const auto s = spl::orthotope_spectrum(box, 200);
      for (int k = 1; k <= 200; ++k) {
        CHECK(spl::mu(s, k) <= spl::kroger_bound(n, box.volume(), k));
        CHECK(spl::mu(s, k) >= spl::mu(s, k - 1));
      }
      std::vector<double> sorted = a;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(sorted.begin());
      const auto sub = spl::orthotope_spectrum(spl::Orthotope(sorted), 200);
      for (int k = 0; k <= 200; ++k) CHECK(spl::mu(s, k) <= spl::mu(sub, k) * (1 + 1e-14));
    }
  }

  TEST_CASE("scaling law") {
    const auto s = spl::orthotope_spectrum(spl::Orthotope({0.5, 1.0}), 30);
    const auto same = spl::scale_spectrum(s, 1.0);
    CHECK(same.values == s.values);
    const auto square = spl::scale_spectrum(spl::orthotope_spectrum(spl::Orthotope({0.5, 0.5}), 2), 2.0);
    CHECK(square.values[1] == doctest::Approx(pi2 / 4));
    const auto tripled = spl::scale_spectrum(s, 3.0);
    const auto direct = spl::orthotope_spectrum(spl::Orthotope({1.5, 3.0}), 30);
    for (std::size_t k = 0; k < direct.values.size(); ++k) {
      CHECK(tripled.values[k] == doctest::Approx(direct.values[k]).epsilon(1e-13));
    }
    CHECK_THROWS_AS(spl::scale_spectrum(s, 0.0), spl::Error);
  }

  TEST_CASE("source names") {
    for (auto src : {spl::SpectrumSource::exact_orthotope, spl::SpectrumSource::fem, spl::SpectrumSource::closed_form}) {
      CHECK(spl::spectrum_source_from_string(spl::to_string(src)) == src);
    }
    CHECK_THROWS_AS(spl::spectrum_source_from_string("guess"), spl::Error);
  }
}
