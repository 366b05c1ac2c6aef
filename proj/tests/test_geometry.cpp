#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spl/error.hpp"
#include "spl/geometry.hpp"
#include "spl/vertex_enum.hpp"
#include "support.hpp"

using support::pt;

namespace {

spl::PointSet sites(std::initializer_list<std::initializer_list<double>> xs) {
  spl::PointSet s(0.0);
  for (auto x : xs) s.insert(pt(x));
  return s;
}

double total_volume(const std::vector<spl::ConvexPolytope>& cells) {
  double v = 0.0;
  for (const auto& c : cells) v += spl::volume(c);
  return v;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("orthotope measurements") {
    const spl::Orthotope box({1, 2, 3});
    CHECK(box.volume() == doctest::Approx(48));
    CHECK(spl::volume(box) == doctest::Approx(48));
    CHECK(spl::diameter(box).value == doctest::Approx(2 * std::sqrt(14.0)).epsilon(1e-12));
    CHECK_FALSE(spl::diameter(box).upper_bound);
    CHECK(box.corners().size() == 8);
    CHECK_THROWS_WITH_AS(spl::Orthotope({1, 0}), doctest::Contains("positive"), spl::Error);
    CHECK_THROWS_AS(spl::Orthotope(std::vector<double>{}), spl::Error);
  }

  TEST_CASE("polytope construction checks boundedness and emptiness") {
    std::vector<spl::Halfspace> open = {{pt({1, 0}), 1}, {pt({-1, 0}), 1}, {pt({0, 1}), 1}};
    CHECK_THROWS_WITH_AS(spl::ConvexPolytope(2, open), "unbounded", spl::Error);
    std::vector<spl::Halfspace> empty = {{pt({1, 0}), -1}, {pt({-1, 0}), -1}, {pt({0, 1}), 1}, {pt({0, -1}), 1}};
    CHECK_THROWS_WITH_AS(spl::ConvexPolytope(2, empty), "empty polytope", spl::Error);
    // Normals are normalized on construction.
    std::vector<spl::Halfspace> scaled = {{pt({2, 0}), 2}, {pt({-3, 0}), 0}, {pt({0, 5}), 5}, {pt({0, -1}), 0}};
    const spl::ConvexPolytope square(2, scaled);
    CHECK(square.halfspaces()[0].normal.norm() == doctest::Approx(1));
    CHECK(square.halfspaces()[0].offset == doctest::Approx(1));
    std::vector<spl::Point> bad = {pt({2, 2})};
    CHECK_THROWS_AS(spl::ConvexPolytope(2, scaled, bad), spl::Error);
  }

  TEST_CASE("diameter") {
    CHECK(spl::diameter(support::unit_square()).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    const auto cells = spl::voronoi_cells(sites({{0, 0}, {1, 0}}), spl::Orthotope({1, 1}));
    REQUIRE(cells.size() == 2);
    const auto brute = oracle::polygon_vertices(cells[0].halfspaces());
    CHECK(oracle::max_pairwise_distance(brute) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(spl::diameter(cells[0]).value == doctest::Approx(2.5).epsilon(1e-12));

    // Dimension 5 without cached vertices: flagged upper bound.
    std::vector<spl::Halfspace> hs = spl::Orthotope({1, 1, 1, 1, 1}).halfspaces();
    hs.push_back({pt({1, 1, 1, 1, 1}), 1});
    const spl::ConvexPolytope p5(5, hs);
    const auto d5 = spl::diameter(p5);
    CHECK(d5.upper_bound);
    CHECK(d5.value >= 2 * std::sqrt(4.0) - 1e-9);
  }

  TEST_CASE("diameter dominates sampled distances") {
    std::mt19937_64 rng(3);
    const auto cells = spl::voronoi_cells(sites({{0.3, -0.2}, {1.4, 0.9}, {-1.1, 1.2}}), spl::Orthotope({2, 2}));
    for (const auto& cell : cells) {
      const double d = spl::diameter(cell).value;
      std::vector<spl::Point> samples;
      for (int i = 0; i < 1000; ++i) samples.push_back(oracle::sample_polytope(cell, rng));
      CHECK(oracle::max_pairwise_distance(samples) <= d + 1e-12);
    }
  }

  TEST_CASE("inner offset") {
    auto a = spl::inner_offset(spl::Orthotope({2, 3}), 0.5).half_lengths();
    CHECK(a[0] == doctest::Approx(1.5));
    CHECK(a[1] == doctest::Approx(2.5));
    a = spl::inner_offset(spl::Orthotope({1, 1}), 0.0).half_lengths();
    CHECK(a[0] == 1.0);
    CHECK(a[1] == 1.0);
    a = spl::inner_offset(spl::Orthotope({1, 4}), 0.9).half_lengths();
    CHECK(a[0] == doctest::Approx(0.1));
    CHECK(a[1] == doctest::Approx(3.1));
    CHECK_THROWS_WITH_AS(spl::inner_offset(spl::Orthotope({1, 4}), 1.0), "offset collapses box", spl::Error);
  }

  TEST_CASE("sqrt(n) r neighbourhood of the inner offset covers the box") {
    std::mt19937_64 rng(11);
    for (int n = 2; n <= 4; ++n) {
      std::vector<double> a(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = 1.0 + i;
      const spl::Orthotope box(a);
      const double r = 0.7;
      const spl::Orthotope inner = spl::inner_offset(box, r);
      double worst = 0.0;
      for (int s = 0; s < 2000; ++s) {
        const spl::Point x = oracle::sample_box(box, rng);
        const spl::Point proj = x.cwiseMax(inner.lower()).cwiseMin(inner.upper());
        worst = std::max(worst, (x - proj).norm());
      }
      CHECK(worst <= std::sqrt(static_cast<double>(n)) * r + 1e-12);
    }
  }

  TEST_CASE("greedy separated net examples") {
    const auto segment = spl::greedy_separated_net(spl::Orthotope({1}), 2.0);
    REQUIRE(segment.size() == 2);
    CHECK(std::abs(segment.points()[0][0] - segment.points()[1][0]) == doctest::Approx(2));
    CHECK(spl::greedy_separated_net(spl::Orthotope({1e-9, 1e-9}), 1.0).size() == 1);
    CHECK(spl::greedy_separated_net(spl::Orthotope({1, 1}), 3.0).size() == 1);
  }

  TEST_CASE("greedy net: separation, containment, covering, determinism") {
    std::mt19937_64 rng(5);
    const double gf = 0.25;
    for (const auto& a : std::vector<std::vector<double>>{{3, 5}, {2, 2.5, 4}, {1.5, 2, 2, 3}}) {
      const spl::Orthotope region(a);
      const double sep = 1.3;
      const auto net = spl::greedy_separated_net(region, sep, gf);
      const auto& p = net.points();
      for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(region.to_polytope().contains_point(p[i], 1e-12));
        for (std::size_t j = i + 1; j < p.size(); ++j) CHECK((p[i] - p[j]).norm() >= sep);
      }
      double worst = 0.0;
      for (int s = 0; s < 10000; ++s) {
        const spl::Point x = oracle::sample_box(region, rng);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : p) best = std::min(best, (x - q).norm());
        worst = std::max(worst, best);
      }
      CHECK(worst <= sep * (1 + gf));
      const auto again = spl::greedy_separated_net(region, sep, gf);
      REQUIRE(again.size() == net.size());
      for (std::size_t i = 0; i < p.size(); ++i) CHECK((again.points()[i] - p[i]).norm() == 0.0);
    }
  }

  TEST_CASE("point set rejects close points") {
    spl::PointSet s(1.0);
    s.insert(pt({0, 0}));
    CHECK_FALSE(s.try_insert(pt({0.5, 0.5})));
    CHECK_THROWS_WITH_AS(s.insert(pt({0.99, 0})), "separation violated", spl::Error);
    CHECK(s.try_insert(pt({1, 0})));
  }

  TEST_CASE("voronoi cells examples") {
    const spl::Orthotope ambient({1, 1});
    const auto one = spl::voronoi_cells(sites({{0.2, 0.1}}), ambient);
    REQUIRE(one.size() == 1);
    CHECK(spl::volume(one[0]) == doctest::Approx(4));
    CHECK(spl::as_orthotope(one[0]).has_value());

    const auto two = spl::voronoi_cells(sites({{-0.5, 0}, {0.5, 0}}), ambient);
    REQUIRE(two.size() == 2);
    for (const auto& c : two) {
      const auto box = spl::as_orthotope(c);
      REQUIRE(box.has_value());
      CHECK(box->half_length(0) == doctest::Approx(0.5));
      CHECK(box->half_length(1) == doctest::Approx(1));
      CHECK(spl::volume(c) == doctest::Approx(2));
    }
    CHECK(total_volume(two) == doctest::Approx(4));

    CHECK_THROWS_WITH_AS(spl::voronoi_cells(sites({{0, 0}, {1e-13, 0}}), ambient), "coincident sites", spl::Error);
    CHECK_THROWS_WITH_AS(spl::voronoi_cells(sites({{3, 0}}), ambient), "site outside ambient", spl::Error);
  }

  TEST_CASE("voronoi cells match nearest-site classification") {
    const spl::Orthotope ambient({1, 1}, pt({1, 1}));  // [0,2]^2
    const auto s = sites({{0, 0}, {1, 0}, {0, 1}});
    const auto cells = spl::voronoi_cells(s, ambient);
    const auto cell0 = spl::as_orthotope(cells[0]);
    REQUIRE(cell0.has_value());
    CHECK(cell0->lower()[0] == doctest::Approx(0));
    CHECK(cell0->upper()[0] == doctest::Approx(0.5));
    CHECK(cell0->upper()[1] == doctest::Approx(0.5));
    int misclassified = 0;
    for (int i = 0; i < 200; ++i) {
      for (int j = 0; j < 200; ++j) {
        const spl::Point x = pt({(i + 0.5) * 0.01, (j + 0.5) * 0.01});
        const int want = oracle::nearest_site(x, s.points());
        std::vector<double> dist;
        for (const auto& q : s.points()) dist.push_back((x - q).norm());
        std::sort(dist.begin(), dist.end());
        if (dist[1] - dist[0] < 1e-9) continue;  // on a bisector
        int inside = 0;
        bool right = false;
        for (std::size_t c = 0; c < cells.size(); ++c) {
          if (cells[c].contains_point(x, 0.0)) {
            ++inside;
            right = right || static_cast<int>(c) == want;
          }
        }
        if (inside != 1 || !right) ++misclassified;
      }
    }
    CHECK(misclassified == 0);
  }

  TEST_CASE("voronoi partition of unity") {
    for (int n = 2; n <= 3; ++n) {
      std::vector<double> a(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = 2.0 + 0.7 * i;
      const spl::Orthotope box(a);
      const auto net = spl::greedy_separated_net(spl::inner_offset(box, 0.4), 0.8);
      const auto cells = spl::voronoi_cells(net, box);
      CHECK(std::abs(total_volume(cells) - box.volume()) <= 1e-6 * box.volume());
      for (std::size_t i = 0; i < cells.size(); ++i) CHECK(cells[i].contains_point(net.points()[i], 1e-12));
    }
  }

  TEST_CASE("containment") {
    const auto small = support::unit_square();
    const auto big = support::polygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    auto c = spl::contains(big, small);
    CHECK(c.contained);
    CHECK(c.max_violation <= 0.0);
    CHECK(c.max_violation == doctest::Approx(0).epsilon(1e-12));
    c = spl::contains(small, big);
    CHECK_FALSE(c.contained);
    CHECK(c.max_violation == doctest::Approx(1));
    CHECK(spl::contains(big, spl::Orthotope({0.5, 0.5}, pt({1, 1}))).contained);
  }

  TEST_CASE("volume") {
    CHECK(spl::volume(support::polygon({{0, 0}, {1, 0}, {0, 1}})) == doctest::Approx(0.5));
    const spl::ConvexPolytope tetra =
        spl::ConvexPolytope(3, {{pt({-1, 0, 0}), 0}, {pt({0, -1, 0}), 0}, {pt({0, 0, -1}), 0}, {pt({1, 1, 1}), 1}});
    CHECK(spl::volume(tetra) == doctest::Approx(1.0 / 6.0));
    CHECK(spl::volume(spl::Orthotope({1, 2, 3}).to_polytope()) == doctest::Approx(48));
    CHECK_THROWS_WITH_AS(spl::volume(spl::Orthotope({1, 1, 1, 1}).to_polytope()), "volume unsupported", spl::Error);
  }

  TEST_CASE("vertex enumeration matches the brute-force oracle") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<spl::Halfspace> hs = spl::Orthotope({2, 2}).halfspaces();
      for (int i = 0; i < 6; ++i) {
        spl::Point nrm = pt({u(rng), u(rng)}).normalized();
        hs.push_back({nrm, 0.5 + 0.5 * (u(rng) + 1)});
      }
      const auto fast = spl::enumerate_vertices(hs, spl::Orthotope({3, 3}), 1e-11);
      const auto slow = oracle::polygon_vertices(hs);
      CHECK(fast.size() == slow.size());
      for (const auto& p : slow) {
        double best = 1e9;
        for (const auto& q : fast) best = std::min(best, (p - q).norm());
        CHECK(best < 1e-9);
      }
    }
  }

  TEST_CASE("transforms") {
    const auto strip = spl::Orthotope({0.5}).to_polytope();
    const auto prism = spl::extrude(strip, 2.0);
    const auto box = spl::as_orthotope(prism);
    REQUIRE(box.has_value());
    CHECK(box->half_length(0) == doctest::Approx(2));
    CHECK(box->half_length(1) == doctest::Approx(0.5));
    const std::vector<int> perm = {1, 0};
    const auto swapped = spl::as_orthotope(spl::permute_axes(prism, perm));
    CHECK(swapped->half_length(0) == doctest::Approx(0.5));
    const auto moved = spl::as_orthotope(spl::translate(prism, pt({1, -1})));
    CHECK(moved->center()[0] == doctest::Approx(1));
    CHECK(moved->center()[1] == doctest::Approx(-1));
    const auto grown = spl::as_orthotope(spl::scale_about(prism, pt({0, 0}), 3.0));
    CHECK(grown->half_length(0) == doctest::Approx(6));
    CHECK_FALSE(spl::as_orthotope(support::regular_polygon(6)).has_value());
  }
}
