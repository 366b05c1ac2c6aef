#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "spl/geometry.hpp"

// Reference implementations that share no code with the library.
namespace oracle {

// Sorted K+1 smallest Neumann eigenvalues of the box, by enumerating every
// multi-index below a threshold that doubles until enough modes are found.
std::vector<double> box_spectrum(const std::vector<double>& half_lengths, int K);

// First positive root of J_1' by bisection, squared: mu_1 of the unit disc.
double disc_mu1();

// Gamma(n/2 + 1) from Gamma(1) = 1 and Gamma(1/2) = sqrt(pi).
double gamma_half_plus_one(int n);
double unit_ball_volume(int n);

// Index of the nearest site, first on ties.
int nearest_site(const spl::Point& x, const std::vector<spl::Point>& sites);

// Vertices of a bounded 2D H-polytope: every pairwise line intersection that
// satisfies all constraints, deduplicated.
std::vector<spl::Point> polygon_vertices(const std::vector<spl::Halfspace>& hs);

double max_pairwise_distance(const std::vector<spl::Point>& pts);

// Point uniformly distributed in the box.
spl::Point sample_box(const spl::Orthotope& box, std::mt19937_64& rng);

// Uniform sample of a convex polytope by rejection from its bounding box.
spl::Point sample_polytope(const spl::ConvexPolytope& body, std::mt19937_64& rng);

}  // namespace oracle
