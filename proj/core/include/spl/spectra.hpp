#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spl/geometry.hpp"

namespace spl {

enum class SpectrumSource { exact_orthotope, fem, closed_form };

std::string to_string(SpectrumSource s);
SpectrumSource spectrum_source_from_string(const std::string& s);

// Neumann eigenvalues mu_0 = 0 <= mu_1 <= ... repeated by multiplicity.
struct Spectrum {
  std::vector<double> values;
  SpectrumSource source = SpectrumSource::exact_orthotope;
  double rel_error = 0.0;

  // Largest available index K.
  int max_index() const { return static_cast<int>(values.size()) - 1; }
};

struct LatticeMode {
  std::vector<int> multi_index;
  double eigenvalue = 0.0;
};

// The K+1 lowest modes sum_i (pi m_i / (2 a_i))^2 of the box, by best-first
// expansion of the lattice of multi-indices. Ties are broken by the
// lexicographic order of the multi-index.
std::vector<LatticeMode> orthotope_modes(const Orthotope& box, int K);
Spectrum orthotope_spectrum(const Orthotope& box, int K);

double mu(const Spectrum& spec, int k);

// Payne-Weinberger: mu_1 >= pi^2 / diam^2 for convex domains.
double pw_lower_bound(double diam);

// Kroeger: mu_k <= (2 pi)^2 ((n+2)/2)^(2/n) (k / (omega_n vol))^(2/n).
double kroger_bound(int n, double vol, int k);

// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

// Spectrum of t * Omega.
Spectrum scale_spectrum(const Spectrum& spec, double t);

}  // namespace spl
