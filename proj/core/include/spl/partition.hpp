#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spl/geometry.hpp"
#include "spl/spectra.hpp"

namespace spl {

// Constants of the partition lemmas for dimension n.
//
//   C >= max_{2<=m<=n} ((2 pi)^m (m+2)/2 / omega_m^2)^(1/m) / m
//   c  = max(4C, max_{2<=m<=n} 2 sqrt(m) / (sqrt(m) - 1)) * (1 + margin)
//
// Both maxima run over every level of the dimension induction; n = 1 uses
// the n = 2 values.
struct ConstantLedger {
  int n = 0;
  double C = 0.0;
  double c = 0.0;
  double margin = 0.0;
  double monotonicity = 92.0 * 92.0;  // domain monotonicity constant
  double aggregate_upper = 0.0;       // 92^4 c^2 n^10
  double aggregate_lower = 0.0;       // 92^4 c^2 n^10
};

ConstantLedger constants(int n, double margin = 1e-9);

// ((2 pi)^m (m+2)/2 / omega_m^2)^(1/m) / m
double packing_constant_term(int m);

enum class PartitionLemma { first, second };
enum class Branch { base, extrude, net };

std::string to_string(Branch b);
Branch branch_from_string(const std::string& s);

struct TraceStep {
  int dim = 0;                       // dimension of the box at this level
  Branch branch = Branch::base;
  double r = 0.0;                    // radius (0 in the 1D base case)
  double mu = 0.0;                   // mu_k (first lemma) or mu_l (second) of this box
  double level_bound = 0.0;          // diameter bound at this level
  std::vector<double> half_lengths;  // ascending
  std::vector<Point> net_points;     // net branch only, level coordinates
  double packing_lhs = 0.0;          // count * omega_m * r^m (net branch)
  double packing_rhs = 0.0;          // vol of the level box (net branch)
};

struct PartitionResult {
  std::vector<ConvexPolytope> cells;
  int count = 0;
  int budget = 0;
  std::vector<TraceStep> trace;  // outermost level first
  double diam_bound = 0.0;
  double max_cell_diam = 0.0;
  bool diam_upper_bound = false;  // cell diameters are bounds, not exact
  std::vector<double> cell_diameters;
};

// Exact spectra of a box and of the boxes obtained by repeatedly dropping
// its shortest axis, computed once and shared across many (k, l).
class NestedSpectra {
 public:
  NestedSpectra(const Orthotope& box, int K);
  NestedSpectra(const Orthotope& box, const Spectrum& top, int K);

  const Orthotope& box() const { return box_; }
  // Axis order by ascending half-length (stable).
  const std::vector<int>& order() const { return order_; }
  const std::vector<double>& sorted_half_lengths() const { return sorted_; }
  // Spectrum of the box spanned by sorted axes [dropped, n).
  const Spectrum& level(int dropped) const { return levels_[static_cast<std::size_t>(dropped)]; }
  int max_index() const;

 private:
  Orthotope box_;
  std::vector<int> order_;
  std::vector<double> sorted_;
  std::vector<Spectrum> levels_;
};

double lemma1_bound(const ConstantLedger& ledger, int n, int k, int l, double mu_k);
double lemma2_bound(const ConstantLedger& ledger, int n, int k, int l, double mu_l);

// Convex partition into at most l cells of diameter <= c n^{3/2} k / (l sqrt(mu_k)).
PartitionResult partition_lemma1(const Orthotope& box, int k, int l, const Spectrum& spec);
PartitionResult partition_lemma1(const NestedSpectra& spectra, int k, int l);

// Convex partition into at most k cells of diameter <= c n^{3/2} (l/k)^{1/n} / sqrt(mu_l).
PartitionResult partition_lemma2(const Orthotope& box, int k, int l, const Spectrum& spec);
PartitionResult partition_lemma2(const NestedSpectra& spectra, int k, int l);

PartitionResult build_partition(PartitionLemma lemma, const NestedSpectra& spectra, int k, int l);

struct PartitionReport {
  bool pass = false;
  int count = 0;
  int budget = 0;
  double bound = 0.0;
  double max_cell_diam = 0.0;
  double diameter_margin = 0.0;  // bound / max_cell_diam
  bool volume_checked = false;   // n <= 3
  double volume_rel_error = 0.0;
  int samples = 0;
  int overlaps = 0;   // samples strictly inside two cells
  int uncovered = 0;  // samples in no cell
  std::vector<std::string> failures;
};

// Independent re-check of a partition of the box: cell budget, volume
// conservation, sampled interior disjointness and cover, per-cell diameter.
PartitionReport verify_partition(const PartitionResult& result, const Orthotope& box, int budget, double bound,
                                 int samples = 2000, std::uint64_t seed = 1);

}  // namespace spl
