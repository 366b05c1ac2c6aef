#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spl/geometry.hpp"
#include "spl/john.hpp"
#include "spl/partition.hpp"
#include "spl/spectra.hpp"

namespace spl {

using Domain = std::variant<Orthotope, ConvexPolytope>;

int dimension(const Domain& d);
double domain_diameter(const Domain& d);
double domain_volume(const Domain& d);
// Orthotope when the domain is a box (possibly given in H-representation).
std::optional<Orthotope> domain_box(const Domain& d);
std::string describe(const Domain& d);

// Numerical settings for FEM-backed spectra. The starting mesh size is h,
// or h_rel times the polygon width when h is 0; refinement stops once
// successive levels agree to tol.
struct VerifyOptions {
  double h = 0.0;
  double h_rel = 0.1;
  double tol = 5e-3;
  int max_halvings = 5;
  bool fem_boxes = false;  // FEM even when the exact box spectrum is known
  bool pw_cells = false;   // Buser cells: Payne-Weinberger lower bound instead of mu_1
};

// Exact for boxes, FEM for other 2D polygons.
Spectrum domain_spectrum(const Domain& d, int K, const VerifyOptions& opts = {});

enum class CheckStatus { pass, inconclusive_pass, fail };
std::string to_string(CheckStatus s);

// Every inequality is oriented as lhs <= rhs, slack = rhs / lhs.
struct InequalityReport {
  std::string name;
  int n = 0;
  int k = 0;
  int l = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double rel_error = 0.0;  // combined numerical uncertainty of lhs and rhs
  CheckStatus status = CheckStatus::fail;
  bool pass = false;  // status != fail
  std::string digest;  // FNV-1a of the inputs
  std::string note;
};

// Fills slack, status and pass from lhs, rhs and rel_error.
InequalityReport make_report(std::string name, int n, int k, int l, double lhs, double rhs, double rel_error,
                             const std::string& inputs);

// Both inequalities of the main theorem with A = 92^4 c^2 n^10:
//   lower  (k/l)^{2/n} mu_l / A <= mu_k
//   upper  mu_k <= A (k/l)^2 mu_l
std::pair<InequalityReport, InequalityReport> theorem_1_1(const Domain& d, int k, int l,
                                                          const VerifyOptions& opts = {});
std::pair<InequalityReport, InequalityReport> theorem_1_1(const Spectrum& spec, int n, int k, int l,
                                                          const std::string& inputs);

InequalityReport payne_weinberger(const Domain& d, const VerifyOptions& opts = {});
// One report per k = 1..K.
std::vector<InequalityReport> kroger(const Domain& d, int K, const VerifyOptions& opts = {});

// mu_k(outer) <= 92^2 n^2 mu_k(inner); inner must lie in outer.
InequalityReport domain_monotonicity(const Domain& inner, const Domain& outer, int k,
                                     const VerifyOptions& opts = {});

// min_i mu_1(cell_i) <= mu_k(domain) for a partition with at most k cells.
InequalityReport buser(const Domain& d, const std::vector<ConvexPolytope>& cells, int k,
                       const VerifyOptions& opts = {});
InequalityReport buser(const Domain& d, const PartitionResult& partition, int k, const VerifyOptions& opts = {});

// Every link of the reduction from a convex polygon to its John box:
// certificates for (1/sqrt n) R in Omega in n R, then for each of the two
// theorem inequalities the partition, Buser, Payne-Weinberger, partition
// bound, monotonicity and scaling steps, and the resulting inequality.
struct ChainReport {
  JohnBox john;
  std::vector<InequalityReport> links;
  bool pass = false;
};

ChainReport full_chain(const Domain& d, int k, int l, const VerifyOptions& opts = {});

// Domain families for sweeps.
enum class FamilyKind { boxes, segments, squares, polygons };
std::string to_string(FamilyKind f);
FamilyKind family_from_string(const std::string& s);

struct FamilySpec {
  FamilyKind kind = FamilyKind::boxes;
  int n = 2;              // boxes only
  int count = 10;
  double max_aspect = 1e2;  // boxes and polygons
};

std::vector<Domain> generate_family(const FamilySpec& spec, std::uint64_t seed);

// Random convex polygon: hull of 6..16 points in a rotated ellipse.
ConvexPolytope random_convex_polygon(std::uint64_t seed, double max_aspect = 10.0);
// (inner, outer) with inner the hull of random convex combinations of
// outer's vertices.
std::pair<ConvexPolytope, ConvexPolytope> random_nested_pair(std::uint64_t seed);
// Box with half-lengths 0.5 * 10^(U * log10(max_aspect)), n in [n_min, n_max].
Orthotope random_box(std::uint64_t seed, int n_min, int n_max, double max_aspect);

// Deterministic uniform [0, 1) from a 64-bit generator.
double uniform01(std::uint64_t& state);

// Runs fn(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

struct EmpiricalConstant {
  std::string name;
  std::string relation;
  double value = 0.0;   // tightest constant over the family
  double proven = 0.0;  // 0 when the source gives no number
  int instances = 0;
};

struct EmpiricalTable {
  std::string family;
  int domains = 0;
  std::vector<EmpiricalConstant> constants;
};

struct SweepResult {
  std::vector<InequalityReport> rows;  // domain-major, then k, then l
  EmpiricalTable table;
};

// Main-theorem ratios and the constants c_1, c_2, c_3 over every pair
// l <= k <= k_max with l <= l_max. `inequality` names the report kept per
// instance: thm1.1-upper, thm1.1-lower, kroger, payne-weinberger.
SweepResult sweep(const FamilySpec& family, int k_max, int l_max, std::uint64_t seed, int jobs,
                  const std::string& inequality = "thm1.1-upper", const VerifyOptions& opts = {});

EmpiricalTable empirical_constants(const FamilySpec& family, int k_max, int l_max, std::uint64_t seed,
                                   int jobs = 1, const VerifyOptions& opts = {});

}  // namespace spl
