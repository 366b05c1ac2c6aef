#include "spl/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "spl/error.hpp"

namespace spl {
namespace {

constexpr double kGridFraction = 0.25;

struct LevelResult {
  std::vector<ConvexPolytope> cells;  // in level coordinates (sorted axes [level, n))
  std::vector<double> diameters;
};

class Builder {
 public:
  Builder(PartitionLemma lemma, const NestedSpectra& spectra, int k, int l)
      : lemma_(lemma), spectra_(spectra), k_(k), l_(l), ledger_(constants(spectra.box().dim())) {}

  const ConstantLedger& ledger() const { return ledger_; }
  std::vector<TraceStep>& trace() { return trace_; }
  int budget() const { return lemma_ == PartitionLemma::first ? l_ : k_; }

  // mu_k (first lemma) or mu_l (second) of the level box.
  double level_mu(int level) const {
    const int index = lemma_ == PartitionLemma::first ? k_ : l_;
    return mu(spectra_.level(level), index);
  }

  double level_bound(int level) const {
    const int m = spectra_.box().dim() - level;
    return lemma_ == PartitionLemma::first ? lemma1_bound(ledger_, m, k_, l_, level_mu(level))
                                           : lemma2_bound(ledger_, m, k_, l_, level_mu(level));
  }

  double radius(int level) const {
    const double m = spectra_.box().dim() - level;
    const double root = std::sqrt(level_mu(level));
    if (lemma_ == PartitionLemma::first) return ledger_.C * m * k_ / (l_ * root);
    return ledger_.C * m * std::pow(static_cast<double>(l_) / k_, 1.0 / m) / root;
  }

  LevelResult run(int level) {
    const auto& all = spectra_.sorted_half_lengths();
    const int n = static_cast<int>(all.size());
    const int m = n - level;
    std::vector<double> a(all.begin() + level, all.end());
    TraceStep step;
    step.dim = m;
    step.half_lengths = a;
    step.mu = level_mu(level);
    step.level_bound = level_bound(level);

    LevelResult out;
    if (m == 1) {
      step.branch = Branch::base;
      const int pieces = budget();
      const double len = 2.0 * a[0];
      for (int i = 0; i < pieces; ++i) {
        const double lo = -a[0] + len * i / pieces;
        const double hi = i + 1 == pieces ? a[0] : -a[0] + len * (i + 1) / pieces;
        Point e(1);
        e << 1.0;
        Point p0(1), p1(1);
        p0 << lo;
        p1 << hi;
        out.cells.emplace_back(1, std::vector<Halfspace>{{e, hi}, {-e, -lo}}, std::vector<Point>{p0, p1});
        out.diameters.push_back(hi - lo);
      }
      trace_.push_back(std::move(step));
      return out;
    }

    const double r = radius(level);
    step.r = r;
    if (a[0] <= 2.0 * r) {
      step.branch = Branch::extrude;
      trace_.push_back(std::move(step));
      LevelResult sub = run(level + 1);
      const double width = 2.0 * a[0];
      for (std::size_t i = 0; i < sub.cells.size(); ++i) {
        out.cells.push_back(extrude(sub.cells[i], a[0]));
        out.diameters.push_back(std::hypot(width, sub.diameters[i]));
      }
      return out;
    }

    step.branch = Branch::net;
    const Orthotope box(a);
    const PointSet net = greedy_separated_net(inner_offset(box, r), 2.0 * r, kGridFraction);
    const int count = static_cast<int>(net.size());
    step.net_points = net.points();
    step.packing_lhs = count * unit_ball_volume(m) * std::pow(r, m);
    step.packing_rhs = box.volume();
    if (step.packing_lhs > step.packing_rhs * (1.0 + 1e-12) || count > budget()) {
      throw Error("packing bound violated");
    }
    trace_.push_back(std::move(step));
    out.cells = voronoi_cells(net, box);
    for (const auto& cell : out.cells) out.diameters.push_back(diameter(cell).value);
    return out;
  }

 private:
  PartitionLemma lemma_;
  const NestedSpectra& spectra_;
  int k_;
  int l_;
  ConstantLedger ledger_;
  std::vector<TraceStep> trace_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Constants

double packing_constant_term(int m) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double w = unit_ball_volume(m);
  return std::pow(std::pow(two_pi, m) * (m + 2) / 2.0 / (w * w), 1.0 / m) / m;
}

ConstantLedger constants(int n, double margin) {
  if (n < 1) throw Error("dimension must be >= 1");
  ConstantLedger ledger;
  ledger.n = n;
  ledger.margin = margin;
  double strict = 0.0;
  for (int m = 2; m <= std::max(n, 2); ++m) {
    ledger.C = std::max(ledger.C, packing_constant_term(m));
    const double s = std::sqrt(static_cast<double>(m));
    strict = std::max(strict, 2.0 * s / (s - 1.0));
  }
  ledger.c = std::max(4.0 * ledger.C, strict) * (1.0 + margin);
  // Invariants of the construction.
  for (int m = 2; m <= std::max(n, 2); ++m) {
    const double s = std::sqrt(static_cast<double>(m));
    if (ledger.C < packing_constant_term(m) || ledger.c < 4.0 * ledger.C || !(ledger.c > 2.0 * s / (s - 1.0)))
      throw Error("constant ledger invariant violated");
  }
  ledger.aggregate_upper = std::pow(92.0, 4) * ledger.c * ledger.c * std::pow(static_cast<double>(n), 10);
  ledger.aggregate_lower = ledger.aggregate_upper;
  return ledger;
}

std::string to_string(Branch b) {
  switch (b) {
    case Branch::base: return "base";
    case Branch::extrude: return "extrude";
    case Branch::net: return "net";
  }
  return "unknown";
}

Branch branch_from_string(const std::string& s) {
  if (s == "base") return Branch::base;
  if (s == "extrude") return Branch::extrude;
  if (s == "net") return Branch::net;
  throw Error("unknown branch: " + s);
}

double lemma1_bound(const ConstantLedger& ledger, int n, int k, int l, double mu_k) {
  return ledger.c * std::pow(static_cast<double>(n), 1.5) * k / (l * std::sqrt(mu_k));
}

double lemma2_bound(const ConstantLedger& ledger, int n, int k, int l, double mu_l) {
  return ledger.c * std::pow(static_cast<double>(n), 1.5) * std::pow(static_cast<double>(l) / k, 1.0 / n) /
         std::sqrt(mu_l);
}

// ---------------------------------------------------------------------------
// NestedSpectra

NestedSpectra::NestedSpectra(const Orthotope& box, int K) : box_(box) {
  const int n = box.dim();
  order_.resize(static_cast<std::size_t>(n));
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](int a, int b) { return box.half_length(a) < box.half_length(b); });
  for (int i : order_) sorted_.push_back(box.half_length(i));
  for (int level = 0; level < n; ++level) {
    levels_.push_back(orthotope_spectrum(Orthotope(std::vector<double>(sorted_.begin() + level, sorted_.end())), K));
  }
}

NestedSpectra::NestedSpectra(const Orthotope& box, const Spectrum& top, int K) : NestedSpectra(box, 1) {
  if (top.source != SpectrumSource::exact_orthotope) throw Error("partition requires an exact orthotope spectrum");
  levels_.clear();
  levels_.push_back(top);
  for (int level = 1; level < box.dim(); ++level) {
    levels_.push_back(orthotope_spectrum(Orthotope(std::vector<double>(sorted_.begin() + level, sorted_.end())), K));
  }
}

int NestedSpectra::max_index() const {
  int k = std::numeric_limits<int>::max();
  for (const auto& s : levels_) k = std::min(k, s.max_index());
  return k;
}

// ---------------------------------------------------------------------------
// Builders

PartitionResult build_partition(PartitionLemma lemma, const NestedSpectra& spectra, int k, int l) {
  if (l < 1) throw Error("l must be >= 1");
  if (k < l) throw Error("k must be >= l");
  for (int level = 0; level < spectra.box().dim(); ++level) {
    if (spectra.level(level).source != SpectrumSource::exact_orthotope)
      throw Error("partition requires an exact orthotope spectrum");
  }
  if (spectra.max_index() < k) throw Error("spectrum does not reach index k");

  Builder builder(lemma, spectra, k, l);
  LevelResult top = builder.run(0);

  const Orthotope& box = spectra.box();
  const int n = box.dim();
  // Sorted axis i is original axis order[i]; invert for the output frame.
  std::vector<int> back(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) back[static_cast<std::size_t>(spectra.order()[static_cast<std::size_t>(i)])] = i;

  PartitionResult result;
  result.budget = builder.budget();
  result.diam_bound = builder.level_bound(0);
  result.trace = std::move(builder.trace());
  result.count = static_cast<int>(top.cells.size());
  result.cells.reserve(top.cells.size());
  for (auto& cell : top.cells) result.cells.push_back(translate(permute_axes(cell, back), box.center()));
  result.cell_diameters = std::move(top.diameters);
  result.max_cell_diam = *std::max_element(result.cell_diameters.begin(), result.cell_diameters.end());
  result.diam_upper_bound = n > 4;
  return result;
}

PartitionResult partition_lemma1(const NestedSpectra& spectra, int k, int l) {
  return build_partition(PartitionLemma::first, spectra, k, l);
}

PartitionResult partition_lemma2(const NestedSpectra& spectra, int k, int l) {
  return build_partition(PartitionLemma::second, spectra, k, l);
}

PartitionResult partition_lemma1(const Orthotope& box, int k, int l, const Spectrum& spec) {
  if (spec.source != SpectrumSource::exact_orthotope) throw Error("partition requires an exact orthotope spectrum");
  return partition_lemma1(NestedSpectra(box, spec, std::max(k, 1)), k, l);
}

PartitionResult partition_lemma2(const Orthotope& box, int k, int l, const Spectrum& spec) {
  if (spec.source != SpectrumSource::exact_orthotope) throw Error("partition requires an exact orthotope spectrum");
  return partition_lemma2(NestedSpectra(box, spec, std::max(k, 1)), k, l);
}

// ---------------------------------------------------------------------------
// Verification

PartitionReport verify_partition(const PartitionResult& result, const Orthotope& box, int budget, double bound,
                                 int samples, std::uint64_t seed) {
  PartitionReport rep;
  rep.count = static_cast<int>(result.cells.size());
  rep.budget = budget;
  rep.bound = bound;
  const int n = box.dim();
  if (rep.count != result.count) rep.failures.push_back("count field disagrees with cell list");
  if (rep.count > budget) rep.failures.push_back("cell count exceeds budget");
  if (rep.count == 0) {
    rep.failures.push_back("empty partition");
    return rep;
  }

  for (const auto& cell : result.cells) {
    if (cell.dim() != n) {
      rep.failures.push_back("cell dimension mismatch");
      return rep;
    }
    rep.max_cell_diam = std::max(rep.max_cell_diam, diameter(cell).value);
  }
  rep.diameter_margin = bound / rep.max_cell_diam;
  if (rep.max_cell_diam > bound) rep.failures.push_back("cell diameter exceeds bound");

  if (n <= 3) {
    double total = 0.0;
    for (const auto& cell : result.cells) total += volume(cell);
    rep.volume_checked = true;
    rep.volume_rel_error = std::abs(total - box.volume()) / box.volume();
    if (rep.volume_rel_error > 1e-6) rep.failures.push_back("cell volumes do not sum to the box volume");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double scale = box.diameter();
  rep.samples = samples;
  for (int s = 0; s < samples; ++s) {
    Point p = box.center();
    for (int i = 0; i < n; ++i) p[i] += unit(rng) * box.half_length(i);
    int interior = 0;
    int closed = 0;
    for (const auto& cell : result.cells) {
      double worst = -std::numeric_limits<double>::infinity();
      for (const auto& h : cell.halfspaces()) worst = std::max(worst, h.normal.dot(p) - h.offset);
      if (worst <= 1e-9 * scale) ++closed;
      if (worst < -1e-9 * scale) ++interior;
    }
    if (interior > 1) ++rep.overlaps;
    if (closed == 0) ++rep.uncovered;
  }
  if (rep.overlaps > 0) rep.failures.push_back("cells overlap");
  if (rep.uncovered > 0) rep.failures.push_back("cells do not cover the box");
  rep.pass = rep.failures.empty();
  return rep;
}

}  // namespace spl
