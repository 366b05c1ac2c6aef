#include "spl/spectra.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <unordered_set>

#include "spl/error.hpp"

namespace spl {
namespace {

constexpr int kMaxModes = 10'000'000;

struct IndexHash {
  std::size_t operator()(const std::vector<int>& m) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int v : m) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct Node {
  double value;
  std::vector<int> index;
};

// Min-heap order on (value, lexicographic multi-index).
struct Later {
  bool operator()(const Node& a, const Node& b) const {
    if (a.value != b.value) return a.value > b.value;
    return a.index > b.index;
  }
};

}  // namespace

std::string to_string(SpectrumSource s) {
  switch (s) {
    case SpectrumSource::exact_orthotope: return "exact_orthotope";
    case SpectrumSource::fem: return "fem";
    case SpectrumSource::closed_form: return "closed_form";
  }
  return "unknown";
}

SpectrumSource spectrum_source_from_string(const std::string& s) {
  if (s == "exact_orthotope") return SpectrumSource::exact_orthotope;
  if (s == "fem") return SpectrumSource::fem;
  if (s == "closed_form") return SpectrumSource::closed_form;
  throw Error("unknown spectrum source: " + s);
}

std::vector<LatticeMode> orthotope_modes(const Orthotope& box, int K) {
  if (K < 0) throw Error("K must be non-negative");
  if (K > kMaxModes) throw Error("request too large");
  const int n = box.dim();
  std::vector<double> freq(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) freq[static_cast<std::size_t>(i)] = std::numbers::pi / (2.0 * box.half_length(i));
  auto eigenvalue = [&](const std::vector<int>& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double w = freq[i] * m[i];
      s += w * w;
    }
    return s;
  };

  std::vector<LatticeMode> out;
  out.reserve(static_cast<std::size_t>(K) + 1);
  std::priority_queue<Node, std::vector<Node>, Later> frontier;
  std::unordered_set<std::vector<int>, IndexHash> seen;
  std::vector<int> zero(static_cast<std::size_t>(n), 0);
  frontier.push({0.0, zero});
  seen.insert(zero);
  while (static_cast<int>(out.size()) <= K) {
    Node top = frontier.top();
    frontier.pop();
    for (int i = 0; i < n; ++i) {
      std::vector<int> next = top.index;
      ++next[static_cast<std::size_t>(i)];
      if (seen.insert(next).second) {
        const double v = eigenvalue(next);
        frontier.push({v, std::move(next)});
      }
    }
    out.push_back({std::move(top.index), top.value});
  }
  return out;
}

Spectrum orthotope_spectrum(const Orthotope& box, int K) {
  if (K < 1) throw Error("K must be >= 1");
  Spectrum spec;
  spec.source = SpectrumSource::exact_orthotope;
  spec.rel_error = 0.0;
  for (auto& mode : orthotope_modes(box, K)) spec.values.push_back(mode.eigenvalue);
  return spec;
}

double mu(const Spectrum& spec, int k) {
  if (k < 0 || k > spec.max_index()) {
    throw Error("eigenvalue index out of range: " + std::to_string(k) + " > " + std::to_string(spec.max_index()));
  }
  return spec.values[static_cast<std::size_t>(k)];
}

double pw_lower_bound(double diam) {
  if (!(diam > 0.0)) throw Error("diameter must be positive");
  return std::numbers::pi * std::numbers::pi / (diam * diam);
}

double unit_ball_volume(int n) {
  if (n < 0) throw Error("dimension must be non-negative");
  const double half = 0.5 * n;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double kroger_bound(int n, double vol, int k) {
  if (n < 1 || !(vol > 0.0) || k < 1) throw Error("kroger_bound requires positive inputs");
  const double e = 2.0 / n;
  const double two_pi = 2.0 * std::numbers::pi;
  return two_pi * two_pi * std::pow((n + 2) / 2.0, e) * std::pow(k / (unit_ball_volume(n) * vol), e);
}

Spectrum scale_spectrum(const Spectrum& spec, double t) {
  if (!(t > 0.0)) throw Error("scale factor must be positive");
  Spectrum out = spec;
  for (double& v : out.values) v /= t * t;
  return out;
}

}  // namespace spl
