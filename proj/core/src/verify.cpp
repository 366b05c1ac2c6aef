#include "spl/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "spl/error.hpp"
#include "spl/mesh_fem.hpp"

namespace spl {
namespace {

constexpr double kPassTolerance = 1e-9;
constexpr double kMonotonicity = 92.0 * 92.0;

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0xd1b54a32d192ed03ULL * (index + 1));
  return splitmix(s);
}

double aggregate(int n) { return constants(n).aggregate_upper; }

// Characteristic width of a polygon, used to size its starting mesh.
double mesh_scale(const ConvexPolytope& poly) {
  const double diam = diameter(poly).value;
  return std::min(diam, 2.0 * volume(poly) / diam);
}

Spectrum cell_mu1(const ConvexPolytope& cell, const VerifyOptions& opts, std::string& note) {
  if (auto box = as_orthotope(cell); box && !opts.fem_boxes) return orthotope_spectrum(*box, 1);
  if (cell.dim() == 2 && !opts.pw_cells) {
    PolygonSpectrumOptions po;
    po.max_halvings = opts.max_halvings;
    return polygon_spectrum(cell, 1, opts.h_rel * mesh_scale(cell), opts.tol, po);
  }
  note = "cell values are Payne-Weinberger lower bounds";
  Spectrum s;
  s.source = SpectrumSource::closed_form;
  s.values = {0.0, pw_lower_bound(diameter(cell).value)};
  return s;
}

struct CellValues {
  double min_mu1 = std::numeric_limits<double>::infinity();
  double min_pw = std::numeric_limits<double>::infinity();
  double rel_error = 0.0;
  std::string note;
};

CellValues cell_values(const std::vector<ConvexPolytope>& cells, const VerifyOptions& opts) {
  CellValues out;
  for (const auto& cell : cells) {
    const Spectrum s = cell_mu1(cell, opts, out.note);
    if (s.values[1] < out.min_mu1) {
      out.min_mu1 = s.values[1];
      out.rel_error = s.rel_error;
    }
    out.min_pw = std::min(out.min_pw, pw_lower_bound(diameter(cell).value));
  }
  return out;
}

// Largest t with t R inside the body (R in the John frame).
double inscribed_factor(const JohnBox& jb, const ConvexPolytope& body) {
  double best = std::numeric_limits<double>::infinity();
  const auto corners = jb.box.corners();
  for (const auto& h : body.halfspaces()) {
    const double room = h.offset - h.normal.dot(jb.center);
    double reach = 0.0;
    for (const auto& c : corners) reach = std::max(reach, h.normal.dot(jb.rotation * c));
    if (reach > 0.0) best = std::min(best, room / reach);
  }
  return best;
}

// Smallest s with the body inside s R.
double circumscribed_factor(const JohnBox& jb, const ConvexPolytope& body) {
  const auto full = body.with_vertices();
  double worst = 0.0;
  for (const auto& v : *full.vertices()) {
    const Point local = jb.rotation.transpose() * (v - jb.center);
    for (int i = 0; i < jb.box.dim(); ++i) worst = std::max(worst, std::abs(local[i]) / jb.box.half_length(i));
  }
  return worst;
}

ConvexPolytope as_polytope(const Domain& d) {
  if (const auto* box = std::get_if<Orthotope>(&d)) return box->to_polytope();
  return std::get<ConvexPolytope>(d);
}

}  // namespace

// ---------------------------------------------------------------------------
// Domains

int dimension(const Domain& d) {
  return std::visit([](const auto& b) { return b.dim(); }, d);
}

double domain_diameter(const Domain& d) {
  return std::visit([](const auto& b) { return diameter(b).value; }, d);
}

double domain_volume(const Domain& d) {
  return std::visit([](const auto& b) { return volume(b); }, d);
}

std::optional<Orthotope> domain_box(const Domain& d) {
  if (const auto* box = std::get_if<Orthotope>(&d)) return *box;
  return as_orthotope(std::get<ConvexPolytope>(d));
}

std::string describe(const Domain& d) {
  std::ostringstream os;
  if (const auto* box = std::get_if<Orthotope>(&d)) {
    os << "box";
    for (double a : box->half_lengths()) os << ':' << fmt_double(a);
    for (int i = 0; i < box->dim(); ++i) os << '@' << fmt_double(box->center()[i]);
    return os.str();
  }
  const auto& poly = std::get<ConvexPolytope>(d);
  os << "polytope" << poly.dim();
  for (const auto& h : poly.halfspaces()) {
    os << '[';
    for (int i = 0; i < poly.dim(); ++i) os << fmt_double(h.normal[i]) << ',';
    os << fmt_double(h.offset) << ']';
  }
  return os.str();
}

Spectrum domain_spectrum(const Domain& d, int K, const VerifyOptions& opts) {
  const auto box = domain_box(d);
  if (box && !(opts.fem_boxes && box->dim() == 2)) return orthotope_spectrum(*box, K);
  const ConvexPolytope poly = as_polytope(d);
  if (poly.dim() != 2) throw Error("FEM spectra require a 2D polygon");
  PolygonSpectrumOptions po;
  po.max_halvings = opts.max_halvings;
  const double h = opts.h > 0.0 ? opts.h : opts.h_rel * mesh_scale(poly);
  return polygon_spectrum(poly, K, h, opts.tol, po);
}

// ---------------------------------------------------------------------------
// Reports

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::inconclusive_pass: return "inconclusive_pass";
    case CheckStatus::fail: return "fail";
  }
  return "fail";
}

InequalityReport make_report(std::string name, int n, int k, int l, double lhs, double rhs, double rel_error,
                             const std::string& inputs) {
  InequalityReport r;
  r.name = std::move(name);
  r.n = n;
  r.k = k;
  r.l = l;
  r.lhs = lhs;
  r.rhs = rhs;
  r.rel_error = rel_error;
  if (lhs > 0.0) {
    r.slack = rhs / lhs;
  } else {
    r.slack = rhs >= lhs ? std::numeric_limits<double>::infinity() : 0.0;
  }
  if (r.slack >= 1.0 - kPassTolerance) {
    r.status = CheckStatus::pass;
  } else if (rel_error > 0.0 && r.slack >= 1.0 - 2.0 * rel_error) {
    r.status = CheckStatus::inconclusive_pass;
  } else {
    r.status = CheckStatus::fail;
  }
  r.pass = r.status != CheckStatus::fail;
  r.digest = fnv1a(r.name + '|' + std::to_string(k) + '|' + std::to_string(l) + '|' + inputs);
  return r;
}

std::pair<InequalityReport, InequalityReport> theorem_1_1(const Spectrum& spec, int n, int k, int l,
                                                          const std::string& inputs) {
  if (l < 1) throw Error("l must be >= 1");
  if (k < l) throw Error("k must be >= l");
  const double A = aggregate(n);
  const double mk = mu(spec, k);
  const double ml = mu(spec, l);
  const double ratio = static_cast<double>(k) / l;
  const double err = 2.0 * spec.rel_error;
  auto lower = make_report("thm1.1-lower", n, k, l, std::pow(ratio, 2.0 / n) * ml / A, mk, err, inputs);
  auto upper = make_report("thm1.1-upper", n, k, l, mk, A * ratio * ratio * ml, err, inputs);
  return {std::move(lower), std::move(upper)};
}

std::pair<InequalityReport, InequalityReport> theorem_1_1(const Domain& d, int k, int l, const VerifyOptions& opts) {
  if (l < 1) throw Error("l must be >= 1");
  if (k < l) throw Error("k must be >= l");
  return theorem_1_1(domain_spectrum(d, k, opts), dimension(d), k, l, describe(d));
}

InequalityReport payne_weinberger(const Domain& d, const VerifyOptions& opts) {
  const Spectrum spec = domain_spectrum(d, 1, opts);
  return make_report("payne-weinberger", dimension(d), 1, 0, pw_lower_bound(domain_diameter(d)), spec.values[1],
                     spec.rel_error, describe(d));
}

std::vector<InequalityReport> kroger(const Domain& d, int K, const VerifyOptions& opts) {
  if (K < 1) throw Error("K must be >= 1");
  const Spectrum spec = domain_spectrum(d, K, opts);
  const int n = dimension(d);
  const double vol = domain_volume(d);
  const std::string inputs = describe(d);
  std::vector<InequalityReport> out;
  for (int k = 1; k <= K; ++k) {
    out.push_back(make_report("kroger", n, k, 0, mu(spec, k), kroger_bound(n, vol, k), spec.rel_error, inputs));
  }
  return out;
}

InequalityReport domain_monotonicity(const Domain& inner, const Domain& outer, int k, const VerifyOptions& opts) {
  const int n = dimension(inner);
  if (dimension(outer) != n) throw Error("dimension mismatch");
  const Containment c = contains(as_polytope(outer), as_polytope(inner));
  if (!c.contained) throw Error("inner domain is not contained in the outer domain");
  const Spectrum si = domain_spectrum(inner, k, opts);
  const Spectrum so = domain_spectrum(outer, k, opts);
  return make_report("domain-monotonicity", n, k, 0, mu(so, k), kMonotonicity * n * n * mu(si, k),
                     si.rel_error + so.rel_error, describe(inner) + '|' + describe(outer));
}

InequalityReport buser(const Domain& d, const std::vector<ConvexPolytope>& cells, int k, const VerifyOptions& opts) {
  if (cells.empty()) throw Error("partition has no cells");
  if (static_cast<int>(cells.size()) > k) throw Error("partition has more than k cells");
  const Spectrum spec = domain_spectrum(d, k, opts);
  const CellValues cv = cell_values(cells, opts);
  auto r = make_report("buser", dimension(d), k, static_cast<int>(cells.size()), cv.min_mu1, mu(spec, k),
                       cv.rel_error + spec.rel_error, describe(d));
  r.note = cv.note;
  return r;
}

InequalityReport buser(const Domain& d, const PartitionResult& partition, int k, const VerifyOptions& opts) {
  return buser(d, partition.cells, k, opts);
}

// ---------------------------------------------------------------------------
// Chain

ChainReport full_chain(const Domain& d, int k, int l, const VerifyOptions& opts) {
  if (l < 1) throw Error("l must be >= 1");
  if (k < l) throw Error("k must be >= l");
  const ConvexPolytope body = as_polytope(d);
  const int n = body.dim();
  const double sn = std::sqrt(static_cast<double>(n));
  const ConstantLedger ledger = constants(n);
  const double c2 = ledger.c * ledger.c;
  const double n3 = std::pow(static_cast<double>(n), 3);
  const double m92 = kMonotonicity;
  const std::string inputs = describe(d);

  ChainReport out{john_box(body), {}, false};
  const Orthotope& R = out.john.box;
  auto link = [&](const std::string& name, double lhs, double rhs, double err, int kk, int ll) {
    out.links.push_back(make_report(name, n, kk, ll, lhs, rhs, err, inputs));
  };
  link("john.inner", 1.0 / sn, inscribed_factor(out.john, body), 0.0, 0, 0);
  link("john.outer", circumscribed_factor(out.john, body), static_cast<double>(n), 0.0, 0, 0);

  const Spectrum omega = domain_spectrum(d, k, opts);
  const Spectrum specR = orthotope_spectrum(R, k);
  std::vector<double> scaled_out = R.half_lengths();
  std::vector<double> scaled_in = R.half_lengths();
  for (double& a : scaled_out) a *= n;
  for (double& a : scaled_in) a /= sn;
  const Spectrum specOut = orthotope_spectrum(Orthotope(scaled_out), k);
  const Spectrum specIn = orthotope_spectrum(Orthotope(scaled_in), k);
  const double e = omega.rel_error;
  const NestedSpectra nested(R, specR, k);

  // Upper inequality through the first partition lemma; lower through the second.
  for (int which = 0; which < 2; ++which) {
    const bool upper = which == 0;
    const std::string p = upper ? "upper." : "lower.";
    const PartitionResult part = upper ? partition_lemma1(nested, k, l) : partition_lemma2(nested, k, l);
    const int budget = upper ? l : k;
    const int small = upper ? l : k;  // index of the eigenvalue being bounded below
    const int large = upper ? k : l;  // index of the eigenvalue on the other side
    const int count = part.count;
    const CellValues cv = cell_values(part.cells, opts);
    const double bound_term = upper ? static_cast<double>(l) * l * mu(specR, k) / (c2 * n3 * k * k)
                                    : std::pow(static_cast<double>(k) / l, 2.0 / n) * mu(specR, l) / (c2 * n3);
    const double index_factor = upper ? static_cast<double>(l) * l / (static_cast<double>(k) * k)
                                      : std::pow(static_cast<double>(k) / l, 2.0 / n);

    link(p + "count", count, budget, 0.0, k, l);
    link(p + "index-monotone", mu(specR, count), mu(specR, small), 0.0, k, l);
    link(p + "buser", cv.min_mu1, mu(specR, count), cv.rel_error, k, l);
    if (!cv.note.empty()) out.links.back().note = cv.note;
    link(p + "payne-weinberger", cv.min_pw, cv.min_mu1, cv.rel_error, k, l);
    link(p + "partition-bound", bound_term, cv.min_pw, 0.0, k, l);
    link(p + "monotonicity-outer", mu(specOut, small) / (m92 * n * n), mu(omega, small), e, k, l);
    link(p + "scaling-outer", mu(specR, small) / (m92 * n3 * n), mu(specOut, small) / (m92 * n * n), 0.0, k, l);
    link(p + "scaling-inner", index_factor * mu(specIn, large) / (m92 * c2 * std::pow(n, 8)),
         index_factor * mu(specR, large) / (m92 * c2 * std::pow(n, 7)), 0.0, k, l);
    link(p + "monotonicity-inner", mu(omega, large), m92 * n * n * mu(specIn, large), e, k, l);
    const auto thm = theorem_1_1(omega, n, k, l, inputs);
    out.links.push_back(upper ? thm.second : thm.first);
  }
  out.pass = std::all_of(out.links.begin(), out.links.end(), [](const auto& r) { return r.pass; });
  return out;
}

// ---------------------------------------------------------------------------
// Families

std::string to_string(FamilyKind f) {
  switch (f) {
    case FamilyKind::boxes: return "boxes";
    case FamilyKind::segments: return "segments";
    case FamilyKind::squares: return "squares";
    case FamilyKind::polygons: return "polygons";
  }
  return "boxes";
}

FamilyKind family_from_string(const std::string& s) {
  if (s == "boxes") return FamilyKind::boxes;
  if (s == "segments") return FamilyKind::segments;
  if (s == "squares") return FamilyKind::squares;
  if (s == "polygons") return FamilyKind::polygons;
  throw Error("unknown family: " + s);
}

double uniform01(std::uint64_t& state) { return static_cast<double>(splitmix(state) >> 11) * 0x1.0p-53; }

Orthotope random_box(std::uint64_t seed, int n_min, int n_max, double max_aspect) {
  if (n_min < 1 || n_max < n_min) throw Error("invalid dimension range");
  if (!(max_aspect >= 1.0)) throw Error("max_aspect must be >= 1");
  std::uint64_t s = seed;
  const int n = n_min + static_cast<int>(uniform01(s) * (n_max - n_min + 1));
  const double span = std::log10(max_aspect);
  std::vector<double> a(static_cast<std::size_t>(n));
  for (double& v : a) v = 0.5 * std::pow(10.0, span * uniform01(s));
  return Orthotope(std::move(a));
}

ConvexPolytope random_convex_polygon(std::uint64_t seed, double max_aspect) {
  std::uint64_t s = seed;
  const int m = 6 + static_cast<int>(uniform01(s) * 11);
  const double aspect = std::pow(10.0, std::log10(std::max(1.0, max_aspect)) * uniform01(s));
  const double size = 0.5 + 1.5 * uniform01(s);
  const double tilt = std::numbers::pi * uniform01(s);
  const double ct = std::cos(tilt);
  const double st = std::sin(tilt);
  std::vector<double> angles(static_cast<std::size_t>(m));
  for (double& t : angles) t = 2.0 * std::numbers::pi * uniform01(s);
  std::sort(angles.begin(), angles.end());
  std::vector<Point> pts;
  for (double t : angles) {
    const double x = size * std::cos(t);
    const double y = size / aspect * std::sin(t);
    Point p(2);
    p << ct * x - st * y, st * x + ct * y;
    pts.push_back(p);
  }
  return ConvexPolytope::polygon(pts);
}

std::pair<ConvexPolytope, ConvexPolytope> random_nested_pair(std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    std::uint64_t s = child_seed(seed, attempt);
    const ConvexPolytope outer = random_convex_polygon(splitmix(s), 4.0);
    const auto& verts = *outer.vertices();
    std::vector<Point> pts;
    const int m = 5 + static_cast<int>(uniform01(s) * 8);
    for (int i = 0; i < m; ++i) {
      Point p = Point::Zero(2);
      double total = 0.0;
      for (const auto& v : verts) {
        const double w = std::pow(uniform01(s), 4.0);
        p += w * v;
        total += w;
      }
      pts.push_back(p / total);
    }
    try {
      ConvexPolytope inner = ConvexPolytope::polygon(pts);
      if (inner.vertices()->size() >= 3 && volume(inner) > 0.05 * volume(outer)) return {std::move(inner), outer};
    } catch (const Error&) {
    }
  }
}

std::vector<Domain> generate_family(const FamilySpec& spec, std::uint64_t seed) {
  if (spec.count < 0) throw Error("family count must be >= 0");
  std::vector<Domain> out;
  for (int i = 0; i < spec.count; ++i) {
    std::uint64_t s = child_seed(seed, static_cast<std::uint64_t>(i));
    switch (spec.kind) {
      case FamilyKind::boxes:
        out.emplace_back(random_box(s, spec.n, spec.n, spec.max_aspect));
        break;
      case FamilyKind::segments:
        out.emplace_back(Orthotope({0.5 * std::pow(10.0, 2.0 * uniform01(s) - 1.0)}));
        break;
      case FamilyKind::squares: {
        const double a = 0.5 * std::pow(10.0, 2.0 * uniform01(s) - 1.0);
        out.emplace_back(Orthotope({a, a}));
        break;
      }
      case FamilyKind::polygons:
        out.emplace_back(random_convex_polygon(s, spec.max_aspect));
        break;
    }
  }
  return out;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex guard;
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(guard);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Sweeps

SweepResult sweep(const FamilySpec& family, int k_max, int l_max, std::uint64_t seed, int jobs,
                  const std::string& inequality, const VerifyOptions& opts) {
  if (k_max < 1) throw Error("k_max must be >= 1");
  if (l_max < 1) throw Error("l_max must be >= 1");
  if (inequality != "thm1.1-upper" && inequality != "thm1.1-lower" && inequality != "kroger" &&
      inequality != "payne-weinberger") {
    throw Error("unknown inequality: " + inequality);
  }
  const std::vector<Domain> domains = generate_family(family, seed);
  const int count = static_cast<int>(domains.size());

  struct PerDomain {
    std::vector<InequalityReport> rows;
    double c1 = std::numeric_limits<double>::infinity();
    double c2 = 0.0;
    double c3 = 0.0;
    double upper = 0.0;
    double lower = 0.0;
    int instances = 0;
    int pairs = 0;
  };
  std::vector<PerDomain> results(static_cast<std::size_t>(count));

  parallel_for(count, jobs, [&](int i) {
    const Domain& d = domains[static_cast<std::size_t>(i)];
    const int n = dimension(d);
    const double n4 = std::pow(static_cast<double>(n), 4);
    const Spectrum spec = domain_spectrum(d, k_max + 1, opts);
    const std::string inputs = describe(d);
    PerDomain& out = results[static_cast<std::size_t>(i)];
    const double m1 = mu(spec, 1);
    for (int k = 1; k <= k_max; ++k) {
      const double mk = mu(spec, k);
      out.c1 = std::min(out.c1, mk / (std::pow(static_cast<double>(k), 2.0 / n) * m1));
      out.c2 = std::max(out.c2, mk / (static_cast<double>(k) * k * m1));
      out.c3 = std::max(out.c3, mu(spec, k + 1) / (n4 * mk));
      ++out.instances;
      for (int l = 1; l <= std::min(k, l_max); ++l) {
        const double ratio = static_cast<double>(k) / l;
        const double ml = mu(spec, l);
        out.upper = std::max(out.upper, mk / (ratio * ratio * ml));
        out.lower = std::max(out.lower, std::pow(ratio, 2.0 / n) * ml / mk);
        ++out.pairs;
        if (inequality.rfind("thm1.1", 0) == 0) {
          auto [lo, up] = theorem_1_1(spec, n, k, l, inputs);
          out.rows.push_back(inequality == "thm1.1-upper" ? std::move(up) : std::move(lo));
        }
      }
      if (inequality == "kroger") {
        out.rows.push_back(make_report("kroger", n, k, 0, mk, kroger_bound(n, domain_volume(d), k), spec.rel_error,
                                       inputs));
      }
    }
    if (inequality == "payne-weinberger") {
      out.rows.push_back(
          make_report("payne-weinberger", n, 1, 0, pw_lower_bound(domain_diameter(d)), m1, spec.rel_error, inputs));
    }
  });

  SweepResult result;
  EmpiricalTable& table = result.table;
  table.family = to_string(family.kind);
  table.domains = count;
  EmpiricalConstant c1{"c1", "mu_k >= c1 k^(2/n) mu_1", std::numeric_limits<double>::infinity(), 0.0, 0};
  EmpiricalConstant c2{"c2", "mu_k <= c2 k^2 mu_1", 0.0, 0.0, 0};
  EmpiricalConstant c3{"c3", "mu_(k+1) <= c3 n^4 mu_k", 0.0, 0.0, 0};
  EmpiricalConstant up{"thm1.1-upper", "mu_k <= A (k/l)^2 mu_l", 0.0, 0.0, 0};
  EmpiricalConstant lo{"thm1.1-lower", "(k/l)^(2/n) mu_l / A <= mu_k", 0.0, 0.0, 0};
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto& r = results[i];
    for (auto& row : r.rows) result.rows.push_back(std::move(row));
    c1.value = std::min(c1.value, r.c1);
    c2.value = std::max(c2.value, r.c2);
    c3.value = std::max(c3.value, r.c3);
    up.value = std::max(up.value, r.upper);
    lo.value = std::max(lo.value, r.lower);
    const double A = aggregate(dimension(domains[i]));
    up.proven = std::max(up.proven, A);
    lo.proven = std::max(lo.proven, A);
    c1.instances += r.instances;
    c2.instances += r.instances;
    c3.instances += r.instances;
    up.instances += r.pairs;
    lo.instances += r.pairs;
  }
  if (count == 0) c1.value = 0.0;
  table.constants = {c1, c2, c3, up, lo};
  return result;
}

EmpiricalTable empirical_constants(const FamilySpec& family, int k_max, int l_max, std::uint64_t seed, int jobs,
                                   const VerifyOptions& opts) {
  return sweep(family, k_max, l_max, seed, jobs, "thm1.1-upper", opts).table;
}

}  // namespace spl
