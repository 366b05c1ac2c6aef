#include "spl/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "spl/error.hpp"

namespace spl {
namespace {

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) v = 0.0;  // drop the sign of -0 so values re-parse identically
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        emit(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& v) { return v.is_structured(); });
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        emit(out, v, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += number(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

Json point_json(const Point& p) {
  Json a = Json::array();
  for (int i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

Point point_from(const Json& j) {
  Point p(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) p[static_cast<int>(i)] = j.at(i).get<double>();
  return p;
}

std::vector<double> doubles(const Json& j) { return j.get<std::vector<double>>(); }

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(std::string("invalid ") + what + " JSON: " + e.what());
  }
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::string out;
  emit(out, j, indent, 0);
  out += '\n';
  return out;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
    throw Error(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

// ---------------------------------------------------------------------------
// Writers

Json to_json(const Orthotope& box) {
  Json j;
  j["half_lengths"] = box.half_lengths();
  j["center"] = point_json(box.center());
  return j;
}

Json to_json(const ConvexPolytope& body) {
  Json j;
  j["dim"] = body.dim();
  Json hs = Json::array();
  for (const auto& h : body.halfspaces()) {
    Json row = point_json(h.normal);
    row.push_back(h.offset);
    hs.push_back(std::move(row));
  }
  j["halfspaces"] = std::move(hs);
  if (body.vertices()) {
    Json vs = Json::array();
    for (const auto& v : *body.vertices()) vs.push_back(point_json(v));
    j["vertices"] = std::move(vs);
  }
  return j;
}

Json to_json(const Spectrum& spec) {
  Json j;
  j["values"] = spec.values;
  j["source"] = to_string(spec.source);
  j["rel_error"] = spec.rel_error;
  return j;
}

Json to_json(const TraceStep& step) {
  Json j;
  j["dim"] = step.dim;
  j["branch"] = to_string(step.branch);
  j["r"] = step.r;
  j["mu"] = step.mu;
  j["level_bound"] = step.level_bound;
  j["half_lengths"] = step.half_lengths;
  Json pts = Json::array();
  for (const auto& p : step.net_points) pts.push_back(point_json(p));
  j["net_points"] = std::move(pts);
  j["packing_lhs"] = step.packing_lhs;
  j["packing_rhs"] = step.packing_rhs;
  return j;
}

Json to_json(const PartitionResult& result) {
  Json j;
  j["count"] = result.count;
  j["budget"] = result.budget;
  j["diam_bound"] = result.diam_bound;
  j["max_cell_diam"] = result.max_cell_diam;
  j["margin"] = result.diam_bound / result.max_cell_diam;
  j["diam_upper_bound"] = result.diam_upper_bound;
  j["cell_diameters"] = result.cell_diameters;
  Json trace = Json::array();
  for (const auto& s : result.trace) trace.push_back(to_json(s));
  j["trace"] = std::move(trace);
  Json cells = Json::array();
  for (const auto& c : result.cells) cells.push_back(to_json(c));
  j["cells"] = std::move(cells);
  return j;
}

Json to_json(const PartitionReport& report) {
  Json j;
  j["pass"] = report.pass;
  j["count"] = report.count;
  j["budget"] = report.budget;
  j["bound"] = report.bound;
  j["max_cell_diam"] = report.max_cell_diam;
  j["diameter_margin"] = report.diameter_margin;
  j["volume_checked"] = report.volume_checked;
  j["volume_rel_error"] = report.volume_rel_error;
  j["samples"] = report.samples;
  j["overlaps"] = report.overlaps;
  j["uncovered"] = report.uncovered;
  j["failures"] = report.failures;
  return j;
}

Json to_json(const TriMesh& mesh) {
  Json j;
  Json vs = Json::array();
  for (const auto& v : mesh.vertices) vs.push_back(Json::array({v.x(), v.y()}));
  j["vertices"] = std::move(vs);
  Json ts = Json::array();
  for (const auto& t : mesh.triangles) ts.push_back(Json::array({t[0], t[1], t[2]}));
  j["triangles"] = std::move(ts);
  return j;
}

Json to_json(const InequalityReport& r) {
  Json j;
  j["name"] = r.name;
  j["n"] = r.n;
  j["k"] = r.k;
  j["l"] = r.l;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["rel_error"] = r.rel_error;
  j["status"] = to_string(r.status);
  j["pass"] = r.pass;
  j["digest"] = r.digest;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const JohnBox& john) {
  Json j;
  j["half_lengths"] = john.box.half_lengths();
  j["center"] = point_json(john.center);
  Json rot = Json::array();
  for (int i = 0; i < john.rotation.cols(); ++i) rot.push_back(point_json(john.rotation.col(i)));
  j["axes"] = std::move(rot);
  j["inner_margin"] = john.inner_margin;
  j["outer_margin"] = john.outer_margin;
  j["newton_steps"] = john.newton_steps;
  return j;
}

Json to_json(const ChainReport& chain) {
  Json j;
  j["pass"] = chain.pass;
  j["john"] = to_json(chain.john);
  Json links = Json::array();
  for (const auto& r : chain.links) links.push_back(to_json(r));
  j["links"] = std::move(links);
  return j;
}

Json to_json(const ConstantLedger& ledger) {
  Json j;
  j["n"] = ledger.n;
  j["C"] = ledger.C;
  j["c"] = ledger.c;
  j["margin"] = ledger.margin;
  j["monotonicity"] = ledger.monotonicity;
  j["aggregate_upper"] = ledger.aggregate_upper;
  j["aggregate_lower"] = ledger.aggregate_lower;
  return j;
}

Json to_json(const EmpiricalTable& table) {
  Json j;
  j["family"] = table.family;
  j["domains"] = table.domains;
  Json rows = Json::array();
  for (const auto& c : table.constants) {
    Json r;
    r["name"] = c.name;
    r["relation"] = c.relation;
    r["value"] = c.value;
    if (c.proven > 0.0) {
      r["proven"] = c.proven;
      r["proven_over_value"] = c.proven / c.value;
    } else {
      r["proven"] = nullptr;
    }
    r["instances"] = c.instances;
    rows.push_back(std::move(r));
  }
  j["constants"] = std::move(rows);
  return j;
}

// ---------------------------------------------------------------------------
// Readers

Orthotope orthotope_from_json(const Json& j) {
  return guarded("orthotope", [&] {
    std::vector<double> a = doubles(j.at("half_lengths"));
    if (j.contains("center")) {
      Point c = point_from(j.at("center"));
      if (c.size() != static_cast<int>(a.size())) throw Error("orthotope center has the wrong dimension");
      return Orthotope(std::move(a), std::move(c));
    }
    return Orthotope(std::move(a));
  });
}

ConvexPolytope polytope_from_json(const Json& j) {
  return guarded("polytope", [&] {
    if (!j.contains("halfspaces")) {
      std::vector<Point> pts;
      for (const auto& v : j.at("vertices")) pts.push_back(point_from(v));
      if (!pts.empty() && pts.front().size() != 2) throw Error("a bare vertex list must be 2D");
      return ConvexPolytope::polygon(pts);
    }
    const int dim = j.at("dim").get<int>();
    std::vector<Halfspace> hs;
    for (const auto& row : j.at("halfspaces")) {
      if (static_cast<int>(row.size()) != dim + 1) throw Error("halfspace row must have dim + 1 entries");
      Point normal(dim);
      for (int i = 0; i < dim; ++i) normal[i] = row.at(static_cast<std::size_t>(i)).get<double>();
      hs.push_back({normal, row.at(static_cast<std::size_t>(dim)).get<double>()});
    }
    if (j.contains("vertices")) {
      std::vector<Point> vs;
      for (const auto& v : j.at("vertices")) vs.push_back(point_from(v));
      return ConvexPolytope(dim, std::move(hs), std::move(vs));
    }
    return ConvexPolytope(dim, std::move(hs));
  });
}

Domain domain_from_json(const Json& j) {
  if (j.contains("half_lengths")) return orthotope_from_json(j);
  return polytope_from_json(j);
}

Spectrum spectrum_from_json(const Json& j) {
  return guarded("spectrum", [&] {
    Spectrum s;
    s.values = doubles(j.at("values"));
    s.source = spectrum_source_from_string(j.at("source").get<std::string>());
    s.rel_error = j.at("rel_error").get<double>();
    return s;
  });
}

TraceStep trace_step_from_json(const Json& j) {
  return guarded("trace", [&] {
    TraceStep s;
    s.dim = j.at("dim").get<int>();
    s.branch = branch_from_string(j.at("branch").get<std::string>());
    s.r = j.at("r").get<double>();
    s.mu = j.at("mu").get<double>();
    s.level_bound = j.at("level_bound").get<double>();
    s.half_lengths = doubles(j.at("half_lengths"));
    for (const auto& p : j.at("net_points")) s.net_points.push_back(point_from(p));
    s.packing_lhs = j.at("packing_lhs").get<double>();
    s.packing_rhs = j.at("packing_rhs").get<double>();
    return s;
  });
}

PartitionResult partition_from_json(const Json& j) {
  return guarded("partition", [&] {
    PartitionResult r;
    r.count = j.at("count").get<int>();
    r.budget = j.at("budget").get<int>();
    r.diam_bound = j.at("diam_bound").get<double>();
    r.max_cell_diam = j.at("max_cell_diam").get<double>();
    r.diam_upper_bound = j.at("diam_upper_bound").get<bool>();
    r.cell_diameters = doubles(j.at("cell_diameters"));
    for (const auto& s : j.at("trace")) r.trace.push_back(trace_step_from_json(s));
    for (const auto& c : j.at("cells")) r.cells.push_back(polytope_from_json(c));
    return r;
  });
}

TriMesh mesh_from_json(const Json& j) {
  return guarded("mesh", [&] {
    TriMesh m;
    for (const auto& v : j.at("vertices")) m.vertices.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    for (const auto& t : j.at("triangles")) m.triangles.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    return m;
  });
}

InequalityReport report_from_json(const Json& j) {
  return guarded("report", [&] {
    InequalityReport r;
    r.name = j.at("name").get<std::string>();
    r.n = j.at("n").get<int>();
    r.k = j.at("k").get<int>();
    r.l = j.at("l").get<int>();
    // Non-finite values are written as null; the only one a report produces is +inf.
    const auto real = [&](const char* key) {
      const Json& v = j.at(key);
      return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
    };
    r.lhs = real("lhs");
    r.rhs = real("rhs");
    r.slack = real("slack");
    r.rel_error = j.at("rel_error").get<double>();
    const auto status = j.at("status").get<std::string>();
    if (status == "pass") {
      r.status = CheckStatus::pass;
    } else if (status == "inconclusive_pass") {
      r.status = CheckStatus::inconclusive_pass;
    } else if (status == "fail") {
      r.status = CheckStatus::fail;
    } else {
      throw Error("unknown report status: " + status);
    }
    r.pass = j.at("pass").get<bool>();
    r.digest = j.at("digest").get<std::string>();
    if (j.contains("note")) r.note = j.at("note").get<std::string>();
    return r;
  });
}

ConstantLedger ledger_from_json(const Json& j) {
  return guarded("ledger", [&] {
    ConstantLedger l;
    l.n = j.at("n").get<int>();
    l.C = j.at("C").get<double>();
    l.c = j.at("c").get<double>();
    l.margin = j.at("margin").get<double>();
    l.monotonicity = j.at("monotonicity").get<double>();
    l.aggregate_upper = j.at("aggregate_upper").get<double>();
    l.aggregate_lower = j.at("aggregate_lower").get<double>();
    return l;
  });
}

// ---------------------------------------------------------------------------
// CSV and files

std::string reports_csv(const std::vector<InequalityReport>& rows) {
  std::string out = "name,n,k,l,lhs,rhs,slack,pass\n";
  for (const auto& r : rows) {
    out += r.name + ',' + std::to_string(r.n) + ',' + std::to_string(r.k) + ',' + std::to_string(r.l) + ',' +
           number(r.lhs) + ',' + number(r.rhs) + ',' + number(r.slack) + ',' + (r.pass ? "true" : "false") + '\n';
  }
  return out;
}

std::string plot_csv(const std::vector<InequalityReport>& rows) {
  std::string out = "k_over_l,slack\n";
  for (const auto& r : rows) {
    const double ratio = r.l > 0 ? static_cast<double>(r.k) / r.l : static_cast<double>(r.k);
    out += number(ratio) + ',' + number(r.slack) + '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename onto " + path + ": " + ec.message());
  }
}

}  // namespace spl
