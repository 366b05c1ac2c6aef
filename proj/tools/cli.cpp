#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "spl/error.hpp"
#include "spl/mesh_fem.hpp"
#include "spl/partition.hpp"
#include "spl/verify.hpp"

namespace spl::cli {
namespace {

std::shared_ptr<spdlog::logger> logger() {
  if (auto existing = spdlog::get("spl")) return existing;
  auto log = spdlog::stderr_logger_mt("spl");
  log->set_pattern("[%l] %v");
  log->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SPL_LOG")) {
    const std::string level = env;
    if (level == "error") log->set_level(spdlog::level::err);
    else if (level == "warn") log->set_level(spdlog::level::warn);
    else if (level == "info") log->set_level(spdlog::level::info);
    else if (level == "debug") log->set_level(spdlog::level::debug);
    else log->warn("ignoring SPL_LOG={}; expected error, warn, info or debug", level);
  }
  return log;
}

const std::set<std::string> kCommands = {"spectrum", "partition", "verify", "sweep", "fem", "constants"};

Json load_domain_file(const std::string& path) { return parse_json(read_file(path), path); }

Domain resolve_domain(const RunConfig& cfg) {
  if (!cfg.box.empty() && cfg.polygon) throw Error("give either --box or --polygon, not both");
  if (!cfg.box.empty()) return Orthotope(cfg.box);
  if (cfg.polygon) return domain_from_json(*cfg.polygon);
  throw Error("a domain is required (--box or --polygon)");
}

VerifyOptions verify_options(const RunConfig& cfg) {
  VerifyOptions o;
  o.h = cfg.h;
  o.tol = cfg.tol;
  return o;
}

std::string format_of(const RunConfig& cfg) {
  if (!cfg.format.empty()) return cfg.format;
  return cfg.command == "sweep" ? "csv" : "json";
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.out.empty()) {
    out << content;
  } else {
    write_atomic(cfg.out, content);
    logger()->info("wrote {}", cfg.out);
  }
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string spectrum_csv(const Spectrum& s) {
  std::string csv = "k,value\n";
  for (std::size_t i = 0; i < s.values.size(); ++i) csv += std::to_string(i) + ',' + num(s.values[i]) + '\n';
  return csv;
}

bool all_pass(const std::vector<InequalityReport>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
}

void summarize(const std::vector<InequalityReport>& rows, std::ostream& err) {
  for (const auto& r : rows) {
    err << r.name << " k=" << r.k << " l=" << r.l << " lhs=" << num(r.lhs) << " rhs=" << num(r.rhs)
        << " slack=" << num(r.slack) << ' ' << to_string(r.status) << '\n';
  }
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Domain d = resolve_domain(cfg);
  const Spectrum s = domain_spectrum(d, cfg.K, verify_options(cfg));
  emit(cfg, format_of(cfg) == "csv" ? spectrum_csv(s) : dump(to_json(s)), out);
  err << "spectrum: " << s.values.size() << " values, source " << to_string(s.source) << ", rel_error "
      << num(s.rel_error) << '\n';
  return ok;
}

int cmd_partition(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto box = domain_box(resolve_domain(cfg));
  if (!box) throw Error("partition requires an orthotope domain");
  if (cfg.lemma != 1 && cfg.lemma != 2) throw Error("--lemma must be 1 or 2");
  const NestedSpectra spectra(*box, cfg.k);
  const PartitionResult result =
      cfg.lemma == 1 ? partition_lemma1(spectra, cfg.k, cfg.l) : partition_lemma2(spectra, cfg.k, cfg.l);
  if (cfg.budget < 0) throw Error("--budget must be >= 0");
  const int budget = cfg.budget > 0 ? cfg.budget : result.budget;
  const PartitionReport report = verify_partition(result, *box, budget, result.diam_bound, 2000, cfg.seed);
  if (format_of(cfg) == "csv") {
    std::string csv = "cell,diameter\n";
    for (std::size_t i = 0; i < result.cell_diameters.size(); ++i) {
      csv += std::to_string(i) + ',' + num(result.cell_diameters[i]) + '\n';
    }
    emit(cfg, csv, out);
  } else {
    Json j;
    j["lemma"] = cfg.lemma;
    j["k"] = cfg.k;
    j["l"] = cfg.l;
    j["box"] = to_json(*box);
    j["partition"] = to_json(result);
    j["verification"] = to_json(report);
    emit(cfg, dump(j), out);
  }
  err << "partition: " << result.count << " cells (budget " << budget << "), max diam "
      << num(result.max_cell_diam) << ", bound " << num(result.diam_bound) << ", "
      << (report.pass ? "pass" : "FAIL") << '\n';
  for (const auto& f : report.failures) err << "  " << f << '\n';
  return report.pass ? ok : inequality_failed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Domain d = resolve_domain(cfg);
  const VerifyOptions opts = verify_options(cfg);
  std::vector<InequalityReport> rows;
  Json j;
  j["theorem"] = cfg.theorem;
  if (cfg.theorem == "1.1") {
    auto [lower, upper] = theorem_1_1(d, cfg.k, cfg.l, opts);
    rows = {lower, upper};
  } else if (cfg.theorem == "2.2") {
    if (!cfg.inner) throw Error("--inner is required for the monotonicity check");
    rows = {domain_monotonicity(domain_from_json(*cfg.inner), d, cfg.k, opts)};
  } else if (cfg.theorem == "2.3") {
    rows = {payne_weinberger(d, opts)};
  } else if (cfg.theorem == "2.4") {
    rows = kroger(d, cfg.K, opts);
  } else if (cfg.theorem == "2.5") {
    const auto box = domain_box(d);
    if (!box) throw Error("the Buser check partitions an orthotope domain");
    const NestedSpectra spectra(*box, cfg.k);
    const PartitionResult part =
        cfg.lemma == 2 ? partition_lemma2(spectra, cfg.k, cfg.l) : partition_lemma1(spectra, cfg.k, cfg.l);
    rows = {buser(d, part, part.count, opts)};
  } else if (cfg.theorem == "chain") {
    const ChainReport chain = full_chain(d, cfg.k, cfg.l, opts);
    j["john"] = to_json(chain.john);
    rows = chain.links;
  } else {
    throw Error("unknown --theorem " + cfg.theorem + " (expected 1.1, 2.2, 2.3, 2.4, 2.5 or chain)");
  }
  const bool pass = all_pass(rows);
  if (format_of(cfg) == "csv") {
    emit(cfg, reports_csv(rows), out);
  } else {
    j["pass"] = pass;
    Json reports = Json::array();
    for (const auto& r : rows) reports.push_back(to_json(r));
    j["reports"] = std::move(reports);
    emit(cfg, dump(j), out);
  }
  summarize(rows, err);
  return pass ? ok : inequality_failed;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  FamilySpec family;
  family.kind = family_from_string(cfg.family);
  family.n = cfg.n;
  family.count = cfg.count;
  family.max_aspect = cfg.max_aspect;
  const SweepResult result = sweep(family, cfg.k, cfg.l, cfg.seed, cfg.jobs, cfg.inequality, verify_options(cfg));
  if (format_of(cfg) == "csv") {
    emit(cfg, reports_csv(result.rows), out);
    if (!cfg.out.empty()) {
      const auto plot = std::filesystem::path(cfg.out).parent_path() / "plot.csv";
      write_atomic(plot.string(), plot_csv(result.rows));
    }
  } else {
    Json j;
    j["family"] = cfg.family;
    j["n"] = cfg.n;
    j["count"] = cfg.count;
    j["seed"] = cfg.seed;
    j["k_max"] = cfg.k;
    j["l_max"] = cfg.l;
    j["inequality"] = cfg.inequality;
    j["table"] = to_json(result.table);
    Json reports = Json::array();
    for (const auto& r : result.rows) reports.push_back(to_json(r));
    j["reports"] = std::move(reports);
    emit(cfg, dump(j), out);
  }
  const auto failures = std::count_if(result.rows.begin(), result.rows.end(), [](const auto& r) { return !r.pass; });
  err << "sweep: " << result.table.domains << " domains, " << result.rows.size() << " rows, " << failures
      << " failures (empirical constants over this family only)\n";
  for (const auto& c : result.table.constants) {
    err << "  " << c.name << " = " << num(c.value);
    if (c.proven > 0.0) err << " (proven " << num(c.proven) << ")";
    err << '\n';
  }
  return failures == 0 ? ok : inequality_failed;
}

int cmd_fem(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Domain d = resolve_domain(cfg);
  if (dimension(d) != 2) throw Error("fem requires a 2D domain");
  const ConvexPolytope poly = std::holds_alternative<Orthotope>(d) ? std::get<Orthotope>(d).to_polytope()
                                                                   : std::get<ConvexPolytope>(d);
  const double diam = domain_diameter(d);
  const double h = cfg.h > 0.0 ? cfg.h : 0.1 * std::min(diam, 2.0 * domain_volume(d) / diam);
  const TriMesh mesh = triangulate(poly, h);
  const OperatorPair ops = assemble(mesh);
  EigenSolveInfo info;
  const Spectrum s = smallest_neumann_eigs(ops, cfg.K, 1e-8, &info);
  if (!cfg.matrices.empty()) {
    std::ostringstream k, m;
    write_triplets(k, ops.stiffness);
    write_triplets(m, ops.mass);
    write_atomic(cfg.matrices + ".stiffness.txt", k.str());
    write_atomic(cfg.matrices + ".mass.txt", m.str());
  }
  if (format_of(cfg) == "csv") {
    emit(cfg, spectrum_csv(s), out);
  } else {
    Json j;
    j["h"] = h;
    j["dofs"] = ops.dofs;
    j["triangles"] = mesh.triangles.size();
    j["min_angle_degrees"] = mesh.min_angle_degrees();
    j["max_residual"] = info.max_residual;
    j["spectrum"] = to_json(s);
    j["mesh"] = to_json(mesh);
    emit(cfg, dump(j), out);
  }
  err << "fem: " << ops.dofs << " dofs, min angle " << num(mesh.min_angle_degrees()) << " deg, mu_1 "
      << num(s.values.size() > 1 ? s.values[1] : 0.0) << '\n';
  return ok;
}

int cmd_constants(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ConstantLedger ledger = constants(cfg.n);
  if (format_of(cfg) == "csv") {
    std::string csv = "name,value\n";
    csv += "n," + std::to_string(ledger.n) + '\n';
    csv += "C," + num(ledger.C) + '\n';
    csv += "c," + num(ledger.c) + '\n';
    csv += "margin," + num(ledger.margin) + '\n';
    csv += "monotonicity," + num(ledger.monotonicity) + '\n';
    csv += "aggregate_upper," + num(ledger.aggregate_upper) + '\n';
    csv += "aggregate_lower," + num(ledger.aggregate_lower) + '\n';
    emit(cfg, csv, out);
  } else {
    emit(cfg, dump(to_json(ledger)), out);
  }
  err << "constants: n=" << ledger.n << " C=" << num(ledger.C) << " c=" << num(ledger.c) << '\n';
  return ok;
}

template <typename T>
T typed(const Json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    throw Error("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

void apply_config(const Json& j, RunConfig& cfg, const std::vector<std::string>& explicit_keys) {
  if (!j.is_object()) throw Error("config must be a JSON object");
  const std::set<std::string> given(explicit_keys.begin(), explicit_keys.end());
  const auto take = [&](const std::string& key) { return j.contains(key) && !given.count(key); };
  static const std::set<std::string> known = {"command", "box",  "polygon", "inner",  "k",     "l",
                                              "K",       "h",    "tol",     "seed",   "jobs",  "out",
                                              "format",  "lemma", "budget", "theorem", "family", "count", "n",
                                              "max_aspect", "inequality", "matrices"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw Error("unknown config key '" + it.key() + "'");
  }
  if (take("command")) cfg.command = typed<std::string>(j["command"], "command");
  if (take("box")) cfg.box = typed<std::vector<double>>(j["box"], "box");
  for (const char* key : {"polygon", "inner"}) {
    if (!take(key)) continue;
    const Json& v = j[key];
    Json domain = v.is_string() ? load_domain_file(v.get<std::string>()) : v;
    if (!domain.is_object()) throw Error(std::string("config key '") + key + "' must be a path or an object");
    (std::string(key) == "polygon" ? cfg.polygon : cfg.inner) = std::move(domain);
  }
  if (take("k")) cfg.k = typed<int>(j["k"], "k");
  if (take("l")) cfg.l = typed<int>(j["l"], "l");
  if (take("K")) cfg.K = typed<int>(j["K"], "K");
  if (take("h")) cfg.h = typed<double>(j["h"], "h");
  if (take("tol")) cfg.tol = typed<double>(j["tol"], "tol");
  if (take("seed")) cfg.seed = typed<std::uint64_t>(j["seed"], "seed");
  if (take("jobs")) cfg.jobs = typed<int>(j["jobs"], "jobs");
  if (take("out")) cfg.out = typed<std::string>(j["out"], "out");
  if (take("format")) cfg.format = typed<std::string>(j["format"], "format");
  if (take("lemma")) cfg.lemma = typed<int>(j["lemma"], "lemma");
  if (take("budget")) cfg.budget = typed<int>(j["budget"], "budget");
  if (take("theorem")) cfg.theorem = typed<std::string>(j["theorem"], "theorem");
  if (take("family")) cfg.family = typed<std::string>(j["family"], "family");
  if (take("count")) cfg.count = typed<int>(j["count"], "count");
  if (take("n")) cfg.n = typed<int>(j["n"], "n");
  if (take("max_aspect")) cfg.max_aspect = typed<double>(j["max_aspect"], "max_aspect");
  if (take("inequality")) cfg.inequality = typed<std::string>(j["inequality"], "inequality");
  if (take("matrices")) cfg.matrices = typed<std::string>(j["matrices"], "matrices");
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto log = logger();
  try {
    if (!kCommands.count(cfg.command)) throw Error("unknown command '" + cfg.command + "'");
    if (!cfg.format.empty() && cfg.format != "json" && cfg.format != "csv") throw Error("--format must be json or csv");
    if (cfg.jobs < 1) throw Error("--jobs must be >= 1");
    log->debug("running {}", cfg.command);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, out, err);
    if (cfg.command == "partition") return cmd_partition(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "sweep") return cmd_sweep(cfg, out, err);
    if (cfg.command == "fem") return cmd_fem(cfg, out, err);
    return cmd_constants(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string config_path;
  std::string polygon_path;
  std::string inner_path;

  CLI::App app{"Neumann spectra, convex partitions and eigenvalue inequality checks", "spl"};
  app.require_subcommand(0, 1);
  // "-h" stays free: --h is the mesh size.
  app.set_help_flag("--help", "print this help message and exit");
  app.add_option("--config", config_path, "JSON run config (flags override its keys)");

  struct Flag {
    std::string key;
    CLI::Option* option;
  };
  std::vector<Flag> flags;
  for (const auto& name : kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->set_help_flag("--help", "print this help message and exit");
    sub->add_option("--config", config_path, "JSON run config (flags override its keys)");
    auto add = [&](const std::string& key, auto& field, const std::string& help) {
      flags.push_back({key, sub->add_option("--" + key, field, help)});
      return flags.back().option;
    };
    add("box", cfg.box, "box half-lengths a1,a2,...")->delimiter(',');
    add("polygon", polygon_path, "domain JSON file");
    add("inner", inner_path, "inner domain JSON file (monotonicity check)");
    add("k", cfg.k, "eigenvalue index k (sweep: k_max)");
    add("l", cfg.l, "eigenvalue index l (sweep: l_max)");
    add("K", cfg.K, "number of eigenvalues above mu_0");
    add("h", cfg.h, "starting mesh size (0 = automatic)");
    add("tol", cfg.tol, "mesh-refinement agreement tolerance");
    add("seed", cfg.seed, "random seed");
    add("jobs", cfg.jobs, "worker threads for sweeps");
    add("out", cfg.out, "output path (default stdout)");
    add("format", cfg.format, "json or csv");
    add("lemma", cfg.lemma, "partition lemma: 1 or 2");
    add("budget", cfg.budget, "partition: cell budget to verify (0 = the lemma's)");
    add("theorem", cfg.theorem, "1.1, 2.2, 2.3, 2.4, 2.5 or chain");
    add("family", cfg.family, "sweep family: boxes, segments, squares, polygons");
    add("count", cfg.count, "sweep family size");
    add("n", cfg.n, "dimension (constants, box families)");
    add("max_aspect", cfg.max_aspect, "largest aspect ratio in sweep families");
    add("inequality", cfg.inequality, "sweep report: thm1.1-upper, thm1.1-lower, kroger, payne-weinberger");
    add("matrices", cfg.matrices, "fem: write <prefix>.stiffness.txt and <prefix>.mass.txt");
  }

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }

  try {
    std::vector<std::string> explicit_keys;
    for (const auto& f : flags) {
      if (f.option->count() > 0) explicit_keys.push_back(f.key);
    }
    if (!app.get_subcommands().empty()) {
      cfg.command = app.get_subcommands().front()->get_name();
      explicit_keys.push_back("command");
    }
    if (!polygon_path.empty()) cfg.polygon = load_domain_file(polygon_path);
    if (!inner_path.empty()) cfg.inner = load_domain_file(inner_path);
    if (!config_path.empty()) apply_config(parse_json(read_file(config_path), config_path), cfg, explicit_keys);
    if (cfg.command.empty()) throw Error("no command given; expected one of spectrum, partition, verify, sweep, fem, constants");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
  return execute(cfg, out, err);
}

}  // namespace spl::cli
