#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spl/json_io.hpp"

namespace spl::cli {

enum Exit : int { ok = 0, usage_error = 1, inequality_failed = 2 };

struct RunConfig {
  std::string command;
  std::vector<double> box;
  std::optional<Json> polygon;  // inline domain, or loaded from a file
  std::optional<Json> inner;    // inner domain for monotonicity checks
  int k = 1;
  int l = 1;
  int K = 10;
  double h = 0.0;  // 0 picks a mesh size from the domain width
  double tol = 5e-3;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out;
  std::string format;  // json | csv; empty picks the command default
  int lemma = 1;
  int budget = 0;  // partition: cell budget to verify against; 0 uses the lemma's
  std::string theorem = "1.1";
  std::string family = "boxes";
  int count = 10;
  int n = 2;
  double max_aspect = 100.0;
  std::string inequality = "thm1.1-upper";
  std::string matrices;  // fem: prefix for triplet exports
};

// Merges a JSON config into cfg; unknown keys and wrong types are errors.
void apply_config(const Json& j, RunConfig& cfg, const std::vector<std::string>& explicit_keys);

// Executes a validated config. Artifacts go to cfg.out (atomically) or to
// `out`; the human-readable summary goes to `err`.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Full command line, argv[0] excluded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spl::cli
