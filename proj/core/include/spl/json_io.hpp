#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spl/geometry.hpp"
#include "spl/john.hpp"
#include "spl/mesh_fem.hpp"
#include "spl/partition.hpp"
#include "spl/spectra.hpp"
#include "spl/verify.hpp"

namespace spl {

using Json = nlohmann::ordered_json;

// Serialization with fixed field order and floats at 17 significant digits;
// non-finite numbers become null.
std::string dump(const Json& j, int indent = 2);

// Parse errors are reported as "<source>:<line>:<column>: <message>".
Json parse_json(const std::string& text, const std::string& source = "<input>");

Json to_json(const Orthotope& box);
Json to_json(const ConvexPolytope& body);
Json to_json(const Spectrum& spec);
Json to_json(const TraceStep& step);
Json to_json(const PartitionResult& result);
Json to_json(const PartitionReport& report);
Json to_json(const TriMesh& mesh);
Json to_json(const InequalityReport& report);
Json to_json(const ChainReport& chain);
Json to_json(const JohnBox& john);
Json to_json(const ConstantLedger& ledger);
Json to_json(const EmpiricalTable& table);

Orthotope orthotope_from_json(const Json& j);
// {"dim", "halfspaces", "vertices"?}, or a bare {"vertices"} point cloud in 2D.
ConvexPolytope polytope_from_json(const Json& j);
Domain domain_from_json(const Json& j);
Spectrum spectrum_from_json(const Json& j);
TraceStep trace_step_from_json(const Json& j);
PartitionResult partition_from_json(const Json& j);
TriMesh mesh_from_json(const Json& j);
InequalityReport report_from_json(const Json& j);
ConstantLedger ledger_from_json(const Json& j);

// name,n,k,l,lhs,rhs,slack,pass
std::string reports_csv(const std::vector<InequalityReport>& rows);
// k_over_l,slack
std::string plot_csv(const std::vector<InequalityReport>& rows);

std::string read_file(const std::string& path);
// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace spl
