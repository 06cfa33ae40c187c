#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rank3/expected.hpp"
#include "rank3/geometry.hpp"

namespace rank3 {

struct AnalyzeOptions {
  std::uint64_t seed = 0;
  std::size_t max_p_size = 3000;
  bool skip_order = false;      // skip the Schreier-Sims certification
  bool properties = true;       // run the property checks
  std::size_t length_bound = 8;
  std::size_t node_budget = 5000;
};

struct FactorEntry {
  std::string label;
  std::size_t dim = 0;
  std::size_t mult = 0;
  bool abs_irred = false;
};

struct LayerEntry {
  std::string label;
  std::size_t dim = 0;
};

struct GroupSummary {
  std::optional<std::string> order;  // absent with skip_order
  std::string formula;
  std::optional<std::string> order_on_points;
  int rank = 0;
  std::vector<std::size_t> suborbits;
};

struct LatticeSummary {
  bool computed = false;
  std::vector<std::size_t> dims;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::string> edge_labels;
};

struct PropertyCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct Verdict {
  bool match = false;
  std::vector<std::string> flags;
  std::vector<std::string> diffs;
};

struct Report {
  SpaceSpec spec;
  long long ell = 0;
  std::uint64_t seed = 0;
  std::size_t nonsingular = 0, singular = 0;
  Rank3Params params;
  Roots roots;
  GroupSummary group;
  std::vector<FactorEntry> factors;
  std::vector<std::vector<LayerEntry>> socle;
  LatticeSummary lattice;
  Verdict verdict;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::vector<PropertyCheck> properties;
  // Consistency problems found while computing (parameter or order
  // mismatches, failed properties). They are merged into the verdict.
  std::vector<std::string> pipeline_diffs;
  std::vector<std::string> pipeline_flags;
};

// Throws OutOfScale when |P| exceeds opts.max_p_size.
void check_scale(const SpaceSpec& spec, std::size_t max_p_size);

// Full pipeline: points, parameters, group, module structure, labels,
// properties and the verdict against the table row.
Report analyze(const SpaceSpec& spec, long long ell, const AnalyzeOptions& opts = {});

// Compares the structural part of a report with a table row. Only uses data
// that is serialized, so a stored report verifies the same way.
Verdict verify(const Report& r, const ExpectedStructure& e);

nlohmann::ordered_json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
std::string to_text(const Report& r);
nlohmann::ordered_json to_json(const ExpectedStructure& e);

struct SuiteInstance {
  SpaceSpec spec;
  long long ell = 0;
};

// Default instance list; `extended` appends U(7) at l = 3.
std::vector<SuiteInstance> suite_instances(bool extended);

// Table rows that are never run, with the reason.
struct SkippedRow {
  int table = 0, row = 0;
  std::string condition;
  std::string status;  // OUT_OF_SCALE
  std::string reason;
};
std::vector<SkippedRow> skipped_rows();

}  // namespace rank3
