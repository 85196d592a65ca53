#pragma once

#include <iosfwd>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "hysst/planner.hpp"

namespace hysst {

/// Raised on unknown systems, malformed configuration documents or invalid
/// parameter values; the CLI maps it to exit code 64.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One planning run, fully specified: the system instance, planner and
/// integrator parameters, and which artifacts to emit.
struct RunConfig {
  std::string system = "bouncing_ball";
  nlohmann::json system_params = nlohmann::json::object();
  PlannerConfig planner;
  IntegratorConfig integrator;
  double max_flow_duration = 2.0;  // T_m
  double inflate_delta = 0.0;      // plan on the delta_f-inflation when > 0
  std::string out_dir = "out";
  bool emit_tree = true;
  bool emit_plan = true;
  bool emit_stats = true;
  bool emit_plotdata = false;
};

/// Defaults tuned per bundled system ("bouncing_ball" or "multicopter").
RunConfig default_config(const std::string& system);

/// Parses a config document (kebab-case keys mirroring the CLI flags) on top
/// of the per-system defaults. Unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& doc);

struct BuiltProblem {
  MotionPlanProblem problem;
  InputLibrary library;
};

/// Instantiates the named system with parameter overrides applied, including
/// the optional delta_f-inflation.
BuiltProblem build_problem(const RunConfig& config);

/// System-specific default for the jump-regime selection constraint X_d (a
/// band around D'). run_plan and run_benchmark install it when the planner
/// config has none.
StatePredicate default_x_d(const RunConfig& config);

enum class RunStatus : int {
  plan_found = 0,
  no_plan = 2,
  config_error = 64,
};

/// Runs the planner once and writes the requested artifacts (plan.json,
/// tree.json, stats.csv, plot data) into out_dir.
RunStatus run_plan(const RunConfig& config);

struct TrialRow {
  std::uint64_t seed = 0;
  PlannerMode mode = PlannerMode::hysst;
  bool found = false;
  double plan_cost = 0.0;  // meaningful only when found
  std::size_t n_active = 0;
  std::size_t n_inactive = 0;
  std::size_t n_total = 0;
  double wall_ms = 0.0;
};

struct ModeAggregate {
  int n_trials = 0;
  double success_rate = 0.0;
  double mean_cost = 0.0;    // over successful trials
  double median_cost = 0.0;  // over successful trials
  double mean_active = 0.0;
  double mean_inactive = 0.0;
  double mean_total = 0.0;
};

struct BenchmarkReport {
  std::vector<TrialRow> rows;
  std::map<std::string, ModeAggregate> aggregates;
};

/// Seeded trials per mode, seeds = base seed + trial index. Trials own their
/// planner instances and may run on `jobs` threads; the report is identical
/// to sequential execution.
BenchmarkReport run_benchmark(const RunConfig& config, int n_trials,
                              const std::vector<PlannerMode>& modes, int jobs = 1);

/// Recomputes the per-mode aggregates from the rows.
std::map<std::string, ModeAggregate> aggregate_rows(const std::vector<TrialRow>& rows);

const char* mode_name(PlannerMode mode);
PlannerMode mode_from_name(const std::string& name);

// Artifact writers. CSV columns are fixed: stats (iter, n_active, n_inactive,
// n_witnesses, best_cost), report (seed, mode, found, plan_cost, n_active,
// n_inactive, n_total, wall_ms), plan trace (t, j, x...), tree segments
// (x, y, parent_x, parent_y).
nlohmann::json tree_to_json(const SearchTree& tree, const WitnessSet& witnesses);
void write_stats_csv(std::ostream& os, const std::vector<IterationStats>& stats);
void write_report_csv(std::ostream& os, const BenchmarkReport& report);
nlohmann::json report_summary_json(const BenchmarkReport& report);
void write_plan_trace_csv(std::ostream& os, const SolutionPair& psi);
void write_tree_segments_csv(std::ostream& os, const nlohmann::json& tree_doc);

/// Reads a wall layout file: [{x_min, x_max, y_min, y_max}, ...].
nlohmann::json load_json_file(const std::string& path);

}  // namespace hysst
