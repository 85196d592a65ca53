// hysst: sampling-based optimal motion planning for hybrid dynamical systems.
//
// Subcommands:
//   plan       run the planner once and write plan/tree/stats artifacts
//   bench      run seeded trials per mode and write report.csv + summary.json
//   plot-data  turn a plan or tree artifact into plot-ready CSV files
//   validate   re-check a plan file against the system dynamics
//
// Exit codes: 0 success / plan found, 2 no plan within budget, 64 config error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hysst/harness.hpp"
#include "hysst/serialization.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string system;
  std::string mode;
  std::uint64_t seed = 0;
  int iterations = -1;
  double p_n = -1.0;
  double delta_bn = -1.0;
  double delta_s = -1.0;
  double eps_final = -1.0;
  int n_init_roots = -1;
  double p_flow_at_intersection = -1.0;
  double step_size = -1.0;
  double boundary_tol = -1.0;
  int max_steps = -1;
  double max_flow_duration = -1.0;
  double inflate = -1.0;
  std::string out_dir;
  std::string walls_file;

  bool seed_set = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file (flags override it)");
  cmd->add_option("--system", f.system, "bouncing_ball or multicopter");
  cmd->add_option("--mode", f.mode, "hysst or hyrrt_baseline");
  cmd->add_option("--seed", f.seed, "RNG seed")->each([&f](const std::string&) {
    f.seed_set = true;
  });
  cmd->add_option("--iterations", f.iterations, "iteration budget K");
  cmd->add_option("--p-n", f.p_n, "flow-regime probability in (0, 1)");
  cmd->add_option("--delta-bn", f.delta_bn, "best-near selection radius");
  cmd->add_option("--delta-s", f.delta_s, "witness radius");
  cmd->add_option("--eps-final", f.eps_final, "final-set tolerance");
  cmd->add_option("--n-init-roots", f.n_init_roots, "roots sampled from X_0");
  cmd->add_option("--p-flow-at-intersection", f.p_flow_at_intersection,
                  "flow probability on closure(C') n D'");
  cmd->add_option("--step-size", f.step_size, "integrator step h");
  cmd->add_option("--boundary-tol", f.boundary_tol, "flow-exit bracketing tolerance");
  cmd->add_option("--max-steps", f.max_steps, "integrator step budget per arc");
  cmd->add_option("--max-flow-duration", f.max_flow_duration,
                  "largest constant-input flow duration T_m");
  cmd->add_option("--inflate", f.inflate, "plan on the delta_f-inflated system");
  cmd->add_option("--out", f.out_dir, "output directory");
  cmd->add_option("--walls-file", f.walls_file,
                  "wall layout JSON: [{x_min, x_max, y_min, y_max}, ...]");
}

hysst::RunConfig resolve_config(const CommonFlags& f) {
  nlohmann::json doc = nlohmann::json::object();
  if (!f.config_path.empty()) doc = hysst::load_json_file(f.config_path);
  if (!f.system.empty()) doc["system"] = f.system;
  hysst::RunConfig cfg = hysst::config_from_json(doc);

  if (!f.mode.empty()) cfg.planner.mode = hysst::mode_from_name(f.mode);
  if (f.seed_set) cfg.planner.seed = f.seed;
  if (f.iterations >= 0) cfg.planner.iterations = f.iterations;
  if (f.p_n >= 0.0) cfg.planner.p_n = f.p_n;
  if (f.delta_bn >= 0.0) cfg.planner.delta_bn = f.delta_bn;
  if (f.delta_s >= 0.0) cfg.planner.delta_s = f.delta_s;
  if (f.eps_final >= 0.0) cfg.planner.eps_final = f.eps_final;
  if (f.n_init_roots >= 0) cfg.planner.n_init_roots = f.n_init_roots;
  if (f.p_flow_at_intersection >= 0.0)
    cfg.planner.p_flow_at_intersection = f.p_flow_at_intersection;
  if (f.step_size >= 0.0) cfg.integrator.step_size = f.step_size;
  if (f.boundary_tol >= 0.0) cfg.integrator.boundary_tol = f.boundary_tol;
  if (f.max_steps >= 0) cfg.integrator.max_steps = f.max_steps;
  if (f.max_flow_duration >= 0.0) cfg.max_flow_duration = f.max_flow_duration;
  if (f.inflate >= 0.0) cfg.inflate_delta = f.inflate;
  if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
  if (!f.walls_file.empty()) cfg.system_params["walls-file"] = f.walls_file;

  for (const auto& warning : cfg.planner.validate())
    std::cerr << "warning: " << warning << '\n';
  return cfg;
}

int cmd_plan(const CommonFlags& flags) {
  const hysst::RunConfig cfg = resolve_config(flags);
  const hysst::RunStatus status = hysst::run_plan(cfg);
  if (status == hysst::RunStatus::plan_found)
    std::cout << "plan found, artifacts in " << cfg.out_dir << '\n';
  else
    std::cout << "no plan within budget, artifacts in " << cfg.out_dir << '\n';
  return static_cast<int>(status);
}

int cmd_bench(const CommonFlags& flags, int trials, const std::string& modes_csv,
              int jobs) {
  const hysst::RunConfig cfg = resolve_config(flags);

  std::vector<hysst::PlannerMode> modes;
  std::stringstream ss(modes_csv);
  for (std::string token; std::getline(ss, token, ',');)
    modes.push_back(hysst::mode_from_name(token));
  if (modes.empty()) throw hysst::ConfigError("bench: no modes given");

  const hysst::BenchmarkReport report = hysst::run_benchmark(cfg, trials, modes, jobs);

  std::filesystem::create_directories(cfg.out_dir);
  {
    std::ofstream f(std::filesystem::path(cfg.out_dir) / "report.csv");
    hysst::write_report_csv(f, report);
  }
  {
    std::ofstream f(std::filesystem::path(cfg.out_dir) / "summary.json");
    f << hysst::report_summary_json(report).dump(2) << '\n';
  }
  std::cout << hysst::report_summary_json(report).dump(2) << '\n';
  return 0;
}

int cmd_plot_data(const std::string& plan_path, const std::string& tree_path,
                  const std::string& out_dir) {
  if (plan_path.empty() && tree_path.empty())
    throw hysst::ConfigError("plot-data: need --plan and/or --tree");
  std::filesystem::create_directories(out_dir);
  if (!plan_path.empty()) {
    const hysst::SolutionPair psi =
        hysst::solution_pair_from_json(hysst::load_json_file(plan_path));
    std::ofstream f(std::filesystem::path(out_dir) / "plan_trace.csv");
    hysst::write_plan_trace_csv(f, psi);
  }
  if (!tree_path.empty()) {
    std::ofstream f(std::filesystem::path(out_dir) / "tree_segments.csv");
    hysst::write_tree_segments_csv(f, hysst::load_json_file(tree_path));
  }
  return 0;
}

int cmd_validate(const CommonFlags& flags, const std::string& plan_path, double tol) {
  const hysst::RunConfig cfg = resolve_config(flags);
  const hysst::BuiltProblem built = hysst::build_problem(cfg);
  const hysst::SolutionPair psi =
      hysst::solution_pair_from_json(hysst::load_json_file(plan_path));
  const hysst::ValidationReport report =
      hysst::validate_solution(built.problem.system, psi, tol);
  if (report.ok) {
    std::cout << "valid solution pair (" << psi.state_arc.sample_count()
              << " samples, " << psi.domain().max_jump() << " jumps)\n";
    return 0;
  }
  std::cout << "invalid solution pair:\n";
  for (const auto& v : report.violations) std::cout << "  - " << v << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HySST: stable sparse RRT motion planning for hybrid systems"};
  app.require_subcommand(1);

  CommonFlags plan_flags, bench_flags, validate_flags;

  CLI::App* plan = app.add_subcommand("plan", "run the planner once");
  add_common_flags(plan, plan_flags);

  CLI::App* bench = app.add_subcommand("bench", "run seeded benchmark trials");
  add_common_flags(bench, bench_flags);
  int trials = 20;
  std::string modes_csv = "hysst,hyrrt_baseline";
  int jobs = 1;
  bench->add_option("--trials", trials, "trials per mode");
  bench->add_option("--modes", modes_csv, "comma-separated planner modes");
  bench->add_option("--jobs", jobs, "worker threads (trials are independent)");

  CLI::App* plot = app.add_subcommand("plot-data", "emit plot-ready CSV files");
  std::string plan_path, tree_path, plot_out = "out";
  plot->add_option("--plan", plan_path, "plan.json to trace");
  plot->add_option("--tree", tree_path, "tree.json to project");
  plot->add_option("--out", plot_out, "output directory");

  CLI::App* validate = app.add_subcommand("validate", "re-check a plan file");
  add_common_flags(validate, validate_flags);
  std::string validate_plan;
  double validate_tol = 1e-3;
  validate->add_option("--plan", validate_plan, "plan.json to validate")->required();
  validate->add_option("--tol", validate_tol, "dynamics tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) return cmd_plan(plan_flags);
    if (bench->parsed()) return cmd_bench(bench_flags, trials, modes_csv, jobs);
    if (plot->parsed()) return cmd_plot_data(plan_path, tree_path, plot_out);
    if (validate->parsed()) return cmd_validate(validate_flags, validate_plan, validate_tol);
  } catch (const hysst::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
