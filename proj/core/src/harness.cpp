#include "hysst/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "hysst/serialization.hpp"
#include "hysst/systems/bouncing_ball.hpp"
#include "hysst/systems/multicopter.hpp"

namespace hysst {

namespace {

double get_or(const nlohmann::json& obj, const char* key, double fallback) {
  return obj.contains(key) ? obj.at(key).get<double>() : fallback;
}

/// Shortest float representation that parses back to the same double.
std::string format_double(double v) {
  nlohmann::json j = v;
  return j.dump();
}

}  // namespace

const char* mode_name(PlannerMode mode) {
  return mode == PlannerMode::hysst ? "hysst" : "hyrrt_baseline";
}

PlannerMode mode_from_name(const std::string& name) {
  if (name == "hysst") return PlannerMode::hysst;
  if (name == "hyrrt_baseline") return PlannerMode::hyrrt_baseline;
  throw ConfigError("unknown planner mode: " + name);
}

RunConfig default_config(const std::string& system) {
  RunConfig cfg;
  cfg.system = system;
  if (system == "bouncing_ball") {
    cfg.planner.iterations = 2000;
    cfg.planner.p_n = 0.5;
    cfg.planner.delta_bn = 1.5;
    cfg.planner.delta_s = 0.6;
    cfg.planner.eps_final = 0.5;
    cfg.integrator.step_size = 1e-2;
    cfg.max_flow_duration = 2.0;
  } else if (system == "multicopter") {
    cfg.planner.iterations = 20000;
    cfg.planner.p_n = 0.9;
    cfg.planner.delta_bn = 1.5;
    cfg.planner.delta_s = 0.4;
    cfg.planner.eps_final = 0.3;
    cfg.integrator.step_size = 1e-2;
    cfg.max_flow_duration = 1.0;
  } else {
    throw ConfigError("unknown system: " + system);
  }
  return cfg;
}

RunConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config document must be a JSON object");

  std::string system = "bouncing_ball";
  if (doc.contains("system")) system = doc.at("system").get<std::string>();
  RunConfig cfg = default_config(system);

  static const std::vector<std::string> known = {
      "system",        "system-params", "mode",
      "seed",          "iterations",    "p-n",
      "delta-bn",      "delta-s",       "eps-final",
      "n-init-roots",  "p-flow-at-intersection",
      "step-size",     "boundary-tol",  "max-steps",
      "max-flow-duration", "inflate",   "out-dir",
      "emit"};
  for (const auto& [key, _] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown config key: " + key);
  }

  try {
    if (doc.contains("system-params")) cfg.system_params = doc.at("system-params");
    if (doc.contains("mode"))
      cfg.planner.mode = mode_from_name(doc.at("mode").get<std::string>());
    if (doc.contains("seed")) cfg.planner.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("iterations"))
      cfg.planner.iterations = doc.at("iterations").get<int>();
    if (doc.contains("p-n")) cfg.planner.p_n = doc.at("p-n").get<double>();
    if (doc.contains("delta-bn")) cfg.planner.delta_bn = doc.at("delta-bn").get<double>();
    if (doc.contains("delta-s")) cfg.planner.delta_s = doc.at("delta-s").get<double>();
    if (doc.contains("eps-final"))
      cfg.planner.eps_final = doc.at("eps-final").get<double>();
    if (doc.contains("n-init-roots"))
      cfg.planner.n_init_roots = doc.at("n-init-roots").get<int>();
    if (doc.contains("p-flow-at-intersection"))
      cfg.planner.p_flow_at_intersection =
          doc.at("p-flow-at-intersection").get<double>();
    if (doc.contains("step-size"))
      cfg.integrator.step_size = doc.at("step-size").get<double>();
    if (doc.contains("boundary-tol"))
      cfg.integrator.boundary_tol = doc.at("boundary-tol").get<double>();
    if (doc.contains("max-steps")) cfg.integrator.max_steps = doc.at("max-steps").get<int>();
    if (doc.contains("max-flow-duration"))
      cfg.max_flow_duration = doc.at("max-flow-duration").get<double>();
    if (doc.contains("inflate")) cfg.inflate_delta = doc.at("inflate").get<double>();
    if (doc.contains("out-dir")) cfg.out_dir = doc.at("out-dir").get<std::string>();
    if (doc.contains("emit")) {
      const auto& emit = doc.at("emit");
      cfg.emit_tree = emit.value("tree", cfg.emit_tree);
      cfg.emit_plan = emit.value("plan", cfg.emit_plan);
      cfg.emit_stats = emit.value("stats", cfg.emit_stats);
      cfg.emit_plotdata = emit.value("plotdata", cfg.emit_plotdata);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config value: ") + e.what());
  }
  return cfg;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
  return doc;
}

namespace {

std::vector<systems::WallRect> walls_from_json(const nlohmann::json& arr) {
  std::vector<systems::WallRect> walls;
  for (const auto& w : arr) {
    walls.push_back({w.at("x_min").get<double>(), w.at("x_max").get<double>(),
                     w.at("y_min").get<double>(), w.at("y_max").get<double>()});
  }
  return walls;
}

BuiltProblem build_bouncing_ball(const RunConfig& cfg) {
  const auto& sp = cfg.system_params;
  systems::BouncingBallParams params;
  params.gamma = get_or(sp, "gamma", params.gamma);
  params.lambda = get_or(sp, "lambda", params.lambda);
  params.u_max = get_or(sp, "u-max", params.u_max);
  params.x1_max = get_or(sp, "x1-max", params.x1_max);
  params.v_max = get_or(sp, "v-max", params.v_max);
  params.contact_tol = get_or(sp, "contact-tol", params.contact_tol);
  return {systems::bouncing_ball_problem(params),
          systems::bouncing_ball_input_library(params, cfg.max_flow_duration)};
}

BuiltProblem build_multicopter(const RunConfig& cfg) {
  const auto& sp = cfg.system_params;
  systems::MulticopterParams params;
  params.e = get_or(sp, "e", params.e);
  params.kappa = get_or(sp, "kappa", params.kappa);
  params.arena_x = get_or(sp, "arena-x", params.arena_x);
  params.arena_y = get_or(sp, "arena-y", params.arena_y);
  params.v_max = get_or(sp, "v-max", params.v_max);
  params.a_max = get_or(sp, "a-max", params.a_max);
  params.u_max = get_or(sp, "u-max", params.u_max);
  params.contact_tol = get_or(sp, "contact-tol", params.contact_tol);
  if (sp.contains("walls")) params.walls = walls_from_json(sp.at("walls"));
  if (sp.contains("walls-file"))
    params.walls = walls_from_json(load_json_file(sp.at("walls-file").get<std::string>()));
  return {systems::multicopter_problem(params),
          systems::multicopter_input_library(params, cfg.max_flow_duration)};
}

}  // namespace

BuiltProblem build_problem(const RunConfig& cfg) {
  BuiltProblem built;
  try {
    if (cfg.system == "bouncing_ball")
      built = build_bouncing_ball(cfg);
    else if (cfg.system == "multicopter")
      built = build_multicopter(cfg);
    else
      throw ConfigError("unknown system: " + cfg.system);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed system parameters: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid system parameters: ") + e.what());
  }
  if (cfg.inflate_delta > 0.0)
    built.problem.system = inflate(built.problem.system, cfg.inflate_delta);
  else if (cfg.inflate_delta < 0.0)
    throw ConfigError("inflate must be nonnegative");
  return built;
}

StatePredicate default_x_d(const RunConfig& cfg) {
  // Jump-regime selection constraint: a band around D' so that jump-regime
  // iterations pick vertices that can actually jump soon. Any superset of D'
  // is admissible.
  const double band = cfg.planner.delta_bn;
  if (cfg.system == "bouncing_ball")
    return [band](const Eigen::VectorXd& x) { return x[0] <= band; };
  if (cfg.system == "multicopter") {
    const auto& sp = cfg.system_params;
    systems::MulticopterParams params;
    auto walls = params.walls;
    if (sp.contains("walls")) walls = walls_from_json(sp.at("walls"));
    if (sp.contains("walls-file"))
      walls = walls_from_json(load_json_file(sp.at("walls-file").get<std::string>()));
    return [band, walls](const Eigen::VectorXd& x) {
      return std::abs(systems::wall_signed_distance(walls, {x[0], x[1]})) <= band;
    };
  }
  return {};
}

nlohmann::json tree_to_json(const SearchTree& tree, const WitnessSet& witnesses) {
  nlohmann::json vertices = nlohmann::json::array();
  nlohmann::json edges = nlohmann::json::array();
  nlohmann::json psis = nlohmann::json::array();
  tree.for_each_alive([&](const Vertex& v) {
    nlohmann::json state = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.state.size(); ++i) state.push_back(v.state[i]);
    vertices.push_back({{"id", v.id},
                        {"state", std::move(state)},
                        {"cost", v.cost},
                        {"parent", v.parent ? nlohmann::json(*v.parent)
                                            : nlohmann::json(nullptr)},
                        {"active", v.active}});
    if (const Edge* e = tree.parent_edge(v.id)) {
      edges.push_back({{"from", e->from}, {"to", e->to}, {"psi", psis.size()}});
      psis.push_back(to_json(e->psi));
    }
  });
  nlohmann::json wits = nlohmann::json::array();
  for (const auto& w : witnesses.items()) {
    nlohmann::json point = nlohmann::json::array();
    for (Eigen::Index i = 0; i < w.point.size(); ++i) point.push_back(w.point[i]);
    wits.push_back({{"point", std::move(point)},
                    {"rep", w.rep ? nlohmann::json(*w.rep) : nlohmann::json(nullptr)}});
  }
  return {{"vertices", std::move(vertices)},
          {"edges", std::move(edges)},
          {"psis", std::move(psis)},
          {"witnesses", std::move(wits)}};
}

void write_stats_csv(std::ostream& os, const std::vector<IterationStats>& stats) {
  os << "iter,n_active,n_inactive,n_witnesses,best_cost\n";
  for (const auto& s : stats) {
    os << s.iter << ',' << s.n_active << ',' << s.n_inactive << ',' << s.n_witnesses
       << ',';
    if (s.best_cost) os << format_double(*s.best_cost);
    os << '\n';
  }
}

RunStatus run_plan(const RunConfig& cfg) {
  try {
    cfg.planner.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const BuiltProblem built = build_problem(cfg);

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory: " + cfg.out_dir);
  const std::filesystem::path out(cfg.out_dir);

  PlannerConfig pc = cfg.planner;
  if (!pc.x_d) pc.x_d = default_x_d(cfg);
  const PlanResult result = hysst_plan(built.problem, built.library, pc, cfg.integrator);

  if (cfg.emit_tree) {
    std::ofstream f(out / "tree.json");
    f << tree_to_json(result.tree, result.witnesses).dump(2) << '\n';
  }
  if (cfg.emit_stats) {
    std::ofstream f(out / "stats.csv");
    write_stats_csv(f, result.stats);
  }
  if (result.best_plan && cfg.emit_plan) {
    std::ofstream f(out / "plan.json");
    f << to_json(result.best_plan->psi).dump(2) << '\n';
  }
  if (cfg.emit_plotdata) {
    if (result.best_plan) {
      std::ofstream f(out / "plan_trace.csv");
      write_plan_trace_csv(f, result.best_plan->psi);
    }
    std::ofstream f(out / "tree_segments.csv");
    write_tree_segments_csv(f, tree_to_json(result.tree, result.witnesses));
  }
  return result.best_plan ? RunStatus::plan_found : RunStatus::no_plan;
}

BenchmarkReport run_benchmark(const RunConfig& cfg, int n_trials,
                              const std::vector<PlannerMode>& modes, int jobs) {
  if (n_trials < 1) throw ConfigError("benchmark needs at least one trial");
  const BuiltProblem built = build_problem(cfg);

  struct Task {
    PlannerMode mode;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const PlannerMode mode : modes)
    for (int i = 0; i < n_trials; ++i)
      tasks.push_back({mode, cfg.planner.seed + static_cast<std::uint64_t>(i)});

  BenchmarkReport report;
  report.rows.resize(tasks.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      PlannerConfig pc = cfg.planner;
      if (!pc.x_d) pc.x_d = default_x_d(cfg);
      pc.mode = tasks[i].mode;
      pc.seed = tasks[i].seed;
      const auto t0 = std::chrono::steady_clock::now();
      const PlanResult res = hysst_plan(built.problem, built.library, pc, cfg.integrator);
      const auto t1 = std::chrono::steady_clock::now();
      TrialRow row;
      row.seed = pc.seed;
      row.mode = pc.mode;
      row.found = res.best_plan.has_value();
      row.plan_cost = res.best_plan ? res.best_plan->cost : 0.0;
      row.n_active = res.tree.num_active();
      row.n_inactive = res.tree.num_inactive();
      row.n_total = res.tree.num_alive();
      row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      report.rows[i] = std::move(row);
    }
  };

  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  report.aggregates = aggregate_rows(report.rows);
  return report;
}

std::map<std::string, ModeAggregate> aggregate_rows(const std::vector<TrialRow>& rows) {
  std::map<std::string, ModeAggregate> out;
  std::map<std::string, std::vector<double>> costs;
  for (const auto& row : rows) {
    ModeAggregate& agg = out[mode_name(row.mode)];
    ++agg.n_trials;
    agg.success_rate += row.found ? 1.0 : 0.0;
    agg.mean_active += static_cast<double>(row.n_active);
    agg.mean_inactive += static_cast<double>(row.n_inactive);
    agg.mean_total += static_cast<double>(row.n_total);
    if (row.found) costs[mode_name(row.mode)].push_back(row.plan_cost);
  }
  for (auto& [name, agg] : out) {
    agg.success_rate /= agg.n_trials;
    agg.mean_active /= agg.n_trials;
    agg.mean_inactive /= agg.n_trials;
    agg.mean_total /= agg.n_trials;
    auto& c = costs[name];
    std::sort(c.begin(), c.end());
    if (!c.empty()) {
      double sum = 0.0;
      for (double v : c) sum += v;
      agg.mean_cost = sum / static_cast<double>(c.size());
      const std::size_t m = c.size() / 2;
      agg.median_cost = c.size() % 2 ? c[m] : 0.5 * (c[m - 1] + c[m]);
    }
  }
  return out;
}

void write_report_csv(std::ostream& os, const BenchmarkReport& report) {
  os << "seed,mode,found,plan_cost,n_active,n_inactive,n_total,wall_ms\n";
  for (const auto& r : report.rows) {
    os << r.seed << ',' << mode_name(r.mode) << ',' << (r.found ? 1 : 0) << ',';
    if (r.found) os << format_double(r.plan_cost);
    os << ',' << r.n_active << ',' << r.n_inactive << ',' << r.n_total << ','
       << format_double(r.wall_ms) << '\n';
  }
}

nlohmann::json report_summary_json(const BenchmarkReport& report) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [name, agg] : report.aggregates) {
    doc[name] = {{"n_trials", agg.n_trials},
                 {"success_rate", agg.success_rate},
                 {"mean_cost", agg.mean_cost},
                 {"median_cost", agg.median_cost},
                 {"mean_active", agg.mean_active},
                 {"mean_inactive", agg.mean_inactive},
                 {"mean_total", agg.mean_total}};
  }
  return doc;
}

void write_plan_trace_csv(std::ostream& os, const SolutionPair& psi) {
  os << "t,j";
  for (int i = 0; i < psi.state_arc.dim(); ++i) os << ",x" << i;
  os << '\n';
  for (int j = 0; j <= psi.domain().max_jump(); ++j) {
    for (const auto& s : psi.state_arc.interval(j)) {
      os << format_double(s.t) << ',' << j;
      for (Eigen::Index i = 0; i < s.value.size(); ++i)
        os << ',' << format_double(s.value[i]);
      os << '\n';
    }
  }
}

void write_tree_segments_csv(std::ostream& os, const nlohmann::json& tree_doc) {
  os << "x,y,parent_x,parent_y\n";
  std::map<std::uint64_t, std::pair<double, double>> pos;
  for (const auto& v : tree_doc.at("vertices")) {
    const auto& s = v.at("state");
    pos[v.at("id").get<std::uint64_t>()] = {s.at(0).get<double>(),
                                            s.at(1).get<double>()};
  }
  for (const auto& v : tree_doc.at("vertices")) {
    if (v.at("parent").is_null()) continue;
    const auto [x, y] = pos.at(v.at("id").get<std::uint64_t>());
    const auto [px, py] = pos.at(v.at("parent").get<std::uint64_t>());
    os << format_double(x) << ',' << format_double(y) << ',' << format_double(px)
       << ',' << format_double(py) << '\n';
  }
}

}  // namespace hysst
