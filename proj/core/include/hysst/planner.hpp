#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hysst/simulation.hpp"
#include "hysst/system.hpp"

namespace hysst {

using VertexId = std::uint64_t;

struct Vertex {
  VertexId id = 0;
  Eigen::VectorXd state;
  double cost = 0.0;
  std::optional<VertexId> parent;
  bool active = true;
  int num_children = 0;
};

struct Edge {
  VertexId from = 0;
  VertexId to = 0;
  SolutionPair psi;
};

/// The search tree: vertices with their parent edges, partitioned into active
/// vertices (witness representatives, eligible for selection) and inactive
/// ones (dominated but kept while they still lead somewhere). Vertex ids are
/// dense and never reused; erased vertices leave tombstones so that iteration
/// order, and with it every tie-break, is reproducible.
class SearchTree {
 public:
  VertexId add_vertex(Eigen::VectorXd state, double cost,
                      std::optional<VertexId> parent);
  void add_edge(VertexId from, VertexId to, SolutionPair psi);

  const Vertex& vertex(VertexId id) const { return verts_[id]; }
  bool alive(VertexId id) const { return id < verts_.size() && alive_[id]; }
  bool is_leaf(VertexId id) const { return verts_[id].num_children == 0; }

  void deactivate(VertexId id);
  /// Removes a leaf vertex and its parent edge.
  void erase_leaf(VertexId id);

  const Edge* parent_edge(VertexId id) const;

  std::size_t num_alive() const { return n_active_ + n_inactive_; }
  std::size_t num_active() const { return n_active_; }
  std::size_t num_inactive() const { return n_inactive_; }
  VertexId id_bound() const { return verts_.size(); }

  /// Calls fn(vertex) for every alive vertex, ascending id.
  template <typename F>
  void for_each_alive(F&& fn) const {
    for (VertexId id = 0; id < verts_.size(); ++id)
      if (alive_[id]) fn(verts_[id]);
  }

 private:
  std::vector<Vertex> verts_;
  std::vector<char> alive_;
  std::unordered_map<VertexId, Edge> parent_edges_;  // keyed by child id
  std::size_t n_active_ = 0;
  std::size_t n_inactive_ = 0;
};

struct Witness {
  Eigen::VectorXd point;
  std::optional<VertexId> rep;
  double rep_cost = 0.0;  // cost of rep; meaningful only when rep is set
};

/// The static witness set. Witness points are only ever added, never moved;
/// pairwise distances stay above delta_s by construction.
class WitnessSet {
 public:
  /// Index of the witness nearest to x, ties to the lowest index; -1 when
  /// empty.
  int nearest(const Eigen::VectorXd& x) const;

  int add(Eigen::VectorXd point);

  const std::vector<Witness>& items() const { return items_; }
  Witness& at(int i) { return items_[i]; }
  const Witness& at(int i) const { return items_[i]; }
  std::size_t size() const { return items_.size(); }

 private:
  std::vector<Witness> items_;
};

enum class PlannerMode { hysst, hyrrt_baseline };

struct PlannerConfig {
  double p_n = 0.5;        // probability of the flow regime per iteration
  int iterations = 2000;   // K
  double delta_bn = 1.0;   // random-state neighborhood radius
  double delta_s = 0.5;    // witness radius
  double eps_final = 0.5;  // final-set tolerance
  int n_init_roots = 1;
  std::uint64_t seed = 1;
  PlannerMode mode = PlannerMode::hysst;
  double p_flow_at_intersection = 0.5;  // regime coin on closure(C') n D'
  StatePredicate x_c;  // constraint set for flow-regime selection; empty = all
  StatePredicate x_d;  // constraint set for jump-regime selection; empty = all

  /// Throws std::invalid_argument on out-of-range values; returns warnings
  /// (e.g. the delta_bn <= 2 delta_s heuristic) without failing.
  std::vector<std::string> validate() const;
};

struct IterationStats {
  int iter = 0;
  std::size_t n_active = 0;
  std::size_t n_inactive = 0;
  std::size_t n_witnesses = 0;
  std::optional<double> best_cost;
};

/// A motion plan found by solution checking: the concatenated solution pair
/// along a root-to-vertex path, retained by value so later pruning cannot
/// invalidate it.
struct MotionPlan {
  SolutionPair psi;
  std::vector<VertexId> path;
  double cost = 0.0;
  int found_iteration = 0;
};

struct PlanCounters {
  std::size_t propagation_errors = 0;
  std::size_t unsafe_rejections = 0;
  std::size_t admission_rejections = 0;
};

struct PlanResult {
  SearchTree tree;
  WitnessSet witnesses;
  std::optional<MotionPlan> best_plan;
  std::vector<IterationStats> stats;
  PlanCounters counters;
};

/// Instrumentation hook; used by the invariant test suites.
class PlanObserver {
 public:
  virtual ~PlanObserver() = default;
  virtual void after_prune(const SearchTree&, const WitnessSet&) {}
  virtual void after_iteration(int /*iter*/, const SearchTree&, const WitnessSet&,
                               const std::optional<MotionPlan>&) {}
};

/// Seeds the tree from X_0: up to n_init_roots roots at cost 0, filtered so
/// surviving roots are pairwise more than delta_s apart and each represents
/// its own witness.
std::pair<SearchTree, WitnessSet> tree_init(const MotionPlanProblem& problem,
                                            int n_init_roots, double delta_s, Rng& rng);

/// Uniform sample from a projection set.
Eigen::VectorXd random_state(const std::function<Eigen::VectorXd(Rng&)>& sampler,
                             Rng& rng);

/// The minimum-cost active vertex within delta_bn of x_rand whose state lies
/// in x_star; falls back to the nearest active vertex when that set is empty.
/// Ties break to the lowest vertex id.
VertexId best_near_selection(const Eigen::VectorXd& x_rand, const SearchTree& tree,
                             double delta_bn, const StatePredicate& x_star);

/// Nearest active vertex to x_rand; the selection rule of the baseline mode.
VertexId nearest_active(const Eigen::VectorXd& x_rand, const SearchTree& tree);

/// Decides whether a candidate (state, cost) is locally the best: inserts a
/// fresh witness when none lies within delta_s (returning true), otherwise
/// admits only a strict cost improvement over the witness's representative.
bool is_vertex_locally_the_best(const Eigen::VectorXd& x, double cost,
                                WitnessSet& witnesses, double delta_s);

/// Installs v_new as representative of its nearest witness, demotes the
/// previous representative, and cascades the removal of inactive leaves up
/// the tree.
void prune_dominated_vertices(VertexId v_new, WitnessSet& witnesses, SearchTree& tree);

/// Scans the whole tree for the lowest-cost vertex within eps_final of X_f
/// and returns the concatenated plan through it, if any.
std::optional<MotionPlan> solution_check(const SearchTree& tree,
                                         const MotionPlanProblem& problem,
                                         double eps_final);

/// Builds the plan ending at the given vertex by concatenating its parent
/// edges from the root.
MotionPlan plan_through(const SearchTree& tree, VertexId leaf, int input_dim,
                        int found_iteration);

/// Runs K iterations of the search and returns the tree, the witnesses, the
/// best plan found and per-iteration statistics. Propagation errors are
/// counted, never fatal.
PlanResult hysst_plan(const MotionPlanProblem& problem, const InputLibrary& lib,
                      const PlannerConfig& config, const IntegratorConfig& integrator,
                      PlanObserver* observer = nullptr);

}  // namespace hysst
