#include "hysst/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hysst {

VertexId SearchTree::add_vertex(Eigen::VectorXd state, double cost,
                                std::optional<VertexId> parent) {
  const VertexId id = verts_.size();
  verts_.push_back({id, std::move(state), cost, parent, true, 0});
  alive_.push_back(1);
  ++n_active_;
  if (parent) ++verts_[*parent].num_children;
  return id;
}

void SearchTree::add_edge(VertexId from, VertexId to, SolutionPair psi) {
  parent_edges_.insert({to, Edge{from, to, std::move(psi)}});
}

void SearchTree::deactivate(VertexId id) {
  Vertex& v = verts_[id];
  if (!v.active) return;
  v.active = false;
  --n_active_;
  ++n_inactive_;
}

void SearchTree::erase_leaf(VertexId id) {
  Vertex& v = verts_[id];
  if (v.num_children != 0)
    throw std::logic_error("erase_leaf: vertex still has children");
  if (v.active)
    --n_active_;
  else
    --n_inactive_;
  alive_[id] = 0;
  if (v.parent) --verts_[*v.parent].num_children;
  parent_edges_.erase(id);
}

const Edge* SearchTree::parent_edge(VertexId id) const {
  auto it = parent_edges_.find(id);
  return it == parent_edges_.end() ? nullptr : &it->second;
}

int WitnessSet::nearest(const Eigen::VectorXd& x) const {
  int best = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const double d = (items_[i].point - x).norm();
    if (d < best_dist) {
      best_dist = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

int WitnessSet::add(Eigen::VectorXd point) {
  items_.push_back({std::move(point), std::nullopt});
  return static_cast<int>(items_.size()) - 1;
}

std::vector<std::string> PlannerConfig::validate() const {
  if (!(p_n > 0.0 && p_n < 1.0))
    throw std::invalid_argument("planner config: p_n must lie in (0, 1)");
  if (iterations < 0)
    throw std::invalid_argument("planner config: iteration budget must be nonnegative");
  if (delta_bn <= 0.0 || delta_s <= 0.0 || eps_final <= 0.0)
    throw std::invalid_argument("planner config: delta_bn, delta_s, eps_final must be positive");
  if (n_init_roots < 1)
    throw std::invalid_argument("planner config: n_init_roots must be positive");
  if (p_flow_at_intersection < 0.0 || p_flow_at_intersection > 1.0)
    throw std::invalid_argument("planner config: p_flow_at_intersection must lie in [0, 1]");

  std::vector<std::string> warnings;
  // The optimality analysis needs delta_bn + 2 delta_s below the (unknown)
  // plan clearance; flag the clearly cramped case.
  if (delta_bn <= 2.0 * delta_s)
    warnings.push_back("delta_bn <= 2 * delta_s: witness radius may dominate the "
                       "selection neighborhood");
  return warnings;
}

Eigen::VectorXd random_state(const std::function<Eigen::VectorXd(Rng&)>& sampler,
                             Rng& rng) {
  return sampler(rng);
}

VertexId best_near_selection(const Eigen::VectorXd& x_rand, const SearchTree& tree,
                             double delta_bn, const StatePredicate& x_star) {
  VertexId best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  bool found = false;
  tree.for_each_alive([&](const Vertex& v) {
    if (!v.active) return;
    if ((v.state - x_rand).norm() > delta_bn) return;
    if (x_star && !x_star(v.state)) return;
    if (v.cost < best_cost) {
      best_cost = v.cost;
      best = v.id;
      found = true;
    }
  });
  if (found) return best;
  return nearest_active(x_rand, tree);
}

VertexId nearest_active(const Eigen::VectorXd& x_rand, const SearchTree& tree) {
  VertexId best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  bool found = false;
  tree.for_each_alive([&](const Vertex& v) {
    if (!v.active) return;
    const double d = (v.state - x_rand).norm();
    if (d < best_dist) {
      best_dist = d;
      best = v.id;
      found = true;
    }
  });
  if (!found) throw std::logic_error("selection: no active vertices");
  return best;
}

bool is_vertex_locally_the_best(const Eigen::VectorXd& x, double cost,
                                WitnessSet& witnesses, double delta_s) {
  const int near = witnesses.nearest(x);
  if (near < 0 || (witnesses.at(near).point - x).norm() > delta_s) {
    witnesses.add(x);
    return true;
  }
  const Witness& s = witnesses.at(near);
  return !s.rep.has_value() || cost < s.rep_cost;
}

void prune_dominated_vertices(VertexId v_new, WitnessSet& witnesses, SearchTree& tree) {
  const int near = witnesses.nearest(tree.vertex(v_new).state);
  Witness& s = witnesses.at(near);
  std::optional<VertexId> peer = s.rep;
  if (peer) tree.deactivate(*peer);
  s.rep = v_new;
  s.rep_cost = tree.vertex(v_new).cost;

  // Cascading removal: an inactive leaf serves no witness and leads nowhere.
  while (peer && tree.is_leaf(*peer) && !tree.vertex(*peer).active) {
    const std::optional<VertexId> parent = tree.vertex(*peer).parent;
    tree.erase_leaf(*peer);
    peer = parent;
  }
}

MotionPlan plan_through(const SearchTree& tree, VertexId leaf, int input_dim,
                        int found_iteration) {
  std::vector<VertexId> path{leaf};
  while (tree.vertex(path.back()).parent) path.push_back(*tree.vertex(path.back()).parent);
  std::reverse(path.begin(), path.end());

  const Vertex& root = tree.vertex(path.front());
  if (path.size() == 1) {
    // Degenerate plan: the root itself qualifies.
    SolutionPair psi(HybridArc::point(root.state),
                     HybridArc::point(Eigen::VectorXd::Zero(input_dim)));
    return {std::move(psi), std::move(path), root.cost, found_iteration};
  }

  std::optional<SolutionPair> psi;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Edge* e = tree.parent_edge(path[i]);
    if (!e) throw std::logic_error("plan_through: missing parent edge");
    psi = psi ? concatenate(*psi, e->psi) : e->psi;
  }
  return {std::move(*psi), std::move(path), tree.vertex(leaf).cost, found_iteration};
}

std::optional<MotionPlan> solution_check(const SearchTree& tree,
                                         const MotionPlanProblem& problem,
                                         double eps_final) {
  std::optional<VertexId> best;
  double best_cost = std::numeric_limits<double>::infinity();
  tree.for_each_alive([&](const Vertex& v) {
    if (problem.final_set.distance(v.state) > eps_final) return;
    if (v.cost < best_cost) {
      best_cost = v.cost;
      best = v.id;
    }
  });
  if (!best) return std::nullopt;
  return plan_through(tree, *best, problem.system.input_dim, 0);
}

std::pair<SearchTree, WitnessSet> tree_init(const MotionPlanProblem& problem,
                                            int n_init_roots, double delta_s, Rng& rng) {
  SearchTree tree;
  WitnessSet witnesses;
  for (int i = 0; i < n_init_roots; ++i) {
    Eigen::VectorXd x0 = problem.initial_set.sample(rng);
    if (!is_vertex_locally_the_best(x0, 0.0, witnesses, delta_s))
      continue;  // duplicate root within delta_s of an existing witness
    const VertexId v = tree.add_vertex(std::move(x0), 0.0, std::nullopt);
    prune_dominated_vertices(v, witnesses, tree);
  }
  if (tree.num_active() == 0)
    throw std::runtime_error("tree_init: no roots could be drawn from X_0");
  return {std::move(tree), std::move(witnesses)};
}

PlanResult hysst_plan(const MotionPlanProblem& problem, const InputLibrary& lib,
                      const PlannerConfig& config, const IntegratorConfig& integrator,
                      PlanObserver* observer) {
  config.validate();
  Rng rng(config.seed);
  const bool sparse = config.mode == PlannerMode::hysst;

  PlanResult result;
  if (sparse) {
    auto [tree, witnesses] = tree_init(problem, config.n_init_roots, config.delta_s, rng);
    result.tree = std::move(tree);
    result.witnesses = std::move(witnesses);
  } else {
    // Baseline keeps every sampled root; no witnesses, no pruning.
    for (int i = 0; i < config.n_init_roots; ++i)
      result.tree.add_vertex(problem.initial_set.sample(rng), 0.0, std::nullopt);
  }

  // A root may already satisfy the goal condition.
  if (auto root_plan = solution_check(result.tree, problem, config.eps_final))
    result.best_plan = std::move(root_plan);

  const auto flow_sampler = problem.system.flow_proj.make_sampler(0.0);
  const auto jump_sampler = problem.system.jump_proj.make_sampler(0.0);

  result.stats.reserve(config.iterations);
  for (int k = 1; k <= config.iterations; ++k) {
    const double r = rng.uniform01();
    const bool flow_regime = r <= config.p_n;
    const Eigen::VectorXd x_rand =
        random_state(flow_regime ? flow_sampler : jump_sampler, rng);

    VertexId v_cur;
    if (sparse) {
      v_cur = best_near_selection(x_rand, result.tree, config.delta_bn,
                                  flow_regime ? config.x_c : config.x_d);
    } else {
      v_cur = nearest_active(x_rand, result.tree);
    }
    const Vertex& cur = result.tree.vertex(v_cur);

    std::optional<PropagationResult> prop;
    try {
      prop = new_state(problem.system, cur.state, cur.cost, lib, problem.unsafe_set,
                       problem.cost, integrator, rng, config.p_flow_at_intersection);
    } catch (const std::exception&) {
      ++result.counters.propagation_errors;
    }

    if (prop && !prop->generated) ++result.counters.unsafe_rejections;

    if (prop && prop->generated) {
      bool admit = true;
      if (sparse)
        admit = is_vertex_locally_the_best(prop->x_new, prop->cost_new,
                                           result.witnesses, config.delta_s);
      if (!admit) ++result.counters.admission_rejections;
      if (admit) {
        const VertexId v_new =
            result.tree.add_vertex(prop->x_new, prop->cost_new, v_cur);
        result.tree.add_edge(v_cur, v_new, std::move(prop->psi));
        if (sparse) {
          prune_dominated_vertices(v_new, result.witnesses, result.tree);
          if (observer) observer->after_prune(result.tree, result.witnesses);
        }
        // Incremental solution check: only the newly admitted vertex can
        // improve the best plan.
        const Vertex& vn = result.tree.vertex(v_new);
        if (problem.final_set.distance(vn.state) <= config.eps_final &&
            (!result.best_plan || vn.cost < result.best_plan->cost)) {
          result.best_plan =
              plan_through(result.tree, v_new, problem.system.input_dim, k);
        }
      }
    }

    result.stats.push_back({k, result.tree.num_active(), result.tree.num_inactive(),
                            result.witnesses.size(),
                            result.best_plan
                                ? std::optional<double>(result.best_plan->cost)
                                : std::nullopt});
    if (observer)
      observer->after_iteration(k, result.tree, result.witnesses, result.best_plan);
  }
  return result;
}

}  // namespace hysst
