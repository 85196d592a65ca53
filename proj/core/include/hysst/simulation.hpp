#pragma once

#include <functional>
#include <utility>

#include "hysst/system.hpp"

namespace hysst {

/// Input library (U_C, U_D): constant flow signals with duration drawn
/// uniformly from (0, max_flow_duration] and value drawn uniformly from U_C,
/// plus jump input values drawn uniformly from U_D.
struct InputLibrary {
  std::function<Eigen::VectorXd(Rng&)> sample_flow_value;
  double max_flow_duration = 1.0;  // T_m
  std::function<Eigen::VectorXd(Rng&)> sample_jump_value;
};

/// Sample a constant flow input: (value, duration), duration in (0, T_m].
std::pair<Eigen::VectorXd, double> sample_flow_input(const InputLibrary& lib, Rng& rng);

/// Sample an input value for a jump.
Eigen::VectorXd sample_jump_input(const InputLibrary& lib, Rng& rng);

struct IntegratorConfig {
  double step_size = 1e-3;    // h, seconds
  double boundary_tol = 1e-9; // flow-set exit refinement, state-space units
  int max_steps = 2000000;
};

/// Fixed-step RK4 propagation of the flow regime under a constant input.
///
/// The trajectory is recorded at every step on the domain [0, tau'] x {0}
/// with tau' = duration, unless the flow set is exited earlier; then the exit
/// time is bracketed by bisection until the final sample sits within
/// boundary_tol of the flow-set boundary (inside its closure) and the arc
/// ends there. Requires (x0, u) in closure(C) and duration > 0.
SolutionPair integrate_flow(const HybridSystemDef& system, const Eigen::VectorXd& x0,
                            const Eigen::VectorXd& u_const, double duration,
                            const IntegratorConfig& cfg);

/// One jump: returns g(x, u). Requires (x, u) in D.
Eigen::VectorXd apply_jump(const HybridSystemDef& system, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& u);

/// Outcome of new_state. When generated is false the pair intersected the
/// unsafe set and must not be added to the tree.
struct PropagationResult {
  bool generated = false;
  SolutionPair psi;
  Eigen::VectorXd x_new;
  double cost_new = 0.0;
};

/// Propagates one step of the search from x_cur:
///  - x in closure(C') \ D': flow under a sampled constant input,
///  - x in D' \ closure(C'): one jump under a sampled input value,
///  - x in both: flow with probability p_flow_at_intersection.
/// cost_new = cost_cur + cost(psi_new). Throws std::domain_error when x_cur
/// lies in neither set or the sampled jump input falls outside D.
PropagationResult new_state(const HybridSystemDef& system, const Eigen::VectorXd& x_cur,
                            double cost_cur, const InputLibrary& lib,
                            const StateInputPredicate& unsafe, const CostFunctional& cost,
                            const IntegratorConfig& cfg, Rng& rng,
                            double p_flow_at_intersection = 0.5);

/// True when any recorded sample of the pair lies in the unsafe set.
bool intersects_unsafe(const SolutionPair& psi, const StateInputPredicate& unsafe);

}  // namespace hysst
