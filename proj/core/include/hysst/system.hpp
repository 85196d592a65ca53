#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hysst/cost.hpp"
#include "hysst/hybrid_arc.hpp"
#include "hysst/rng.hpp"

namespace hysst {

using StatePredicate = std::function<bool(const Eigen::VectorXd& x)>;
using StateInputPredicate =
    std::function<bool(const Eigen::VectorXd& x, const Eigen::VectorXd& u)>;
using VectorField =
    std::function<Eigen::VectorXd(const Eigen::VectorXd& x, const Eigen::VectorXd& u)>;

/// Inequality description of a set: membership is h(x, u) <= slack(delta),
/// where delta = 0 selects the nominal set and delta > 0 its Euclidean
/// delta-inflation. Systems that support inflation ship their own h and
/// slack; a black-box predicate cannot be inflated.
struct InflatableInequality {
  std::function<double(const Eigen::VectorXd& x, const Eigen::VectorXd& u)> h;
  std::function<double(double delta)> slack = [](double d) { return d; };

  bool contains(const Eigen::VectorXd& x, const Eigen::VectorXd& u, double delta) const {
    return h(x, u) <= slack(delta);
  }
};

/// Projection of the flow or jump set onto the state space, with a uniform
/// sampler over it. `make_sampler(delta)` builds the sampler for the
/// delta-inflated projection; delta = 0 is the nominal set.
struct ProjectionSet {
  std::function<bool(const Eigen::VectorXd& x, double delta)> contains_at;
  std::function<std::function<Eigen::VectorXd(Rng&)>(double delta)> make_sampler;

  bool contains(const Eigen::VectorXd& x) const { return contains_at(x, 0.0); }
};

/// The data (C, f, D, g) of a hybrid system plus the projections C', D' and
/// sampler support. Immutable once built; all members are pure functions.
struct HybridSystemDef {
  std::string name;
  int state_dim = 0;
  int input_dim = 0;

  StateInputPredicate flow_set;          // C
  StateInputPredicate flow_set_closure;  // closure(C); empty falls back to flow_set
  VectorField flow_map;                  // f
  StateInputPredicate jump_set;          // D
  VectorField jump_map;                  // g

  ProjectionSet flow_proj;  // closure(C')
  ProjectionSet jump_proj;  // D'

  /// Per-coordinate intervals bounding the samplers.
  std::vector<std::array<double, 2>> bounding_box;

  /// Inflatable descriptions of C and D, used for inflation and for boundary
  /// refinement during flow integration. Optional; bundled systems provide
  /// them.
  std::optional<InflatableInequality> flow_ineq;
  std::optional<InflatableInequality> jump_ineq;

  /// Current inflation radius; 0 on nominal systems.
  double inflation = 0.0;

  bool in_flow_set(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
    return flow_set(x, u);
  }
  bool in_flow_closure(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
    return flow_set_closure ? flow_set_closure(x, u) : flow_set(x, u);
  }
};

/// The delta_f-inflation of a system: flow and jump sets grow by a Euclidean
/// ball of radius delta_f (independently in x and u), the maps stay f and g.
/// Requires delta_f > 0 and inflatable descriptions on the input system.
/// Inflating an already inflated system adds the radii.
HybridSystemDef inflate(const HybridSystemDef& system, double delta_f);

/// Initial state set X_0: membership plus uniform sampler.
struct InitialSet {
  StatePredicate contains;
  std::function<Eigen::VectorXd(Rng&)> sample;
};

/// Final state set X_f, represented through its distance function so that the
/// solution-check tolerance dist(x, X_f) <= eps is directly computable.
struct TargetSet {
  std::function<double(const Eigen::VectorXd& x)> distance;

  bool contains(const Eigen::VectorXd& x) const { return distance(x) <= 0.0; }
};

/// A motion planning instance: the system, X_0, X_f, X_u and the cost.
struct MotionPlanProblem {
  HybridSystemDef system;
  InitialSet initial_set;
  TargetSet final_set;
  StateInputPredicate unsafe_set;  // X_u on (x, u)
  CostFunctional cost;
};

/// Outcome of validate_solution: the flag plus one entry per violated
/// condition, for diagnostics.
struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;

  explicit operator bool() const { return ok; }
};

/// Checks that a sampled pair is a solution to the system:
///  - samples interior to each flow interval lie in C,
///  - finite-difference velocities of consecutive flow samples match f within
///    tol (midpoint rule, so RK4 output at step h passes with tol ~ 10 h^2),
///  - each jump's pre-state lies in D and its post-state equals g within tol,
///  - the initial point lies in closure(C) or D.
ValidationReport validate_solution(const HybridSystemDef& system,
                                   const SolutionPair& psi, double tol);

}  // namespace hysst
