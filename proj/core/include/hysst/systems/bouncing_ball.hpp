#pragma once

#include "hysst/simulation.hpp"
#include "hysst/system.hpp"

namespace hysst::systems {

/// Ball bouncing on an actuated horizontal surface. State (x1, x2) = (height,
/// vertical velocity), scalar input applied at impacts:
///   flow:  x1' = x2, x2' = -gamma        on  C = {x1 >= 0}
///   jump:  x1+ = x1, x2+ = -lambda x2 + u on  D = {x1 = 0, x2 <= 0, u >= 0}
struct BouncingBallParams {
  double gamma = 9.81;    // gravity, m/s^2
  double lambda = 0.8;    // restitution, in (0, 1)
  double u_max = 5.0;     // largest jump input
  double x1_max = 20.0;   // sampler box: height
  double v_max = 20.0;    // sampler box: |velocity|
  double contact_tol = 1e-6;  // numerical width of the contact condition
};

HybridSystemDef bouncing_ball_system(const BouncingBallParams& params = {});

/// The Example-1 instance: X_0 = {(15, 0)}, X_f = {(10, 0)},
/// X_u = {x1 >= 20 and u >= 5}, hybrid-time cost.
MotionPlanProblem bouncing_ball_problem(const BouncingBallParams& params = {});

/// Flow inputs are ignored by f, so U_C = {0}; jump inputs are uniform on
/// [0, u_max].
InputLibrary bouncing_ball_input_library(const BouncingBallParams& params,
                                         double max_flow_duration);

/// Lifts a problem with the hybrid clock (tau, k): state gains two trailing
/// components with tau' = 1, k' = 0 during flow and tau+ = tau, k+ = k + 1 at
/// jumps; X_0 starts at (tau, k) = (0, 0) and X_f, X_u ignore the clock. The
/// returned cost reads the clock increment off the arc's endpoint samples and
/// equals hybrid_time_cost of the underlying arc.
MotionPlanProblem auxiliary_extension(const MotionPlanProblem& problem);

}  // namespace hysst::systems
