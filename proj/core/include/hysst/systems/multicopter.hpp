#pragma once

#include <optional>
#include <vector>

#include "hysst/simulation.hpp"
#include "hysst/system.hpp"

namespace hysst::systems {

/// Axis-aligned wall rectangle in the plane.
struct WallRect {
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
};

/// Contact frame at a wall face: the unit normal points into free space, the
/// tangent is the matching axis direction ((0,1) for x-normals, (1,0) for
/// y-normals).
struct WallContact {
  int wall = 0;
  Eigen::Vector2d normal;
  Eigen::Vector2d tangent;
};

/// Planar collision-resilient multicopter. State (p, v, a) in R^6 with jerk
/// input u in R^2:
///   flow:  p' = v, v' = a, a' = u      on  C = {p not in W}
///   jump:  p+ = p, a+ = 0,
///          v_n+ = -e v_n,
///          v_t+ = v_t + kappa (-e - 1) atan(v_t / v_n) v_n
///                                       on  D = {p in dW, v_n < 0}
struct MulticopterParams {
  double e = 0.43;      // restitution
  double kappa = 0.20;  // tangential collision coefficient
  std::vector<WallRect> walls = default_walls();
  double arena_x = 6.0;  // keep-in box [0, arena_x] x [0, arena_y]
  double arena_y = 5.0;
  double v_max = 3.0;  // sampler boxes
  double a_max = 3.0;
  double u_max = 3.0;
  double contact_tol = 1e-6;

  /// Corridor layout: a left block and two long horizontal walls.
  static std::vector<WallRect> default_walls();
};

/// Face of a wall whose boundary contains p (within tol). Corner points
/// resolve to the lowest wall id, x-normal faces before y-normal faces.
std::optional<WallContact> wall_contact(const std::vector<WallRect>& walls,
                                        const Eigen::Vector2d& p, double tol);

/// Signed distance of p to the wall region W: positive outside, zero on the
/// boundary, negative (penetration) inside.
double wall_signed_distance(const std::vector<WallRect>& walls,
                            const Eigen::Vector2d& p);

HybridSystemDef multicopter_system(const MulticopterParams& params = {});

/// The Example-2 instance: X_0 = {(1, 2, 0, 0, 0, 0)}, X_f = {(5, 4)} x R^4,
/// X_u = positions outside the arena or strictly inside a wall; hybrid-time
/// cost.
MotionPlanProblem multicopter_problem(const MulticopterParams& params = {});

/// U_C = [-u_max, u_max]^2; the jump map ignores its input, so U_D = {0}.
InputLibrary multicopter_input_library(const MulticopterParams& params,
                                       double max_flow_duration);

}  // namespace hysst::systems
