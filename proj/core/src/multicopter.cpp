#include "hysst/systems/multicopter.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace hysst::systems {

std::vector<WallRect> MulticopterParams::default_walls() {
  return {{0.0, 0.5, 1.0, 3.0}, {0.5, 4.5, 2.5, 3.0}, {0.5, 4.5, 1.0, 1.5}};
}

namespace {

bool inside_rect(const WallRect& w, const Eigen::Vector2d& p) {
  return p.x() >= w.x_min && p.x() <= w.x_max && p.y() >= w.y_min && p.y() <= w.y_max;
}

bool strictly_inside_rect(const WallRect& w, const Eigen::Vector2d& p) {
  return p.x() > w.x_min && p.x() < w.x_max && p.y() > w.y_min && p.y() < w.y_max;
}

double rect_outer_distance(const WallRect& w, const Eigen::Vector2d& p) {
  const double dx = std::max({w.x_min - p.x(), 0.0, p.x() - w.x_max});
  const double dy = std::max({w.y_min - p.y(), 0.0, p.y() - w.y_max});
  return std::hypot(dx, dy);
}

double rect_penetration(const WallRect& w, const Eigen::Vector2d& p) {
  // Distance from an interior point to the rectangle boundary.
  const double dx = std::min(p.x() - w.x_min, w.x_max - p.x());
  const double dy = std::min(p.y() - w.y_min, w.y_max - p.y());
  return std::min(dx, dy);
}

}  // namespace

double wall_signed_distance(const std::vector<WallRect>& walls,
                            const Eigen::Vector2d& p) {
  double outer = std::numeric_limits<double>::infinity();
  for (const auto& w : walls) {
    if (inside_rect(w, p)) return -rect_penetration(w, p);
    outer = std::min(outer, rect_outer_distance(w, p));
  }
  return outer;
}

std::optional<WallContact> wall_contact(const std::vector<WallRect>& walls,
                                        const Eigen::Vector2d& p, double tol) {
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const auto& w = walls[i];
    const bool in_x = p.x() >= w.x_min - tol && p.x() <= w.x_max + tol;
    const bool in_y = p.y() >= w.y_min - tol && p.y() <= w.y_max + tol;
    // x-normal faces first, then y-normal ones.
    if (in_y && std::abs(p.x() - w.x_min) <= tol)
      return WallContact{static_cast<int>(i), {-1.0, 0.0}, {0.0, 1.0}};
    if (in_y && std::abs(p.x() - w.x_max) <= tol)
      return WallContact{static_cast<int>(i), {1.0, 0.0}, {0.0, 1.0}};
    if (in_x && std::abs(p.y() - w.y_min) <= tol)
      return WallContact{static_cast<int>(i), {0.0, -1.0}, {1.0, 0.0}};
    if (in_x && std::abs(p.y() - w.y_max) <= tol)
      return WallContact{static_cast<int>(i), {0.0, 1.0}, {1.0, 0.0}};
  }
  return std::nullopt;
}

HybridSystemDef multicopter_system(const MulticopterParams& p) {
  if (p.e <= 0.0 || p.e >= 1.0)
    throw std::invalid_argument("multicopter: restitution must lie in (0, 1)");
  for (const auto& w : p.walls) {
    if (w.x_min >= w.x_max || w.y_min >= w.y_max)
      throw std::invalid_argument("multicopter: degenerate wall rectangle");
    if (w.x_min < 0.0 || w.x_max > p.arena_x || w.y_min < 0.0 || w.y_max > p.arena_y)
      throw std::invalid_argument("multicopter: wall outside arena");
  }

  HybridSystemDef sys;
  sys.name = "multicopter";
  sys.state_dim = 6;
  sys.input_dim = 2;

  sys.flow_map = [](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    Eigen::VectorXd dx(6);
    dx << x[2], x[3], x[4], x[5], u[0], u[1];
    return dx;
  };

  const auto walls = p.walls;
  sys.flow_set = [walls](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    const Eigen::Vector2d pos(x[0], x[1]);
    for (const auto& w : walls)
      if (inside_rect(w, pos)) return false;
    return true;
  };
  sys.flow_set_closure = [walls](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    const Eigen::Vector2d pos(x[0], x[1]);
    for (const auto& w : walls)
      if (strictly_inside_rect(w, pos)) return false;
    return true;
  };

  const double tol = p.contact_tol;
  sys.jump_set = [walls, tol](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    const auto contact = wall_contact(walls, {x[0], x[1]}, tol);
    if (!contact) return false;
    const Eigen::Vector2d v(x[2], x[3]);
    return v.dot(contact->normal) < 0.0;
  };

  sys.jump_map = [walls, tol, e = p.e, kappa = p.kappa](const Eigen::VectorXd& x,
                                                        const Eigen::VectorXd&) {
    const auto contact = wall_contact(walls, {x[0], x[1]}, tol);
    if (!contact) throw std::domain_error("multicopter jump: no wall contact at p");
    const Eigen::Vector2d v(x[2], x[3]);
    const double vn = v.dot(contact->normal);
    const double vt = v.dot(contact->tangent);
    assert(vn < 0.0 && "jump map requires approach velocity (v_n < 0)");
    const double vn_plus = -e * vn;
    const double vt_plus = vt + kappa * (-e - 1.0) * std::atan(vt / vn) * vn;
    const Eigen::Vector2d v_plus = vn_plus * contact->normal + vt_plus * contact->tangent;
    Eigen::VectorXd xp(6);
    xp << x[0], x[1], v_plus.x(), v_plus.y(), 0.0, 0.0;
    return xp;
  };

  // C = {p not in W}: signed wall distance, negated so that h <= 0 inside the
  // closure of C.
  sys.flow_ineq = InflatableInequality{
      [walls](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
        return -wall_signed_distance(walls, {x[0], x[1]});
      }};
  // D: distance to the wall boundary plus the approach-speed defect. Exact on
  // face interiors; corners resolve through the contact frame priority.
  sys.jump_ineq = InflatableInequality{
      [walls, tol](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
        const Eigen::Vector2d pos(x[0], x[1]);
        const double d_boundary = std::abs(wall_signed_distance(walls, pos));
        const auto contact = wall_contact(walls, pos, std::max(tol, d_boundary * 1.001));
        if (!contact) return std::numeric_limits<double>::infinity();
        const Eigen::Vector2d v(x[2], x[3]);
        return std::max(d_boundary, v.dot(contact->normal));
      }};

  sys.bounding_box = {{0.0, p.arena_x}, {0.0, p.arena_y}, {-p.v_max, p.v_max},
                      {-p.v_max, p.v_max}, {-p.a_max, p.a_max}, {-p.a_max, p.a_max}};

  // closure(C') = {p not in int W} x R^4.
  sys.flow_proj.contains_at = [walls](const Eigen::VectorXd& x, double delta) {
    return wall_signed_distance(walls, {x[0], x[1]}) >= -delta;
  };
  sys.flow_proj.make_sampler = [p, walls](double delta) {
    return [p, walls, delta](Rng& rng) {
      Eigen::VectorXd x(6);
      for (;;) {
        const double px = rng.uniform(0.0, p.arena_x);
        const double py = rng.uniform(0.0, p.arena_y);
        if (wall_signed_distance(walls, {px, py}) < -delta) continue;
        x << px, py, rng.uniform(-p.v_max, p.v_max), rng.uniform(-p.v_max, p.v_max),
            rng.uniform(-p.a_max, p.a_max), rng.uniform(-p.a_max, p.a_max);
        return x;
      }
    };
  };

  // D' = {p in dW, v_n < 0} x R^2 (accelerations free).
  sys.jump_proj.contains_at = [walls, tol](const Eigen::VectorXd& x, double delta) {
    const Eigen::Vector2d pos(x[0], x[1]);
    const double reach = std::max(tol, delta);
    const auto contact = wall_contact(walls, pos, reach);
    if (!contact) return false;
    const Eigen::Vector2d v(x[2], x[3]);
    return v.dot(contact->normal) < delta;
  };
  sys.jump_proj.make_sampler = [p, walls, tol](double delta) {
    // Faces weighted by length so points are uniform along the boundary.
    struct Face {
      int wall;
      Eigen::Vector2d a, b;  // segment endpoints
    };
    std::vector<Face> faces;
    std::vector<double> cumulative;
    double total = 0.0;
    for (std::size_t i = 0; i < walls.size(); ++i) {
      const auto& w = walls[i];
      const int id = static_cast<int>(i);
      faces.push_back({id, {w.x_min, w.y_min}, {w.x_min, w.y_max}});
      faces.push_back({id, {w.x_max, w.y_min}, {w.x_max, w.y_max}});
      faces.push_back({id, {w.x_min, w.y_min}, {w.x_max, w.y_min}});
      faces.push_back({id, {w.x_min, w.y_max}, {w.x_max, w.y_max}});
    }
    for (const auto& f : faces) {
      total += (f.b - f.a).norm();
      cumulative.push_back(total);
    }
    return [p, walls, tol, delta, faces, cumulative, total](Rng& rng) {
      Eigen::VectorXd x(6);
      for (;;) {
        const double pick = rng.uniform(0.0, total);
        std::size_t i = 0;
        while (i + 1 < cumulative.size() && cumulative[i] < pick) ++i;
        const auto& f = faces[i];
        Eigen::Vector2d pos = f.a + rng.uniform01() * (f.b - f.a);
        if (delta > 0.0) {
          // Thicken the face along its normal.
          const Eigen::Vector2d n = (f.b - f.a).x() == 0.0
                                        ? Eigen::Vector2d(1.0, 0.0)
                                        : Eigen::Vector2d(0.0, 1.0);
          pos += rng.uniform(-delta, delta) * n;
        }
        const auto contact = wall_contact(walls, pos, std::max(tol, delta));
        if (!contact) continue;
        const double vn = -rng.uniform_pos(p.v_max) + delta * rng.uniform01();
        const double vt = rng.uniform(-p.v_max, p.v_max);
        const Eigen::Vector2d v = vn * contact->normal + vt * contact->tangent;
        x << pos.x(), pos.y(), v.x(), v.y(), rng.uniform(-p.a_max, p.a_max),
            rng.uniform(-p.a_max, p.a_max);
        if (vn < delta) return x;
      }
    };
  };
  return sys;
}

MotionPlanProblem multicopter_problem(const MulticopterParams& p) {
  MotionPlanProblem problem;
  problem.system = multicopter_system(p);

  Eigen::VectorXd x0(6);
  x0 << 1.0, 2.0, 0.0, 0.0, 0.0, 0.0;
  problem.initial_set.contains = [x0](const Eigen::VectorXd& x) { return x == x0; };
  problem.initial_set.sample = [x0](Rng&) { return x0; };

  const Eigen::Vector2d goal(5.0, 4.0);
  problem.final_set.distance = [goal](const Eigen::VectorXd& x) {
    return (Eigen::Vector2d(x[0], x[1]) - goal).norm();
  };

  const auto walls = p.walls;
  const double ax = p.arena_x, ay = p.arena_y;
  problem.unsafe_set = [walls, ax, ay](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    const Eigen::Vector2d pos(x[0], x[1]);
    if (pos.x() <= 0.0 || pos.x() >= ax || pos.y() <= 0.0 || pos.y() >= ay) return true;
    for (const auto& w : walls)
      if (strictly_inside_rect(w, pos)) return true;
    return false;
  };

  problem.cost = hybrid_time_cost_functional();
  return problem;
}

InputLibrary multicopter_input_library(const MulticopterParams& p,
                                       double max_flow_duration) {
  InputLibrary lib;
  lib.max_flow_duration = max_flow_duration;
  lib.sample_flow_value = [u_max = p.u_max](Rng& rng) {
    Eigen::VectorXd u(2);
    u << rng.uniform(-u_max, u_max), rng.uniform(-u_max, u_max);
    return u;
  };
  lib.sample_jump_value = [](Rng&) { return Eigen::VectorXd::Zero(2).eval(); };
  return lib;
}

}  // namespace hysst::systems
