#include "hysst/systems/bouncing_ball.hpp"

#include <cmath>
#include <stdexcept>

namespace hysst::systems {

HybridSystemDef bouncing_ball_system(const BouncingBallParams& p) {
  if (p.gamma <= 0.0) throw std::invalid_argument("bouncing ball: gamma must be positive");
  if (p.lambda <= 0.0 || p.lambda >= 1.0)
    throw std::invalid_argument("bouncing ball: lambda must lie in (0, 1)");

  HybridSystemDef sys;
  sys.name = "bouncing_ball";
  sys.state_dim = 2;
  sys.input_dim = 1;

  sys.flow_map = [gamma = p.gamma](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    Eigen::VectorXd dx(2);
    dx << x[1], -gamma;
    return dx;
  };
  sys.flow_set = [](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    return x[0] >= 0.0;
  };
  sys.flow_set_closure = sys.flow_set;  // C is closed

  sys.jump_map = [lambda = p.lambda](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    Eigen::VectorXd xp(2);
    xp << x[0], -lambda * x[1] + u[0];
    return xp;
  };
  sys.jump_set = [tol = p.contact_tol](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return std::abs(x[0]) <= tol && x[1] <= 0.0 && u[0] >= 0.0;
  };

  // C = {x1 >= 0}: distance of an outside point is -x1.
  sys.flow_ineq = InflatableInequality{
      [](const Eigen::VectorXd& x, const Eigen::VectorXd&) { return -x[0]; }};
  // D = {x1 = 0, x2 <= 0} x {u >= 0}: per-factor Euclidean distances.
  sys.jump_ineq = InflatableInequality{
      [](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
        const double dx = std::hypot(x[0], std::max(x[1], 0.0));
        const double du = std::max(-u[0], 0.0);
        return std::max(dx, du);
      }};

  sys.bounding_box = {{0.0, p.x1_max}, {-p.v_max, p.v_max}};

  // closure(C') = {x1 >= 0}.
  sys.flow_proj.contains_at = [](const Eigen::VectorXd& x, double delta) {
    return x[0] >= -delta;
  };
  sys.flow_proj.make_sampler = [p](double delta) {
    return [p, delta](Rng& rng) {
      Eigen::VectorXd x(2);
      x << rng.uniform(-delta, p.x1_max), rng.uniform(-p.v_max, p.v_max);
      return x;
    };
  };

  // D' = {x1 = 0, x2 <= 0}.
  sys.jump_proj.contains_at = [tol = p.contact_tol](const Eigen::VectorXd& x,
                                                    double delta) {
    if (delta <= 0.0) return std::abs(x[0]) <= tol && x[1] <= 0.0;
    return std::hypot(x[0], std::max(x[1], 0.0)) <= delta;
  };
  sys.jump_proj.make_sampler = [p](double delta) {
    return [p, delta](Rng& rng) {
      Eigen::VectorXd x(2);
      if (delta <= 0.0) {
        x << 0.0, rng.uniform(-p.v_max, 0.0);
        return x;
      }
      // Rejection from the box around the inflated ray.
      for (;;) {
        x << rng.uniform(-delta, delta), rng.uniform(-p.v_max, delta);
        if (std::hypot(x[0], std::max(x[1], 0.0)) <= delta) return x;
      }
    };
  };
  return sys;
}

MotionPlanProblem bouncing_ball_problem(const BouncingBallParams& p) {
  MotionPlanProblem problem;
  problem.system = bouncing_ball_system(p);

  Eigen::VectorXd x0(2);
  x0 << 15.0, 0.0;
  problem.initial_set.contains = [x0](const Eigen::VectorXd& x) { return x == x0; };
  problem.initial_set.sample = [x0](Rng&) { return x0; };

  Eigen::VectorXd xf(2);
  xf << 10.0, 0.0;
  problem.final_set.distance = [xf](const Eigen::VectorXd& x) {
    return (x - xf).norm();
  };

  problem.unsafe_set = [](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return x[0] >= 20.0 && u[0] >= 5.0;
  };

  problem.cost = hybrid_time_cost_functional();
  return problem;
}

InputLibrary bouncing_ball_input_library(const BouncingBallParams& p,
                                         double max_flow_duration) {
  InputLibrary lib;
  lib.max_flow_duration = max_flow_duration;
  lib.sample_flow_value = [](Rng&) { return Eigen::VectorXd::Zero(1).eval(); };
  lib.sample_jump_value = [u_max = p.u_max](Rng& rng) {
    Eigen::VectorXd u(1);
    u << rng.uniform(0.0, u_max);
    return u;
  };
  return lib;
}

MotionPlanProblem auxiliary_extension(const MotionPlanProblem& problem) {
  const HybridSystemDef& base = problem.system;
  const int n = base.state_dim;

  MotionPlanProblem out;
  HybridSystemDef& sys = out.system;
  sys.name = base.name + "_aux";
  sys.state_dim = n + 2;
  sys.input_dim = base.input_dim;

  auto head = [n](const Eigen::VectorXd& x) { return x.head(n).eval(); };

  sys.flow_map = [base, n, head](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    Eigen::VectorXd dx(n + 2);
    dx.head(n) = base.flow_map(head(x), u);
    dx[n] = 1.0;      // tau
    dx[n + 1] = 0.0;  // k
    return dx;
  };
  sys.jump_map = [base, n, head](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    Eigen::VectorXd xp(n + 2);
    xp.head(n) = base.jump_map(head(x), u);
    xp[n] = x[n];
    xp[n + 1] = x[n + 1] + 1.0;
    return xp;
  };
  sys.flow_set = [base, head](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return base.flow_set(head(x), u);
  };
  sys.flow_set_closure = [base, head](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return base.in_flow_closure(head(x), u);
  };
  sys.jump_set = [base, head](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return base.jump_set(head(x), u);
  };
  if (base.flow_ineq) {
    sys.flow_ineq = InflatableInequality{
        [h = base.flow_ineq->h, head](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
          return h(head(x), u);
        },
        base.flow_ineq->slack};
  }
  if (base.jump_ineq) {
    sys.jump_ineq = InflatableInequality{
        [h = base.jump_ineq->h, head](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
          return h(head(x), u);
        },
        base.jump_ineq->slack};
  }

  // The clock sampler box: tau up to a generous horizon, k small integers.
  constexpr double kTauBox = 50.0;
  constexpr double kJumpBox = 25.0;
  sys.bounding_box = base.bounding_box;
  sys.bounding_box.push_back({0.0, kTauBox});
  sys.bounding_box.push_back({0.0, kJumpBox});

  auto extend_proj = [](const ProjectionSet& proj) {
    ProjectionSet ext;
    ext.contains_at = [proj](const Eigen::VectorXd& x, double delta) {
      const int nb = static_cast<int>(x.size()) - 2;
      return proj.contains_at(x.head(nb), delta) && x[nb] >= 0.0 && x[nb + 1] >= 0.0;
    };
    ext.make_sampler = [proj](double delta) {
      auto base_sampler = proj.make_sampler(delta);
      return [base_sampler](Rng& rng) {
        Eigen::VectorXd xb = base_sampler(rng);
        Eigen::VectorXd x(xb.size() + 2);
        x.head(xb.size()) = xb;
        x[xb.size()] = rng.uniform(0.0, kTauBox);
        x[xb.size() + 1] = static_cast<double>(rng.integer(kJumpBox));
        return x;
      };
    };
    return ext;
  };
  sys.flow_proj = extend_proj(base.flow_proj);
  sys.jump_proj = extend_proj(base.jump_proj);

  const auto base_init = problem.initial_set;
  out.initial_set.contains = [base_init, n](const Eigen::VectorXd& x) {
    return base_init.contains(x.head(n)) && x[n] == 0.0 && x[n + 1] == 0.0;
  };
  out.initial_set.sample = [base_init, n](Rng& rng) {
    Eigen::VectorXd xb = base_init.sample(rng);
    Eigen::VectorXd x(n + 2);
    x.head(n) = xb;
    x[n] = 0.0;
    x[n + 1] = 0.0;
    return x;
  };

  const auto base_final = problem.final_set;
  out.final_set.distance = [base_final, n](const Eigen::VectorXd& x) {
    return base_final.distance(x.head(n));
  };
  const auto base_unsafe = problem.unsafe_set;
  out.unsafe_set = [base_unsafe, n](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return base_unsafe(x.head(n), u);
  };

  // Clock increment (tau + k) between the arc's endpoints; additive under
  // concatenation and equal to the domain's own hybrid time.
  out.cost.incremental = true;
  out.cost.evaluate = [](const HybridArc& arc) {
    const Eigen::VectorXd& a = arc.initial_value();
    const Eigen::VectorXd& b = arc.final_value();
    const Eigen::Index n2 = arc.dim();
    return (b[n2 - 2] - a[n2 - 2]) + (b[n2 - 1] - a[n2 - 1]);
  };
  return out;
}

}  // namespace hysst::systems
