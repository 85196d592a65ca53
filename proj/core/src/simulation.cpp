#include "hysst/simulation.hpp"

#include <cmath>
#include <stdexcept>

namespace hysst {

std::pair<Eigen::VectorXd, double> sample_flow_input(const InputLibrary& lib, Rng& rng) {
  Eigen::VectorXd value = lib.sample_flow_value(rng);
  const double duration = rng.uniform_pos(lib.max_flow_duration);
  return {std::move(value), duration};
}

Eigen::VectorXd sample_jump_input(const InputLibrary& lib, Rng& rng) {
  return lib.sample_jump_value(rng);
}

namespace {

Eigen::VectorXd rk4_step(const VectorField& f, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& u, double h) {
  const Eigen::VectorXd k1 = f(x, u);
  const Eigen::VectorXd k2 = f(x + 0.5 * h * k1, u);
  const Eigen::VectorXd k3 = f(x + 0.5 * h * k2, u);
  const Eigen::VectorXd k4 = f(x + h * k3, u);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

SolutionPair make_flow_pair(std::vector<ArcSample> states, const Eigen::VectorXd& u) {
  const double t_end = states.back().t;
  HybridTimeDomain dom = HybridTimeDomain::flow_interval(t_end);
  std::vector<ArcSample> inputs;
  inputs.reserve(states.size());
  for (const auto& s : states) inputs.push_back({s.t, u});
  HybridArc state_arc(dom, {std::move(states)});
  HybridArc input_arc(std::move(dom), {std::move(inputs)});
  return SolutionPair(std::move(state_arc), std::move(input_arc));
}

}  // namespace

SolutionPair integrate_flow(const HybridSystemDef& system, const Eigen::VectorXd& x0,
                            const Eigen::VectorXd& u_const, double duration,
                            const IntegratorConfig& cfg) {
  if (duration <= 0.0)
    throw std::invalid_argument("integrate_flow: duration must be positive");
  if (!system.in_flow_closure(x0, u_const))
    throw std::domain_error("integrate_flow: initial point outside closure(C)");
  if (duration / cfg.step_size > static_cast<double>(cfg.max_steps))
    throw std::invalid_argument("integrate_flow: step budget exceeded");

  // Membership during propagation is the closed condition h <= slack; without
  // an inequality description the plain predicate decides.
  const double delta = system.inflation;
  auto inside = [&](const Eigen::VectorXd& x) {
    if (system.flow_ineq) return system.flow_ineq->contains(x, u_const, delta);
    return system.in_flow_closure(x, u_const);
  };

  std::vector<ArcSample> states;
  states.push_back({0.0, x0});
  double t = 0.0;
  Eigen::VectorXd x = x0;

  while (t < duration) {
    const double h = std::min(cfg.step_size, duration - t);
    Eigen::VectorXd x_next = rk4_step(system.flow_map, x, u_const, h);
    if (inside(x_next)) {
      t += h;
      x = std::move(x_next);
      states.push_back({t, x});
      continue;
    }

    // The step left the flow set: bisect the step fraction until the kept
    // endpoint is inside and within boundary_tol of the boundary.
    double lo = 0.0, hi = h;
    Eigen::VectorXd x_lo = x;
    for (int iter = 0; iter < 200; ++iter) {
      if (system.flow_ineq) {
        const double margin = system.flow_ineq->slack(delta) -
                              system.flow_ineq->h(x_lo, u_const);
        if (margin >= 0.0 && margin <= cfg.boundary_tol) break;
      } else if (hi - lo <= cfg.boundary_tol) {
        break;
      }
      const double mid = 0.5 * (lo + hi);
      Eigen::VectorXd x_mid = rk4_step(system.flow_map, x, u_const, mid);
      if (inside(x_mid)) {
        lo = mid;
        x_lo = std::move(x_mid);
      } else {
        hi = mid;
      }
    }
    if (lo > 0.0) states.push_back({t + lo, std::move(x_lo)});
    break;
  }
  return make_flow_pair(std::move(states), u_const);
}

Eigen::VectorXd apply_jump(const HybridSystemDef& system, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& u) {
  if (!system.jump_set(x, u))
    throw std::domain_error("apply_jump: (x, u) outside D");
  return system.jump_map(x, u);
}

bool intersects_unsafe(const SolutionPair& psi, const StateInputPredicate& unsafe) {
  if (!unsafe) return false;
  for (int j = 0; j <= psi.domain().max_jump(); ++j) {
    const auto& xs = psi.state_arc.interval(j);
    const auto& us = psi.input_arc.interval(j);
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (unsafe(xs[i].value, us[i].value)) return true;
  }
  return false;
}

PropagationResult new_state(const HybridSystemDef& system, const Eigen::VectorXd& x_cur,
                            double cost_cur, const InputLibrary& lib,
                            const StateInputPredicate& unsafe, const CostFunctional& cost,
                            const IntegratorConfig& cfg, Rng& rng,
                            double p_flow_at_intersection) {
  const bool in_flow = system.flow_proj.contains(x_cur);
  const bool in_jump = system.jump_proj.contains(x_cur);
  if (!in_flow && !in_jump)
    throw std::domain_error("new_state: state in neither closure(C') nor D'");

  const bool flow = in_flow && (!in_jump || rng.bernoulli(p_flow_at_intersection));

  if (flow) {
    auto [u, duration] = sample_flow_input(lib, rng);
    SolutionPair psi = integrate_flow(system, x_cur, u, duration, cfg);
    const bool unsafe_hit = intersects_unsafe(psi, unsafe);
    const double cost_new = cost_cur + cost.evaluate(psi.state_arc);
    Eigen::VectorXd x_new = psi.final_state();
    return {!unsafe_hit, std::move(psi), std::move(x_new), cost_new};
  }

  Eigen::VectorXd u = sample_jump_input(lib, rng);
  Eigen::VectorXd x_plus = apply_jump(system, x_cur, u);

  // One jump per call: domain {0} x {0, 1}.
  HybridTimeDomain dom({0.0, 0.0, 0.0});
  HybridArc state(dom, {{{0.0, x_cur}}, {{0.0, x_plus}}});
  HybridArc input(dom, {{{0.0, u}}, {{0.0, u}}});
  SolutionPair psi(std::move(state), std::move(input));

  const bool unsafe_hit = intersects_unsafe(psi, unsafe);
  const double cost_new = cost_cur + cost.evaluate(psi.state_arc);
  return {!unsafe_hit, std::move(psi), std::move(x_plus), cost_new};
}

}  // namespace hysst
