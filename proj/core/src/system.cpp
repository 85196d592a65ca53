#include "hysst/system.hpp"

#include <cmath>
#include <stdexcept>

namespace hysst {

HybridSystemDef inflate(const HybridSystemDef& system, double delta_f) {
  if (delta_f <= 0.0)
    throw std::invalid_argument("inflate: delta_f must be positive");
  if (!system.flow_ineq || !system.jump_ineq)
    throw std::invalid_argument("inflate: system has no inflatable set descriptions");

  HybridSystemDef out = system;
  out.inflation = system.inflation + delta_f;
  const double delta = out.inflation;

  const InflatableInequality fc = *system.flow_ineq;
  const InflatableInequality jc = *system.jump_ineq;
  out.flow_set = [fc, delta](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return fc.contains(x, u, delta);
  };
  out.flow_set_closure = out.flow_set;
  out.jump_set = [jc, delta](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return jc.contains(x, u, delta);
  };

  // Projections already embed the source system's inflation level, so they
  // are shifted by the increment only.
  const ProjectionSet fp = system.flow_proj;
  out.flow_proj.contains_at = [fp, delta_f](const Eigen::VectorXd& x, double extra) {
    return fp.contains_at(x, delta_f + extra);
  };
  out.flow_proj.make_sampler = [fp, delta_f](double extra) {
    return fp.make_sampler(delta_f + extra);
  };
  const ProjectionSet jp = system.jump_proj;
  out.jump_proj.contains_at = [jp, delta_f](const Eigen::VectorXd& x, double extra) {
    return jp.contains_at(x, delta_f + extra);
  };
  out.jump_proj.make_sampler = [jp, delta_f](double extra) {
    return jp.make_sampler(delta_f + extra);
  };

  for (auto& interval : out.bounding_box) {
    interval[0] -= delta_f;
    interval[1] += delta_f;
  }
  return out;
}

namespace {

void flag(ValidationReport& report, const std::string& what) {
  report.ok = false;
  report.violations.push_back(what);
}

}  // namespace

ValidationReport validate_solution(const HybridSystemDef& system,
                                   const SolutionPair& psi, double tol) {
  ValidationReport report;
  const HybridArc& x = psi.state_arc;
  const HybridArc& u = psi.input_arc;
  const auto& dom = x.domain();

  if (x.dim() != system.state_dim || u.dim() != system.input_dim) {
    flag(report, "dimension mismatch against system definition");
    return report;
  }

  // Initial point in closure(C) u D.
  {
    const auto& x0 = x.initial_value();
    const auto& u0 = u.initial_value();
    if (!system.in_flow_closure(x0, u0) && !system.jump_set(x0, u0))
      flag(report, "initial point outside closure(C) u D");
  }

  for (int j = 0; j <= dom.max_jump(); ++j) {
    const auto& xs = x.interval(j);
    const auto& us = u.interval(j);
    if (xs.size() != us.size()) {
      flag(report, "state/input sample misalignment in interval " + std::to_string(j));
      continue;
    }
    const double lo = dom.interval_start(j);
    const double hi = dom.interval_end(j);

    for (std::size_t i = 0; i < xs.size(); ++i) {
      const bool interior = xs[i].t > lo && xs[i].t < hi;
      if (interior && !system.flow_set(xs[i].value, us[i].value)) {
        flag(report, "flow sample outside C at (" + std::to_string(xs[i].t) + ", " +
                         std::to_string(j) + ")");
        break;
      }
    }

    // Finite-difference check of the flow map, midpoint rule.
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double dt = xs[i + 1].t - xs[i].t;
      const Eigen::VectorXd fd = (xs[i + 1].value - xs[i].value) / dt;
      const Eigen::VectorXd mid = 0.5 * (xs[i].value + xs[i + 1].value);
      const Eigen::VectorXd f = system.flow_map(mid, us[i].value);
      if ((fd - f).lpNorm<Eigen::Infinity>() > tol) {
        flag(report, "flow-map mismatch in interval " + std::to_string(j) +
                         " near t = " + std::to_string(xs[i].t));
        break;
      }
    }

    // Jump conditions between interval j and j + 1.
    if (j < dom.max_jump()) {
      const ArcSample& x_pre = xs.back();
      const ArcSample& u_pre = us.back();
      const ArcSample& x_post = x.interval(j + 1).front();
      if (!system.jump_set(x_pre.value, u_pre.value))
        flag(report, "pre-jump state outside D at jump " + std::to_string(j));
      else {
        const Eigen::VectorXd g = system.jump_map(x_pre.value, u_pre.value);
        if ((x_post.value - g).lpNorm<Eigen::Infinity>() > tol)
          flag(report, "post-jump state does not match g at jump " + std::to_string(j));
      }
    }
  }
  return report;
}

}  // namespace hysst
