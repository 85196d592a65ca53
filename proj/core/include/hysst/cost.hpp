#pragma once

#include <functional>

#include "hysst/hybrid_arc.hpp"

namespace hysst {

/// Cost functional over state arcs. `incremental` asserts additivity under
/// concatenation, c(a|b) = c(a) + c(b), which the planner relies on when it
/// accumulates vertex costs edge by edge.
struct CostFunctional {
  std::function<double(const HybridArc&)> evaluate;
  bool incremental = true;
};

/// Elapsed hybrid time of an arc: T + J at max dom. Evaluated directly on the
/// domain; equal to the auxiliary-clock construction that tracks (tau, k) in
/// extra state components.
inline double hybrid_time_cost(const HybridArc& arc) {
  const HybridTime m = arc.domain().max();
  return m.t + m.j;
}

inline CostFunctional hybrid_time_cost_functional() {
  return {[](const HybridArc& arc) { return hybrid_time_cost(arc); }, true};
}

}  // namespace hysst
