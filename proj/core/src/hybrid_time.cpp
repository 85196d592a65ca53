#include "hysst/hybrid_time.hpp"

#include <stdexcept>
#include <utility>

namespace hysst {

HybridTimeDomain::HybridTimeDomain(std::vector<double> boundaries)
    : boundaries_(std::move(boundaries)) {
  if (boundaries_.size() < 2)
    throw std::invalid_argument("hybrid time domain needs at least two boundaries");
  if (boundaries_.front() != 0.0)
    throw std::invalid_argument("hybrid time domain must start at t = 0");
  for (std::size_t i = 1; i < boundaries_.size(); ++i) {
    if (boundaries_[i] < boundaries_[i - 1])
      throw std::invalid_argument("hybrid time domain boundaries must be nondecreasing");
  }
}

HybridTimeDomain HybridTimeDomain::flow_interval(double t_end) {
  return HybridTimeDomain({0.0, t_end});
}

bool HybridTimeDomain::contains(const HybridTime& p) const {
  if (p.j < 0 || p.j > max_jump()) return false;
  return interval_start(p.j) <= p.t && p.t <= interval_end(p.j);
}

}  // namespace hysst
