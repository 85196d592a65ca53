#include "hysst/hybrid_arc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace hysst {

HybridArc::HybridArc(HybridTimeDomain domain, std::vector<std::vector<ArcSample>> samples)
    : domain_(std::move(domain)), samples_(std::move(samples)) {
  if (samples_.size() != domain_.num_intervals())
    throw std::invalid_argument("arc needs one sample list per domain interval");

  Eigen::Index dim = -1;
  for (std::size_t j = 0; j < samples_.size(); ++j) {
    const auto& list = samples_[j];
    if (list.empty())
      throw std::invalid_argument("arc interval without samples");
    const double lo = domain_.interval_start(static_cast<int>(j));
    const double hi = domain_.interval_end(static_cast<int>(j));
    double prev = lo;
    bool first = true;
    for (const auto& s : list) {
      if (s.t < lo || s.t > hi)
        throw std::invalid_argument("arc sample outside its interval");
      if (!first && s.t <= prev)
        throw std::invalid_argument("arc sample times must strictly increase per interval");
      if (dim < 0) dim = s.value.size();
      if (s.value.size() != dim)
        throw std::invalid_argument("arc sample dimension mismatch");
      prev = s.t;
      first = false;
    }
  }
  if (samples_.front().front().t != 0.0)
    throw std::invalid_argument("arc must have its first sample at (0, 0)");
}

HybridArc HybridArc::point(const Eigen::VectorXd& value) {
  return HybridArc(HybridTimeDomain(), {{ArcSample{0.0, value}}});
}

std::size_t HybridArc::sample_count() const {
  std::size_t n = 0;
  for (const auto& list : samples_) n += list.size();
  return n;
}

bool HybridArc::has_sample_at_max() const {
  return samples_.back().back().t == domain_.max().t;
}

int HybridArc::sample_index_at(const HybridTime& p) const {
  if (p.j < 0 || p.j > domain_.max_jump()) return -1;
  const auto& list = samples_[p.j];
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i].t == p.t) return static_cast<int>(i);
  return -1;
}

HybridArc concatenate(const HybridArc& first, const HybridArc& second,
                      double endpoint_tol) {
  if (first.dim() != second.dim())
    throw std::invalid_argument("concatenate: dimension mismatch");
  if (!first.has_sample_at_max())
    throw std::invalid_argument("concatenate: first arc has no sample at max dom");
  const HybridTime shift = first.domain().max();
  if ((second.initial_value() - first.final_value()).norm() > endpoint_tol)
    throw std::invalid_argument("concatenate: endpoint mismatch beyond tolerance");

  // Second's interval 0 merges into first's last interval, so first's final
  // boundary is replaced by the shifted tail of second's boundary sequence.
  std::vector<double> boundaries = first.domain().boundaries();
  boundaries.pop_back();
  const auto& sb = second.domain().boundaries();
  for (std::size_t i = 1; i < sb.size(); ++i) boundaries.push_back(sb[i] + shift.t);

  std::vector<std::vector<ArcSample>> samples = first.samples();
  // The value at the splice point comes from second(0, 0).
  samples.back().pop_back();
  for (const auto& s : second.interval(0))
    samples.back().push_back({s.t + shift.t, s.value});
  for (int j = 1; j <= second.domain().max_jump(); ++j) {
    std::vector<ArcSample> shifted;
    shifted.reserve(second.interval(j).size());
    for (const auto& s : second.interval(j)) shifted.push_back({s.t + shift.t, s.value});
    samples.push_back(std::move(shifted));
  }
  return HybridArc(HybridTimeDomain(std::move(boundaries)), std::move(samples));
}

HybridArc truncate(const HybridArc& arc, const HybridTime& from, const HybridTime& to) {
  const auto& dom = arc.domain();
  if (!dom.contains(from) || !dom.contains(to))
    throw std::invalid_argument("truncate: cut point outside domain");
  if (from.t > to.t || from.j > to.j)
    throw std::invalid_argument("truncate: cut points out of order");
  if (arc.sample_index_at(from) < 0 || arc.sample_index_at(to) < 0)
    throw std::invalid_argument("truncate: cut points must be recorded samples");

  std::vector<double> boundaries;
  boundaries.reserve(to.j - from.j + 2);
  std::vector<std::vector<ArcSample>> samples;
  for (int j = from.j; j <= to.j; ++j) {
    const double lo = std::max(dom.interval_start(j), from.t);
    const double hi = std::min(dom.interval_end(j), to.t);
    if (boundaries.empty()) boundaries.push_back(lo - from.t);
    boundaries.push_back(hi - from.t);
    std::vector<ArcSample> kept;
    for (const auto& s : arc.interval(j))
      if (s.t >= lo && s.t <= hi) kept.push_back({s.t - from.t, s.value});
    samples.push_back(std::move(kept));
  }
  return HybridArc(HybridTimeDomain(std::move(boundaries)), std::move(samples));
}

bool is_close(const HybridArc& a, const HybridArc& b, double tau, double eps) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("is_close: dimension mismatch");

  auto one_sided = [tau, eps](const HybridArc& p, const HybridArc& q) {
    for (int j = 0; j <= p.domain().max_jump(); ++j) {
      for (const auto& s : p.interval(j)) {
        if (s.t + j > tau) continue;
        if (j > q.domain().max_jump()) return false;
        bool matched = false;
        for (const auto& r : q.interval(j)) {
          if ((s.value - r.value).norm() < eps) {
            matched = true;
            break;
          }
        }
        if (!matched) return false;
      }
    }
    return true;
  };
  return one_sided(a, b) && one_sided(b, a);
}

SolutionPair::SolutionPair(HybridArc state, HybridArc input)
    : state_arc(std::move(state)), input_arc(std::move(input)) {
  if (!(state_arc.domain() == input_arc.domain()))
    throw std::invalid_argument("solution pair: state and input domains differ");
}

SolutionPair concatenate(const SolutionPair& first, const SolutionPair& second,
                         double endpoint_tol) {
  // Endpoint continuity is a condition on the state trajectory; inputs may
  // switch freely across the splice.
  HybridArc state = concatenate(first.state_arc, second.state_arc, endpoint_tol);
  constexpr double kAnyGap = std::numeric_limits<double>::infinity();
  HybridArc input = concatenate(first.input_arc, second.input_arc, kAnyGap);
  return SolutionPair(std::move(state), std::move(input));
}

SolutionPair truncate(const SolutionPair& pair, const HybridTime& from,
                      const HybridTime& to) {
  return SolutionPair(truncate(pair.state_arc, from, to),
                      truncate(pair.input_arc, from, to));
}

}  // namespace hysst
