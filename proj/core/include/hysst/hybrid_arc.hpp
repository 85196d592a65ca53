#pragma once

#include <Eigen/Core>
#include <vector>

#include "hysst/hybrid_time.hpp"

namespace hysst {

/// One recorded point of an arc: the flow time t within its interval and the
/// vector value there. The jump index is implied by the interval the sample
/// is attached to.
struct ArcSample {
  double t = 0.0;
  Eigen::VectorXd value;

  friend bool operator==(const ArcSample& a, const ArcSample& b) {
    return a.t == b.t && a.value == b.value;
  }
};

/// A sampled function on a hybrid time domain. Samples are stored per
/// interval, in strictly increasing time order; the arc is a polyline record
/// of integration output, not a symbolic function.
class HybridArc {
 public:
  /// Validates: one sample list per interval, each nonempty with strictly
  /// increasing times inside the interval, uniform value dimension, and the
  /// very first sample at (0, 0). Throws std::invalid_argument otherwise.
  HybridArc(HybridTimeDomain domain, std::vector<std::vector<ArcSample>> samples);

  /// The constant single-point arc with domain {(0, 0)}.
  static HybridArc point(const Eigen::VectorXd& value);

  const HybridTimeDomain& domain() const { return domain_; }
  const std::vector<std::vector<ArcSample>>& samples() const { return samples_; }
  const std::vector<ArcSample>& interval(int j) const { return samples_[j]; }

  int dim() const { return static_cast<int>(samples_.front().front().value.size()); }
  std::size_t sample_count() const;

  const Eigen::VectorXd& initial_value() const { return samples_.front().front().value; }
  const Eigen::VectorXd& final_value() const { return samples_.back().back().value; }

  /// True when the last interval's last sample sits exactly at the domain
  /// maximum, so that the arc has a recorded value at max dom.
  bool has_sample_at_max() const;

  /// Index of the sample at time t in interval j, or -1 when no sample
  /// matches exactly.
  int sample_index_at(const HybridTime& p) const;

  friend bool operator==(const HybridArc& a, const HybridArc& b) {
    return a.domain_ == b.domain_ && a.samples_ == b.samples_;
  }

 private:
  HybridTimeDomain domain_;
  std::vector<std::vector<ArcSample>> samples_;
};

/// Appends `second` to `first`: the result lives on
/// dom(first) U (dom(second) + max dom(first)), takes first's values strictly
/// before the splice point and the shifted second's values from it on.
///
/// Requires matching dimensions, a recorded sample at max dom(first), and
/// |second(0,0) - first(max)| <= endpoint_tol. Throws std::invalid_argument
/// on violation.
HybridArc concatenate(const HybridArc& first, const HybridArc& second,
                      double endpoint_tol = 1e-9);

/// Cuts the window between `from` and `to` out of the arc and translates it
/// back to the origin: result(t, j) = arc(t + from.t, j + from.j).
///
/// Both cut points must lie in the domain, be ordered componentwise, and
/// coincide with recorded samples so the result is again a valid sampled arc.
HybridArc truncate(const HybridArc& arc, const HybridTime& from, const HybridTime& to);

/// (tau, eps)-closeness evaluated over recorded samples: every sample of one
/// arc with t + j <= tau must have a sample of the other arc at the same jump
/// index within eps, and vice versa.
bool is_close(const HybridArc& a, const HybridArc& b, double tau, double eps);

/// A state arc and an input arc on one shared hybrid time domain. Whether the
/// pair actually solves a given system is checked by validate_solution.
struct SolutionPair {
  HybridArc state_arc;
  HybridArc input_arc;

  SolutionPair(HybridArc state, HybridArc input);

  const HybridTimeDomain& domain() const { return state_arc.domain(); }
  const Eigen::VectorXd& initial_state() const { return state_arc.initial_value(); }
  const Eigen::VectorXd& final_state() const { return state_arc.final_value(); }

  friend bool operator==(const SolutionPair& a, const SolutionPair& b) {
    return a.state_arc == b.state_arc && a.input_arc == b.input_arc;
  }
};

SolutionPair concatenate(const SolutionPair& first, const SolutionPair& second,
                         double endpoint_tol = 1e-9);

SolutionPair truncate(const SolutionPair& pair, const HybridTime& from,
                      const HybridTime& to);

}  // namespace hysst
