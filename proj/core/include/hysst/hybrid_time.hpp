#pragma once

#include <cstddef>
#include <vector>

namespace hysst {

/// A point (t, j) in hybrid time: t seconds of flow, j jumps taken so far.
struct HybridTime {
  double t = 0.0;
  int j = 0;

  friend bool operator==(const HybridTime&, const HybridTime&) = default;
};

inline HybridTime operator+(const HybridTime& a, const HybridTime& b) {
  return {a.t + b.t, a.j + b.j};
}

/// A compact hybrid time domain: the union of intervals [t_j, t_{j+1}] x {j}
/// for j = 0..J, stored through its boundary sequence
/// 0 = t_0 <= t_1 <= ... <= t_{J+1} = T.
///
/// Intervals may be single points (t_j == t_{j+1}); the default-constructed
/// domain is the single point {(0, 0)}.
class HybridTimeDomain {
 public:
  HybridTimeDomain() : boundaries_{0.0, 0.0} {}

  /// Throws std::invalid_argument unless boundaries has at least two entries,
  /// starts at 0 and is nondecreasing.
  explicit HybridTimeDomain(std::vector<double> boundaries);

  /// The domain [0, t_end] x {0}.
  static HybridTimeDomain flow_interval(double t_end);

  std::size_t num_intervals() const { return boundaries_.size() - 1; }
  int max_jump() const { return static_cast<int>(boundaries_.size()) - 2; }

  double interval_start(int j) const { return boundaries_[j]; }
  double interval_end(int j) const { return boundaries_[j + 1]; }

  /// The maximal element (T, J).
  HybridTime max() const { return {boundaries_.back(), max_jump()}; }

  bool contains(const HybridTime& p) const;

  const std::vector<double>& boundaries() const { return boundaries_; }

  friend bool operator==(const HybridTimeDomain&, const HybridTimeDomain&) = default;

 private:
  std::vector<double> boundaries_;
};

}  // namespace hysst
