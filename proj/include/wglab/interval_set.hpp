#ifndef WGLAB_INTERVAL_SET_HPP
#define WGLAB_INTERVAL_SET_HPP

#include <utility>
#include <vector>

namespace wglab {

// Finite union of disjoint closed intervals [a, b] of reals, kept sorted and
// normalized (overlapping or touching inputs are merged).
class IntervalSet {
 public:
  using Interval = std::pair<double, double>;

  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> intervals); // normalizes

  static IntervalSet empty() { return IntervalSet(); }
  static IntervalSet single(double a, double b);

  void add(double a, double b); // union with [a, b]

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;
  // Complement within the window [lo, hi].
  IntervalSet complement_within(double lo, double hi) const;

  double length() const;
  bool contains(double x) const;
  bool is_empty() const { return iv_.empty(); }
  size_t count() const { return iv_.size(); }
  const std::vector<Interval>& intervals() const { return iv_; }

 private:
  void normalize();
  std::vector<Interval> iv_;
};

} // namespace wglab

#endif
