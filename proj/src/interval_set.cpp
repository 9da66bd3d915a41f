#include "wglab/interval_set.hpp"

#include <algorithm>

#include "wglab/summation.hpp"

namespace wglab {

IntervalSet::IntervalSet(std::vector<Interval> intervals) : iv_(std::move(intervals)) {
  normalize();
}

IntervalSet IntervalSet::single(double a, double b) {
  IntervalSet s;
  s.add(a, b);
  return s;
}

void IntervalSet::add(double a, double b) {
  if (b < a) return;
  iv_.emplace_back(a, b);
  normalize();
}

void IntervalSet::normalize() {
  if (iv_.empty()) return;
  std::sort(iv_.begin(), iv_.end());
  std::vector<Interval> out;
  out.reserve(iv_.size());
  for (const auto& [a, b] : iv_) {
    if (b < a) continue;
    if (!out.empty() && a <= out.back().second) {
      out.back().second = std::max(out.back().second, b);
    } else {
      out.emplace_back(a, b);
    }
  }
  iv_ = std::move(out);
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = iv_;
  all.insert(all.end(), other.iv_.begin(), other.iv_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  size_t i = 0, j = 0;
  while (i < iv_.size() && j < other.iv_.size()) {
    double lo = std::max(iv_[i].first, other.iv_[j].first);
    double hi = std::min(iv_[i].second, other.iv_[j].second);
    if (lo <= hi) out.emplace_back(lo, hi);
    if (iv_[i].second < other.iv_[j].second)
      ++i;
    else
      ++j;
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::complement_within(double lo, double hi) const {
  std::vector<Interval> out;
  double cursor = lo;
  for (const auto& [a, b] : iv_) {
    if (b < lo) continue;
    if (a > hi) break;
    if (a > cursor) out.emplace_back(cursor, std::min(a, hi));
    cursor = std::max(cursor, b);
    if (cursor >= hi) break;
  }
  if (cursor < hi) out.emplace_back(cursor, hi);
  return IntervalSet(std::move(out));
}

double IntervalSet::length() const {
  std::vector<double> lens(iv_.size());
  for (size_t i = 0; i < iv_.size(); ++i) lens[i] = iv_[i].second - iv_[i].first;
  return pairwise_sum(lens);
}

bool IntervalSet::contains(double x) const {
  auto it = std::upper_bound(iv_.begin(), iv_.end(), Interval{x, 1e308});
  if (it == iv_.begin()) return false;
  --it;
  return x >= it->first && x <= it->second;
}

} // namespace wglab
