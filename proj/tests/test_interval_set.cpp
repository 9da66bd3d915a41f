#include "doctest.h"

#include <random>

#include "wglab/interval_set.hpp"

using namespace wglab;

namespace {

IntervalSet random_set(std::mt19937_64& rng, int pieces) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<IntervalSet::Interval> iv;
  for (int i = 0; i < pieces; ++i) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    iv.push_back({a, b});
  }
  return IntervalSet(std::move(iv));
}

} // namespace

TEST_CASE("construction normalizes overlapping and touching intervals") {
  IntervalSet s({{3.0, 4.0}, {0.0, 1.0}, {0.5, 2.0}, {2.0, 2.5}});
  CHECK(s.count() == 2);
  CHECK(s.length() == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(s.intervals()[0] == IntervalSet::Interval{0.0, 2.5});
  CHECK(s.contains(2.5));
  CHECK(s.contains(0.0));
  CHECK_FALSE(s.contains(2.75));
  CHECK(IntervalSet::empty().is_empty());
  CHECK(IntervalSet::empty().length() == 0.0);
}

TEST_CASE("add unions in place") {
  IntervalSet s = IntervalSet::single(0.0, 1.0);
  s.add(2.0, 3.0);
  CHECK(s.count() == 2);
  s.add(0.5, 2.5);
  CHECK(s.count() == 1);
  CHECK(s.length() == doctest::Approx(3.0));
}

TEST_CASE("set algebra identities on random sets") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    IntervalSet A = random_set(rng, 4), B = random_set(rng, 3);
    IntervalSet U = A.unite(B), I = A.intersect(B);
    // Inclusion-exclusion on lengths.
    CHECK(U.length() + I.length() == doctest::Approx(A.length() + B.length()).epsilon(1e-12));
    // Pointwise membership agrees with boolean logic.
    for (int p = 0; p < 50; ++p) {
      double x = u(rng);
      CHECK(U.contains(x) == (A.contains(x) || B.contains(x)));
      CHECK(I.contains(x) == (A.contains(x) && B.contains(x)));
    }
    // Complement splits the window length.
    IntervalSet Aw = A.intersect(IntervalSet::single(-10.0, 10.0));
    IntervalSet C = A.complement_within(-10.0, 10.0);
    CHECK(Aw.length() + C.length() == doctest::Approx(20.0).epsilon(1e-12));
    // A and its complement are disjoint up to endpoints.
    CHECK(A.intersect(C).length() == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("intersect with disjoint set is empty") {
  IntervalSet a = IntervalSet::single(0.0, 1.0);
  IntervalSet b = IntervalSet::single(2.0, 3.0);
  CHECK(a.intersect(b).is_empty());
  CHECK(a.unite(b).count() == 2);
}
