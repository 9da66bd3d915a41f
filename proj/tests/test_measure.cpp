#include "doctest.h"

#include <random>

#include "wglab/measure.hpp"

using namespace wglab;

namespace {

// Random query with tau centered on a probe point of the resonance surface so
// a nontrivial fraction of the draws have nonempty slices.
MeasureQuery random_query(MeasureVariant variant, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  MeasureQuery q;
  q.variant = variant;
  q.lambda = std::exp2(static_cast<int>(u01(rng) * 3.0));            // 1, 2, 4
  q.N1 = DyadicBand{std::exp2(3 + static_cast<int>(u01(rng) * 2))};  // 8, 16
  q.N2 = DyadicBand{std::min(q.N1.N, std::exp2(2 + static_cast<int>(u01(rng) * 2)))};
  q.M = 1.0 + u01(rng) * (q.N1.N / 2.0);
  q.theta = std::exp2(-3 - static_cast<int>(u01(rng) * 3));

  if (variant == MeasureVariant::M_TILDE_ONE_ANGLE) {
    double mu = (u01(rng) < 0.5 ? -1.0 : 1.0) * (q.M + u01(rng) * q.M);
    q.xi = {mu, std::floor(u01(rng) * q.N1.N * q.lambda) / q.lambda};
  } else {
    double ang = 2.0 * M_PI * u01(rng);
    double r = 1.5 * q.N1.N;
    q.xi = {r * std::cos(ang), std::round(r * std::sin(ang) * q.lambda) / q.lambda};
  }
  double pang = 2.0 * M_PI * u01(rng);
  double pr = 1.5 * q.N2.N;
  double k2 = std::round(pr * std::sin(pang) * q.lambda);
  FreqPoint xi2{pr * std::cos(pang), k2 / q.lambda};
  FreqPoint d{q.xi.mu - xi2.mu, q.xi.eta - xi2.eta};
  q.tau = xi2.norm2() + d.norm2() + (u01(rng) - 0.5);
  if (variant != MeasureVariant::M1_NO_ANGLE) {
    int l1 = static_cast<int>(std::round(xi2.arg() / q.theta));
    int l2 = static_cast<int>(std::round(d.arg() / q.theta));
    q.sectors = {l1, l2};
  }
  return q;
}

} // namespace

TEST_CASE("query validation") {
  MeasureQuery q;
  q.N1 = DyadicBand{16.0};
  q.N2 = DyadicBand{4.0};
  CHECK_NOTHROW(q.validate());
  q.lambda = 0.5;
  CHECK_THROWS(q.validate());
  q.lambda = 1.0;
  q.theta = 1.5;
  CHECK_THROWS(q.validate());
  q.theta = 0.125;
  q.N2 = DyadicBand{32.0};  // N2 > N1
  CHECK_THROWS(q.validate());
}

TEST_CASE("tau_k sequence matches the closed form") {
  MeasureQuery q;
  q.tau = 37.0;
  q.xi = {2.0, 1.5};
  q.lambda = 2.0;
  auto seq = tau_k_sequence(q, -3, 3);
  REQUIRE(seq.size() == 7);
  for (int k = -3; k <= 3; ++k) {
    double eta2 = k / q.lambda;
    double want = q.tau / 2.0 - (eta2 - q.xi.eta / 2.0) * (eta2 - q.xi.eta / 2.0) -
                  q.xi.norm2() / 4.0;
    CHECK(seq[k + 3] == doctest::Approx(want).epsilon(1e-14));
  }
}

TEST_CASE("annulus window radii bracket the resonance shell") {
  MeasureQuery q;
  q.xi = {3.0, 1.0};
  q.tau = 120.0;
  AnnulusParams a = annulus_params(q);
  REQUIRE(a.valid);
  CHECK(a.r == doctest::Approx(std::sqrt(2.0 * q.tau - q.xi.norm2()) / 2.0));
  CHECK(a.inner < a.r);
  CHECK(a.outer > a.r);
  // outer^2 - inner^2 = 2 exactly: the +/-1 resonance window in tau.
  CHECK(a.outer * a.outer - a.inner * a.inner == doctest::Approx(2.0).epsilon(1e-12));
  // Window width * radius stays O(1).
  CHECK(a.width * a.r < 1.01);
  q.tau = -5.0;
  CHECK_FALSE(annulus_params(q).valid);
}

TEST_CASE("per-line slices agree with the exact membership oracle") {
  std::mt19937_64 rng(421);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int nonempty = 0;
  for (int trial = 0; trial < 150; ++trial) {
    auto variant = static_cast<MeasureVariant>(trial % 3);
    MeasureQuery q = random_query(variant, rng);
    auto [klo, khi] = line_range(q);
    for (int k = klo; k <= khi; k += std::max(1, (khi - klo) / 25)) {
      IntervalSet s = per_line_slice(q, k);
      if (!s.is_empty()) ++nonempty;
      for (const auto& [a, b] : s.intervals()) {
        if (b - a < 1e-9) continue;
        // Interior points must satisfy every constraint exactly.
        for (double frac : {0.25, 0.5, 0.75})
          CHECK(admits_point(q, k, a + frac * (b - a)));
        // Points just outside must not.
        CHECK_FALSE(admits_point(q, k, a - 1e-6 * (1.0 + std::abs(a))));
        CHECK_FALSE(admits_point(q, k, b + 1e-6 * (1.0 + std::abs(b))));
      }
    }
  }
  CHECK(nonempty > 50);  // the query family is not degenerate
}

TEST_CASE("interval measure matches the Monte-Carlo oracle within 3 sigma") {
  std::mt19937_64 rng(902);
  int tested = 0, misses = 0;
  for (int trial = 0; trial < 100 && tested < 30; ++trial) {
    auto variant = static_cast<MeasureVariant>(trial % 3);
    MeasureQuery q = random_query(variant, rng);
    double exact = measure(q);
    if (exact == 0.0) continue;
    ++tested;
    auto [est, se] = mc_measure(q, 150000, 1000 + trial);
    if (std::abs(est - exact) > 3.0 * se + 1e-12) ++misses;
  }
  CHECK(tested >= 20);
  CHECK(misses <= 2);  // ~0.3% per-test miss rate; allow slack
}

TEST_CASE("measure stays below a fixed multiple of the variant bound") {
  std::mt19937_64 rng(311);
  for (int trial = 0; trial < 120; ++trial) {
    auto variant = static_cast<MeasureVariant>(trial % 3);
    MeasureQuery q = random_query(variant, rng);
    double m = measure(q), b = measure_bound(q);
    CHECK(b > 0.0);
    CHECK(m <= 40.0 * b);  // regression constant, frozen
  }
}

TEST_CASE("empty cases") {
  MeasureQuery q;
  q.N1 = DyadicBand{16.0};
  q.N2 = DyadicBand{4.0};
  q.tau = -100.0;  // below the dispersion surface: no resonance
  q.xi = {24.0, 0.0};
  CHECK(measure(q) == 0.0);
  CHECK(nonempty_line_count(q) == 0);
}
