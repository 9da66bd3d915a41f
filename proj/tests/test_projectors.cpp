#include "doctest.h"

#include <random>

#include "wglab/fourier.hpp"
#include "wglab/projectors.hpp"

using namespace wglab;

namespace {

SpectralField random_field(const WaveguideGeometry& g, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  SpectralField f(g);
  for (complexd& z : f.coeffs) z = complexd(gauss(rng), gauss(rng));
  return f;
}

double max_diff(const SpectralField& a, const SpectralField& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.coeffs.size(); ++i) d = std::max(d, std::abs(a.coeffs[i] - b.coeffs[i]));
  return d;
}

} // namespace

TEST_CASE("bump profile") {
  CHECK(bump(0.0) == 1.0);
  CHECK(bump(1.0) == 1.0);
  CHECK(bump(2.0) == 0.0);
  CHECK(bump(3.0) == 0.0);
  CHECK(bump(-1.2) == bump(1.2));
  CHECK(bump(1.5) == doctest::Approx(0.5).epsilon(1e-14));
  double prev = 1.0;
  for (int i = 1; i <= 100; ++i) {
    double v = bump(1.0 + i / 100.0);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("dyadic band validation") {
  CHECK_NOTHROW(DyadicBand{8.0}.validate());
  CHECK_THROWS(DyadicBand{12.0}.validate());
  CHECK_THROWS(DyadicBand{0.5}.validate());
}

TEST_CASE("sharp dyadic projections partition annuli") {
  WaveguideGeometry g{1.0, 8.0, 64, 16};
  SpectralField f = random_field(g, 5);
  SpectralField band = project_dyadic(f, DyadicBand{4.0}, true);
  SpectralField le4 = project_dyadic_le(f, DyadicBand{4.0}, true);
  SpectralField le2 = project_dyadic_le(f, DyadicBand{2.0}, true);
  SpectralField diff(g);
  for (size_t i = 0; i < f.coeffs.size(); ++i) diff.coeffs[i] = le4.coeffs[i] - le2.coeffs[i];
  CHECK(max_diff(band, diff) == 0.0);

  // Idempotence and orthogonality of distinct sharp bands.
  CHECK(max_diff(project_dyadic(band, DyadicBand{4.0}, true), band) == 0.0);
  SpectralField other = project_dyadic(band, DyadicBand{2.0}, true);
  for (const complexd& z : other.coeffs) CHECK(z == complexd(0.0));

  // Membership: band N holds exactly N/2 < |xi| <= N.
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) {
      double r = g.freq_point(ix, iy).norm();
      bool in = r > 2.0 && r <= 4.0;
      CHECK((band.at(ix, iy) != complexd(0.0)) == (in && f.at(ix, iy) != complexd(0.0)));
    }
}

TEST_CASE("smooth dyadic projections telescope to the top bump") {
  WaveguideGeometry g{1.0, 8.0, 64, 16};
  SpectralField f = random_field(g, 6);
  SpectralField sum = project_dyadic_le(f, DyadicBand{1.0}, false);
  for (double N = 2.0; N <= 8.0; N *= 2.0) {
    SpectralField piece = project_dyadic(f, DyadicBand{N}, false);
    for (size_t i = 0; i < sum.coeffs.size(); ++i) sum.coeffs[i] += piece.coeffs[i];
  }
  SpectralField top = project_dyadic_le(f, DyadicBand{8.0}, false);
  CHECK(max_diff(sum, top) < 1e-14);
}

TEST_CASE("project_dyadic rejects unresolvable bands") {
  WaveguideGeometry g{1.0, 8.0, 32, 8};
  SpectralField f = random_field(g, 7);
  double nyq = std::max(g.max_abs_mu(), g.max_abs_eta());
  DyadicBand big{std::exp2(std::ceil(std::log2(2.0 * nyq)) + 1.0)};
  CHECK_THROWS_AS(project_dyadic(f, big, true), std::out_of_range);
}

TEST_CASE("angular sector cover has overlap 2 or 3") {
  for (double theta : {2.0 * M_PI / 64.0, 2.0 * M_PI / 256.0}) {
    int L = static_cast<int>(std::ceil(2.0 * M_PI / theta));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    for (int trial = 0; trial < 500; ++trial) {
      double a = ang(rng);
      int hits = 0;
      for (int l = 0; l < L; ++l)
        if (AngularSector{theta, l}.contains(a)) ++hits;
      CHECK(hits >= 2);
      CHECK(hits <= 3);
    }
  }
}

TEST_CASE("sector projection restricts support and excludes zero frequency") {
  WaveguideGeometry g{1.0, 8.0, 64, 16};
  SpectralField f = random_field(g, 8);
  AngularSector s{0.25, 2};
  SpectralField pf = project_sector(f, s);
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) {
      FreqPoint xi = g.freq_point(ix, iy);
      bool in = xi.norm() > 0.0 && s.contains(xi);
      CHECK((pf.at(ix, iy) != complexd(0.0)) == in);
    }
  CHECK_THROWS(project_sector(f, AngularSector{1.5, 0}));
}

TEST_CASE("cube projection") {
  WaveguideGeometry g{1.0, 8.0, 64, 16};
  SpectralField f = random_field(g, 10);
  FreqPoint center{0.5, 1.0};
  SpectralField pf = cube_project(f, center, 1.0);
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) {
      FreqPoint xi = g.freq_point(ix, iy);
      bool in = std::abs(xi.mu - center.mu) <= 0.5 && std::abs(xi.eta - center.eta) <= 0.5;
      CHECK((pf.at(ix, iy) != complexd(0.0)) == in);
    }
  CHECK_THROWS(cube_project(f, center, 0.5 * g.dmu()));
}

TEST_CASE("pair constraint indicators") {
  PairConstraint c;
  CHECK_FALSE(c.active());
  CHECK(c.admits({1.0, 0.0}, {1.0, 0.0}));

  c.gap_M = 2.0;
  c.gap_kind = GapKind::XDiff;
  CHECK(c.active());
  CHECK_FALSE(c.admits({1.0, 0.0}, {2.5, 0.0}));
  CHECK(c.admits({1.0, 0.0}, {3.5, 0.0}));

  c.gap_kind = GapKind::XSum;
  CHECK_FALSE(c.admits({1.0, 0.0}, {-2.0, 0.0}));
  CHECK(c.admits({1.0, 0.0}, {2.0, 0.0}));

  PairConstraint a;
  a.angle_theta = 0.1;
  CHECK(a.admits({1.0, 0.0}, {0.0, 5.0}));        // orthogonal
  CHECK_FALSE(a.admits({1.0, 0.0}, {5.0, 0.0}));  // parallel
  CHECK_FALSE(a.admits({0.0, 0.0}, {1.0, 0.0}));  // zero vector rejected
}
