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

} // namespace

TEST_CASE("geometry lattice accessors") {
  WaveguideGeometry g{2.0, 16.0, 64, 8};
  g.validate();
  CHECK(g.dx() == doctest::Approx(0.5));
  CHECK(g.dy() == doctest::Approx(0.25));
  CHECK(g.dmu() == doctest::Approx(1.0 / 32.0));
  CHECK(g.x(0) == doctest::Approx(-16.0));
  CHECK(g.y(0) == doctest::Approx(0.0));
  CHECK(WaveguideGeometry::signed_index(0, 8) == 0);
  CHECK(WaveguideGeometry::signed_index(3, 8) == 3);
  CHECK(WaveguideGeometry::signed_index(4, 8) == -4);
  CHECK(WaveguideGeometry::signed_index(7, 8) == -1);
  CHECK(g.eta(7) == doctest::Approx(-0.5));
  CHECK_THROWS(WaveguideGeometry{1.0, 4.0, 64, 8}.validate());  // L < 8*lambda
  CHECK_THROWS(WaveguideGeometry{1.0, 8.0, 48, 8}.validate());  // nx not a power of two
  CHECK_THROWS(WaveguideGeometry{1.0, 8.0, 64, 7}.validate());  // ny odd
}

TEST_CASE("plancherel is exact on the grid") {
  for (auto [lam, L, nx, ny] : {std::tuple{1.0, 8.0, 64, 8}, std::tuple{3.0, 24.0, 128, 16}}) {
    WaveguideGeometry g{lam, L, nx, ny};
    SpectralField f = random_field(g, 11);
    PhysicalField p = inverse_transform(f);
    CHECK(p.l2_norm_sq() == doctest::Approx(f.l2_norm_sq()).epsilon(1e-12));
    SpectralField f2 = forward_transform(p);
    double err = 0.0;
    for (size_t i = 0; i < f.coeffs.size(); ++i)
      err = std::max(err, std::abs(f.coeffs[i] - f2.coeffs[i]));
    CHECK(err < 1e-12);
  }
}

TEST_CASE("plane wave transforms to a single lattice coefficient") {
  WaveguideGeometry g{2.0, 16.0, 64, 8};
  const int ix0 = 5, iy0 = 3;
  FreqPoint xi0 = g.freq_point(ix0, iy0);
  PhysicalField p(g);
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy)
      p.at(ix, iy) = std::polar(1.0, 2.0 * M_PI * (g.x(ix) * xi0.mu + g.y(iy) * xi0.eta));
  SpectralField f = forward_transform(p);
  // fhat(xi0) = dx*dy*nx*ny = 2L*lambda; all other coefficients vanish.
  CHECK(std::abs(f.at(ix0, iy0) - complexd(2.0 * g.x_half_length * g.lambda)) < 1e-9);
  f.at(ix0, iy0) = 0.0;
  double rest = 0.0;
  for (const complexd& z : f.coeffs) rest = std::max(rest, std::abs(z));
  CHECK(rest < 1e-9);
}

TEST_CASE("lambda measure integral of ones") {
  WaveguideGeometry g{2.0, 16.0, 64, 8};
  std::vector<double> ones(static_cast<size_t>(g.nx) * g.ny, 1.0);
  CHECK(lambda_measure_integrate(g, ones) ==
        doctest::Approx(g.nx * g.dmu() * g.ny / g.lambda).epsilon(1e-14));
}

TEST_CASE("propagator: unitary, group law, inverse, single-mode formula") {
  WaveguideGeometry g{1.0, 8.0, 64, 8};
  SpectralField f = random_field(g, 23);
  SpectralField a = propagate(f, 0.4);
  CHECK(a.l2_norm_sq() == doctest::Approx(f.l2_norm_sq()).epsilon(1e-13));
  SpectralField b = propagate(propagate(f, 0.15), 0.25);
  SpectralField c = propagate(a, -0.4);
  double gl = 0.0, inv = 0.0;
  for (size_t i = 0; i < f.coeffs.size(); ++i) {
    gl = std::max(gl, std::abs(a.coeffs[i] - b.coeffs[i]));
    inv = std::max(inv, std::abs(c.coeffs[i] - f.coeffs[i]));
  }
  CHECK(gl < 1e-12);
  CHECK(inv < 1e-12);

  FreqPoint xi = g.freq_point(3, 2);
  CHECK(propagator_phase(xi, 0.7) == doctest::Approx(-4.0 * M_PI * M_PI * xi.norm2() * 0.7));
}

TEST_CASE("simpson quadrature") {
  auto cubic = [](double t) { return t * t * t; };
  CHECK(simpson_integrate(cubic, 0.0, 1.0, 16) == doctest::Approx(0.25).epsilon(1e-14));
  auto osc = [](double t) { return std::cos(3.0 * t); };
  CHECK(simpson_integrate(osc, 0.0, 2.0, 200) ==
        doctest::Approx(std::sin(6.0) / 3.0).epsilon(1e-9));
}

TEST_CASE("spacetime L2 norm of a free solution is sqrt(t1-t0)*||f||") {
  WaveguideGeometry g{1.0, 8.0, 32, 8};
  SpectralField f = random_field(g, 31);
  auto u = [&](double t) { return inverse_transform(propagate(f, t)); };
  double got = l2_spacetime_norm(u, 0.0, 0.5, 16);
  CHECK(got == doctest::Approx(std::sqrt(0.5) * f.l2_norm()).epsilon(1e-12));
  CHECK_THROWS(l2_spacetime_norm(u, 0.0, 0.5, 8));
  CHECK_THROWS(l2_spacetime_norm(u, 0.5, 0.5, 16));
}
