#ifndef WGLAB_GEOMETRY_HPP
#define WGLAB_GEOMETRY_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace wglab {

using complexd = std::complex<double>;

// A frequency point xi = (mu, eta) on R x (1/lambda)Z.  eta is stored as a
// real but must sit on the lattice k/lambda for integer k.
struct FreqPoint {
  double mu = 0.0;
  double eta = 0.0;

  double norm2() const { return mu * mu + eta * eta; }
  double norm() const { return std::sqrt(norm2()); }
  // Angle in [0, 2*pi).
  double arg() const {
    double a = std::atan2(eta, mu);
    if (a < 0.0) a += 2.0 * M_PI;
    return a;
  }
  FreqPoint operator+(const FreqPoint& o) const { return {mu + o.mu, eta + o.eta}; }
  FreqPoint operator-(const FreqPoint& o) const { return {mu - o.mu, eta - o.eta}; }
  FreqPoint operator-() const { return {-mu, -eta}; }
  double dot(const FreqPoint& o) const { return mu * o.mu + eta * o.eta; }
};

// Discretization of the cylinder R x T_lambda.  The unbounded x direction is
// periodized to [-L, L); the circle has circumference lambda, so its
// frequencies are eta = k/lambda.  x-frequencies live on the lattice
// mu = j * dmu with dmu = 1/(2L).
struct WaveguideGeometry {
  double lambda = 1.0;       // circle circumference (>= 1)
  double x_half_length = 8.0; // L; box is [-L, L)
  int nx = 64;                // power of two
  int ny = 8;                 // even

  void validate() const {
    if (!(lambda > 0.0)) throw std::invalid_argument("geometry: lambda must be positive");
    if (!(x_half_length >= 8.0 * lambda))
      throw std::invalid_argument("geometry: x_half_length must be >= 8*lambda");
    if (nx <= 0 || (nx & (nx - 1)) != 0)
      throw std::invalid_argument("geometry: nx must be a power of two");
    if (ny <= 0 || ny % 2 != 0) throw std::invalid_argument("geometry: ny must be even");
  }

  double dx() const { return 2.0 * x_half_length / nx; }
  double dy() const { return lambda / ny; }
  double dmu() const { return 1.0 / (2.0 * x_half_length); }

  // Physical grid coordinates.
  double x(int ix) const { return -x_half_length + ix * dx(); }
  double y(int iy) const { return iy * dy(); }

  // Signed integer frequency index for FFT-ordered storage slot i in [0, n).
  static int signed_index(int i, int n) { return (i <= n / 2 - 1) ? i : i - n; }

  double mu(int ix) const { return signed_index(ix, nx) * dmu(); }
  int k(int iy) const { return signed_index(iy, ny); }
  double eta(int iy) const { return k(iy) / lambda; }
  FreqPoint freq_point(int ix, int iy) const { return {mu(ix), eta(iy)}; }

  double max_abs_mu() const { return (nx / 2) * dmu(); }
  double max_abs_eta() const { return (ny / 2) / lambda; }

  bool same_grid(const WaveguideGeometry& o) const {
    return lambda == o.lambda && x_half_length == o.x_half_length && nx == o.nx && ny == o.ny;
  }
};

} // namespace wglab

#endif
