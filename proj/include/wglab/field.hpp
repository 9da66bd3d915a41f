#ifndef WGLAB_FIELD_HPP
#define WGLAB_FIELD_HPP

#include <vector>

#include "wglab/geometry.hpp"
#include "wglab/summation.hpp"

namespace wglab {

// Complex samples on the physical (x, y) grid, row-major (x outer, y inner).
struct PhysicalField {
  WaveguideGeometry geometry;
  std::vector<complexd> values;

  PhysicalField() = default;
  explicit PhysicalField(const WaveguideGeometry& g)
      : geometry(g), values(static_cast<size_t>(g.nx) * g.ny) {}

  complexd& at(int ix, int iy) { return values[static_cast<size_t>(ix) * geometry.ny + iy]; }
  const complexd& at(int ix, int iy) const {
    return values[static_cast<size_t>(ix) * geometry.ny + iy];
  }

  // ||f||_{L^2}^2 = dx*dy * sum |f|^2.
  double l2_norm_sq() const {
    double s = pairwise_sum_abs2(values);
    return geometry.dx() * geometry.dy() * s;
  }
  double l2_norm() const { return std::sqrt(l2_norm_sq()); }
};

// Complex Fourier coefficients indexed by (x-frequency slot, y-mode slot) in
// FFT natural order; use geometry.freq_point(ix, iy) for the frequency.
struct SpectralField {
  WaveguideGeometry geometry;
  std::vector<complexd> coeffs;

  SpectralField() = default;
  explicit SpectralField(const WaveguideGeometry& g)
      : geometry(g), coeffs(static_cast<size_t>(g.nx) * g.ny) {}

  complexd& at(int ix, int iy) { return coeffs[static_cast<size_t>(ix) * geometry.ny + iy]; }
  const complexd& at(int ix, int iy) const {
    return coeffs[static_cast<size_t>(ix) * geometry.ny + iy];
  }

  // Plancherel: ||f||_{L^2}^2 = int |fhat|^2 (dk)_lambda = (dmu/lambda) sum |c|^2.
  double l2_norm_sq() const {
    double s = pairwise_sum_abs2(coeffs);
    return geometry.dmu() / geometry.lambda * s;
  }
  double l2_norm() const { return std::sqrt(l2_norm_sq()); }
};

} // namespace wglab

#endif
