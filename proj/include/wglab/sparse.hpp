#ifndef WGLAB_SPARSE_HPP
#define WGLAB_SPARSE_HPP

#include <cstdint>
#include <random>

#include "wglab/field.hpp"
#include "wglab/projectors.hpp"

namespace wglab {

// Sparse spectral representation: a list of occupied lattice modes
// (mu = jmu * dmu, eta = k / lambda) with complex coefficients.  Used by the
// estimate harness so band-localized data at large (lambda, N) never needs a
// dense grid.
struct SparseMode {
  int jmu = 0;
  int k = 0;
  complexd c;
};

struct SparseField {
  double lambda = 1.0;
  double dmu = 1.0 / 16.0;
  std::vector<SparseMode> modes;

  FreqPoint freq(const SparseMode& m) const { return {m.jmu * dmu, m.k / lambda}; }
  double l2_norm_sq() const;
  double l2_norm() const { return std::sqrt(l2_norm_sq()); }
};

// One output-frequency term of a product of free solutions:
//   amp * e^{-4*pi^2*i*sigma*t} at output lattice slot okey.
struct ProductTerm {
  int64_t okey = 0;
  double sigma = 0.0;
  complexd amp;
};

int64_t output_key(int jmu, int k);

// Pair terms of U(t)f1 * U(t)f2 (or U(t)f1 * conj(U(t)f2)) restricted by the
// constraint indicator; amp carries one convolution factor dmu/lambda.
// Sorted by okey.  Throws on pair budget overflow.
std::vector<ProductTerm> build_pair_terms(const SparseField& f1, const SparseField& f2,
                                          const PairConstraint& c, bool conjugate_second,
                                          int64_t pair_budget = 300000000);

// Product of J >= 2 free solutions (no constraints); amp carries
// (dmu/lambda)^(J-1).
std::vector<ProductTerm> build_product_terms(const std::vector<SparseField>& fs,
                                             int64_t pair_budget = 300000000);

// Exact integral_{t0}^{t1} ||sum of terms||_{L^2(R x T_lambda)}^2 dt via the
// closed-form pair kernel int e^{-4*pi^2*i*(sigma_p - sigma_q)*t} dt.
// w_out = dmu/lambda is the output frequency measure weight.
double l2_time_integral(const std::vector<ProductTerm>& terms, double w_out, double t0,
                        double t1);

// ||sum of terms||_{L^2(R x T_lambda)}(t) at a single time (spatial norm only).
double spatial_l2_at(const std::vector<ProductTerm>& terms, double w_out, double t);

// Evaluate the physical-space value of U(t)f at (x, y): direct mode sum with
// the measure weight dmu/lambda (matches inverse_transform of dense fields).
complexd eval_free_solution(const SparseField& f, double x, double y, double t);

// Gaussian random coefficients on the lattice points of the closed annulus
// Nlo <= |xi| <= Nhi (optionally intersected with an angular sector), up to
// max_modes distinct modes.
SparseField random_band_field(double lambda, double dmu, double Nlo, double Nhi,
                              const std::optional<AngularSector>& sector, int max_modes,
                              std::mt19937_64& rng);

// Indicator-coefficient field on a lattice box (inclusive index ranges).
struct LatticeBox {
  int jlo = 0, jhi = 0; // mu indices
  int klo = 0, khi = 0; // torus modes
  int64_t count() const {
    return static_cast<int64_t>(jhi - jlo + 1) * (khi - klo + 1);
  }
};

SparseField indicator_box_field(double lambda, double dmu, const LatticeBox& box);

// Exact integral_{t0}^{t1} ||U(t)1_{box1} * U(t)1_{box2}||^2 dt computed via the
// separable product structure of box intersections (fast path used by the
// extremizer module; algebraically identical to the pair-sum evaluation).
double box_product_l2_time_integral(double lambda, double dmu, const LatticeBox& box1,
                                    const LatticeBox& box2, double t0, double t1);

} // namespace wglab

#endif
