#ifndef WGLAB_BILINEAR_HPP
#define WGLAB_BILINEAR_HPP

#include <map>
#include <string>

#include "wglab/fourier.hpp"
#include "wglab/sparse.hpp"

namespace wglab {

enum class EstimateId {
  THM_GLOBAL_BILINEAR,
  THM_ANGULAR_BILINEAR,
  PROP_NO_ANGLE,
  LEM_ONE_ANGLE,
  LEM_CONJUGATE,
  MULTILINEAR_D2,
  L4_STRICHARTZ,
};

std::string to_string(EstimateId id);

struct EstimateReport {
  EstimateId estimate_id = EstimateId::THM_ANGULAR_BILINEAR;
  std::map<std::string, double> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool degenerate = false; // rhs == 0

  void finish() {
    degenerate = !(rhs > 0.0);
    ratio = degenerate ? 0.0 : lhs / rhs;
  }
};

// K(lambda, N1, N2) of the global bilinear bound: 1/lambda + N2/N1 for d = 2,
// N2^(d-3)/lambda + N2^(d-1)/N1 for d >= 3.
double k_factor(double lambda, DyadicBand N1, DyadicBand N2, int d);

// Dense-grid constrained bilinear form at a single time: sums over support
// pairs xi1 +/- xi2 = xi (circular on the FFT lattice, matching the pointwise
// grid product) the indicator- and phase-weighted coefficient products with
// one convolution factor (dk)_lambda.  With no active constraints and
// conjugate_second = false this equals U(t)f1 * U(t)f2.
PhysicalField constrained_bilinear_form(const SpectralField& f1, const SpectralField& f2,
                                        const PairConstraint& c, bool conjugate_second,
                                        double t, int64_t pair_budget = 300000000);

// Estimate evaluations.  The harness represents band-localized data sparsely;
// the [0,1] (or slab) time integrals of free-solution products are evaluated
// in closed form per frequency pair, so `nt` is only a consistency knob kept
// for callers that cross-check against sampled quadrature.

// ||F||_{L^2([0,1] x R x T_lambda)} <~ (1/(lambda*M) + theta)^(1/2) ||f1|| ||f2||
// with F the gap + transversality constrained product.
EstimateReport eval_angular_bilinear(double lambda, DyadicBand N1, DyadicBand N2, double M,
                                     double theta, const SparseField& f1, const SparseField& f2);

// l^4_gamma L^2 slab norm of the unconstrained product vs N2^eps K^(1/2).
EstimateReport eval_global_bilinear(double lambda, DyadicBand N1, DyadicBand N2, double eps,
                                    const SparseField& f1, const SparseField& f2, int slabs);

// Gap-only variant: bound (1/(lambda*M) + N2/M)^(1/2).
EstimateReport eval_no_angle_bilinear(double lambda, DyadicBand N1, DyadicBand N2, double M,
                                      const SparseField& f1, const SparseField& f2);

// Conjugate-second variant with x-sum gap; second factor sector-localized by
// construction; bound (1/(lambda*M) + N1*theta/M)^(1/2).
EstimateReport eval_one_angle_bilinear(double lambda, DyadicBand N1, DyadicBand N2, double M,
                                       double theta, int l, const SparseField& f1,
                                       const SparseField& f2);

// k+1 factors, d = 2: bound (N_{k+1}/N1 + 1/N2)^delta' * ||f1|| *
// prod_{j>=2} N_j^(1 - 1/k) ||f_j||.
EstimateReport eval_multilinear_d2(int k, const std::vector<DyadicBand>& bands,
                                   const std::vector<SparseField>& fs, double delta_prime);

double default_delta_prime(int k);

// ||U f||_{L^4([0,1] x R x T_lambda)} vs ||f||_{L^2}.
EstimateReport eval_l4_strichartz(double lambda, DyadicBand N, const SparseField& f);

// Random data draws used by the sweeps: sector-localized band data arranged so
// the gap/transversality indicators are well-populated.
struct AngularDrawParams {
  double lambda = 1.0;
  DyadicBand N1{16.0}, N2{4.0};
  double theta = 0.125;
  int max_modes = 64;
};

std::pair<SparseField, SparseField> draw_angular_pair(const AngularDrawParams& p,
                                                      std::mt19937_64& rng);
std::pair<SparseField, SparseField> draw_band_pair(double lambda, DyadicBand N1, DyadicBand N2,
                                                   int max_modes, std::mt19937_64& rng);

} // namespace wglab

#endif
