#ifndef WGLAB_IMETHOD_HPP
#define WGLAB_IMETHOD_HPP

#include <array>

#include "wglab/fourier.hpp"
#include "wglab/projectors.hpp"

namespace wglab {

// Smoothing multiplier: m(xi) = 1 for |xi| <= N, (N/|xi|)^(1-s) for
// |xi| >= 2N, smooth monotone interpolation in between.  N = infinity
// (m == 1) is encoded as N <= 0.
struct IMultiplier {
  double N = 16.0;  // <= 0 means m == 1
  double s = 0.6;

  bool trivial() const { return !(N > 0.0) || std::isinf(N); }
};

double m_xi(const FreqPoint& xi, const IMultiplier& im);
double m_radial(double r, const IMultiplier& im);

struct NlsState {
  double t = 0.0;
  SpectralField u;
  double dt = 1e-3;

  void validate() const;
};

struct EnergyLedger {
  std::vector<double> times, mass, kinetic_Iu, potential_Iu, E_Iu, E0;
  double Xsb_estimate = 0.0;
};

// u^lambda(x, y) = (1/lambda) u(x/lambda, y/lambda) realized as an exact
// lattice relabeling: same coefficient array scaled by lambda on the
// geometry (lambda, L0*lambda, nx, ny).  Mass invariant; H^1-dot scales by
// 1/lambda.
SpectralField rescale(const SpectralField& u0, double lambda);

// lambda = c * N^((1-s)/s).
double choose_lambda(double s, double A, double N, double c = 1.0);

// Defocusing cubic NLS i u_t + Laplacian u = |u|^2 u via Strang splitting:
// half nonlinear phase rotation, full linear spectral step, half nonlinear.
// nonlinear_coeff = 0 degenerates to the free propagator.
NlsState split_step_evolve(const NlsState& state, int steps, double nonlinear_coeff = 1.0);

struct EnergyValue {
  double E = 0.0;
  double mass = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
};

// E(Iu) = (1/2)||grad Iu||^2 + (1/4)||Iu||^4_{L^4}; kinetic term by
// frequency-side quadrature with the gradient symbol 2*pi*|xi|, potential by
// physical-side quadrature.
EnergyValue energy_Iu(const NlsState& state, const IMultiplier& im);

// Quadrilinear multipliers on Sigma_4 = {xi1+xi2+xi3+xi4 = 0}.
bool indicator_S(const std::array<FreqPoint, 4>& xi, const IMultiplier& im);
double lambda4(const std::array<FreqPoint, 4>& xi, const IMultiplier& im);
double lambda6(const std::array<FreqPoint, 6>& xi, const IMultiplier& im);
// A = (sum_j (-1)^(j+1) m(xi_j)^p |xi_j|^2) 1_{S^c}; p = 1 as printed,
// p = 2 for the squared variant (both exposed; see README).
double multiplier_A(const std::array<FreqPoint, 4>& xi, const IMultiplier& im,
                    bool squared = false);

struct E0Options {
  double coeff_floor = 1e-7;      // relative support floor for the Sigma_4 sum
  int64_t triple_budget = 400000000;
  double norm_const = 1.0;        // quartic-term normalization (2*pi powers)
};

struct E0Value {
  double E0 = 0.0;
  double quadratic = 0.0;
  double quartic = 0.0;
  double truncation_bound = 0.0;  // crude upper bound on the dropped mass
  int64_t triples = 0;
  int support = 0;
};

E0Value modified_energy_E0(const NlsState& state, const IMultiplier& im,
                           const E0Options& opts = {});

// ||<xi>^s <tau + 2*pi*|xi|^2>^b u~||_{L^2} of a windowed trajectory sampled
// uniformly on [0, delta]; the weight is centered on the dispersion curve of
// the lab's propagator convention.
double xsb_norm(const std::vector<SpectralField>& trajectory, double delta, double s, double b);

// H^b norm of the time window on the offset tau lattice (the single-mode
// factorization reference).
double window_hb_norm(double delta, int nt, double b, double offset);
double time_window(double t, double delta); // smooth bump, 1 on [delta/4, 3*delta/4]

struct IncrementRow {
  double N = 0.0;
  double lambda = 0.0;
  double c_used = 0.0;
  double E_Iu_0 = 0.0, E_Iu_1 = 0.0;
  double E0_0 = 0.0, E0_1 = 0.0;
  double gap_0 = 0.0, gap_1 = 0.0; // |E(Iu) - E0(u)|
  double increment = 0.0;          // |E0(delta) - E0(0)|
  double mass_drift = 0.0;
  double xsb = 0.0;
};

struct IncrementReport {
  std::vector<IncrementRow> rows;
  double gap_slope = 0.0;       // log-log fit of gap vs N
  double increment_slope = 0.0; // log-log fit of increment vs N
};

// For each N: lambda from choose_lambda (c grown x2 until E(Iu^lambda(0)) <=
// 1/3), rescale, evolve to delta, record energies and fitted slopes.
IncrementReport increment_experiment(const SpectralField& u0, double s,
                                     const std::vector<double>& Ns, double delta, double dt,
                                     double c0 = 1.0, const E0Options& opts = {},
                                     bool with_xsb = false);

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Smooth random data: coefficients amplitude * g / (1 + |xi|)^decay with
// seeded complex Gaussian g, zero mean mode kept real-free (set to 0).
SpectralField make_seeded_data(const WaveguideGeometry& g, uint64_t seed, double amplitude,
                               double decay);

} // namespace wglab

#endif
