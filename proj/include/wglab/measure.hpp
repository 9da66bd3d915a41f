#ifndef WGLAB_MEASURE_HPP
#define WGLAB_MEASURE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wglab/interval_set.hpp"
#include "wglab/projectors.hpp"

namespace wglab {

// Which resonant-set variant a query targets:
//   M_FULL          two sectors + x-gap       bound 1/(lambda*M) + theta
//   M1_NO_ANGLE     x-gap only                bound 1/(lambda*M) + N2/M
//   M_TILDE_ONE_ANGLE  one sector on xi-xi2,
//                      no mu2 gap (|mu| ~ M
//                      constrains the query)  bound 1/(lambda*M) + N1*theta/M
enum class MeasureVariant { M_FULL, M1_NO_ANGLE, M_TILDE_ONE_ANGLE };

std::string to_string(MeasureVariant v);

// The set lives on lines eta2 = k/lambda; constraints on xi2 = (mu2, eta2):
//   resonance  |tau - |xi2|^2 - |xi - xi2|^2| <= 1
//   annuli     |xi2| in [N2, 2N2],  |xi - xi2| in [N1, 2N1]
//   gap        |mu/2 - mu2| >= M           (M_FULL, M1_NO_ANGLE)
//   sectors    arg(xi2) near l1*theta, arg(xi - xi2) near l2*theta
struct MeasureQuery {
  double tau = 0.0;
  FreqPoint xi;
  double lambda = 1.0;
  double M = 1.0;
  double theta = 0.125;
  DyadicBand N1{16.0}, N2{4.0};
  std::optional<std::pair<int, int>> sectors; // (l1, l2) sector indices
  double sector_c = 2.0;                      // the constant in "O(theta)"
  MeasureVariant variant = MeasureVariant::M_FULL;

  void validate() const;
};

struct AnnulusParams {
  bool valid = false;
  double r = 0.0;      // sqrt(2*tau - |xi|^2)/2 at window center
  double inner = 0.0;  // inner window radius
  double outer = 0.0;  // outer window radius
  double width = 0.0;  // outer - inner
};

// Admissible lattice-line index range (from |xi2| <= 2*N2).
std::pair<int, int> line_range(const MeasureQuery& q);

// The set of mu2 on the line eta2 = k/lambda satisfying every active
// constraint of the variant, solved in closed form.
IntervalSet per_line_slice(const MeasureQuery& q, int k);

// Exact membership re-check (no interval algebra); used by oracles.
bool admits_point(const MeasureQuery& q, int k, double mu2);

// (1/lambda) * sum_k length(per_line_slice(q, k)).
double measure(const MeasureQuery& q);

// Number of lines with nonempty slice.
int nonempty_line_count(const MeasureQuery& q);

// The variant's right-hand bound formula.
double measure_bound(const MeasureQuery& q);

AnnulusParams annulus_params(const MeasureQuery& q);

// tau_k = tau/2 - (k/lambda - eta/2)^2 - |xi|^2/4 for k in [k_lo, k_hi].
std::vector<double> tau_k_sequence(const MeasureQuery& q, int k_lo, int k_hi);

// Monte-Carlo oracle: uniform samples over the admissible line bundle times
// the mu2 window [-2N2, 2N2].  Returns (estimate, standard error).
std::pair<double, double> mc_measure(const MeasureQuery& q, int samples, uint64_t seed);

struct MeasureSweepRow {
  MeasureQuery query;
  double value = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

struct SupSweepReport {
  std::vector<MeasureSweepRow> rows;
  double max_ratio = 0.0;
  size_t argmax = 0;
};

// Designed query family for one variant: per parameter combination, probe
// points on the resonance circle (axis-aligned, sector-aligned, random) plus
// the adversarial grazing-line constructions (tau tuned so a lattice line is
// tangent to the annulus or meets it right at the gap boundary).
SupSweepReport sup_sweep(MeasureVariant variant, const std::vector<double>& lambdas,
                         const std::vector<double>& N1s, const std::vector<double>& N2s,
                         const std::vector<double>& Ms, const std::vector<double>& thetas,
                         int random_probes, uint64_t seed);

} // namespace wglab

#endif
