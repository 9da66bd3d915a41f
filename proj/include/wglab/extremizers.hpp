#ifndef WGLAB_EXTREMIZERS_HPP
#define WGLAB_EXTREMIZERS_HPP

#include "wglab/bilinear.hpp"

namespace wglab {

enum class ExtremizerRegime { SMALL, LARGE }; // lambda*N1*theta <= 1 vs >= 8

// Near-extremizer pair for the angular bilinear estimate at M ~ N1:
//   f1hat = indicator of [-N2*theta, N2*theta] x {k/lambda in [N2 - N1*theta, N2 + N1*theta]}
//   f2hat = indicator of [N1 - N2*theta, N1 + N2*theta] x {k/lambda in [-N1*theta, N1*theta]}
struct ExtremizerSpec {
  DyadicBand N1{64.0}, N2{8.0};
  double theta = 1.0 / 64.0;
  double lambda = 1.0;

  void validate() const {
    N1.validate();
    N2.validate();
    if (!(theta > 0.0 && theta < N2.N / N1.N))
      throw std::invalid_argument("ExtremizerSpec: need 0 < theta < N2/N1");
    if (!(lambda >= 1.0)) throw std::invalid_argument("ExtremizerSpec: lambda >= 1");
  }
  double coherence() const { return lambda * N1.N * theta; }
  ExtremizerRegime regime() const {
    return coherence() <= 1.0 ? ExtremizerRegime::SMALL : ExtremizerRegime::LARGE;
  }
  double default_dmu() const { return N2.N * theta / 8.0; }
};

// Lattice boxes of the two indicators at spacing dmu (dmu <= N2*theta/8).
std::pair<LatticeBox, LatticeBox> extremizer_boxes(const ExtremizerSpec& s, double dmu);

// Sparse indicator fields on those boxes.
std::pair<SparseField, SparseField> build_extremizer_pair(const ExtremizerSpec& s, double dmu);

// Dense variant on an explicit geometry (small cases only; throws a geometry
// error when the grid cannot resolve the boxes).
std::pair<SpectralField, SpectralField> build_extremizer_pair(const ExtremizerSpec& s,
                                                              const WaveguideGeometry& g);

// ||U f1 * U f2||_{L^2([0,1] x R x T_lambda)} compared against the sharpness
// reference (1/(lambda*N1) + theta)^(1/2) * lambda^{-1} * N2*theta * <lambda*N1*theta>,
// with <a> = 1 + |a|.  M is fixed to N1/4 (recorded in params).
EstimateReport verify_sharpness(const ExtremizerSpec& s, double dmu = 0.0);

// Phase-coherence diagnostics: |U f_i| sampled over the stationary-overlap
// space-time boxes (scaled by box_scale), against the predicted level
// N2*theta/lambda (SMALL) or N1*N2*theta^2/lambda (LARGE).
struct OverlapDiagnostics {
  double origin_value1 = 0.0;  // |U f1(0,0,0)| (= total indicator measure)
  double origin_value2 = 0.0;
  double predicted_origin1 = 0.0;
  double predicted_origin2 = 0.0;
  double min_mod1 = 0.0; // min |U f1| over its box
  double min_mod2 = 0.0;
  double level = 0.0;    // predicted coherence level
  double box_scale = 0.25;
};

OverlapDiagnostics stationary_overlap_diagnostics(const ExtremizerSpec& s,
                                                  double box_scale = 0.25, int samples = 5,
                                                  double dmu = 0.0);

} // namespace wglab

#endif
