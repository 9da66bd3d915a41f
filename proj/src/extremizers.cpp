#include "wglab/extremizers.hpp"

namespace wglab {

std::pair<LatticeBox, LatticeBox> extremizer_boxes(const ExtremizerSpec& s, double dmu) {
  s.validate();
  if (!(dmu > 0.0 && dmu <= s.N2.N * s.theta / 8.0 + 1e-15))
    throw std::invalid_argument("extremizer_boxes: need 0 < dmu <= N2*theta/8");
  const double nt1 = s.N2.N * s.theta; // mu half-width of box 1
  LatticeBox b1, b2;
  b1.jlo = static_cast<int>(std::ceil(-nt1 / dmu - 1e-9));
  b1.jhi = static_cast<int>(std::floor(nt1 / dmu + 1e-9));
  b1.klo = static_cast<int>(std::ceil(s.lambda * (s.N2.N - s.N1.N * s.theta) - 1e-9));
  b1.khi = static_cast<int>(std::floor(s.lambda * (s.N2.N + s.N1.N * s.theta) + 1e-9));
  b2.jlo = static_cast<int>(std::ceil((s.N1.N - nt1) / dmu - 1e-9));
  b2.jhi = static_cast<int>(std::floor((s.N1.N + nt1) / dmu + 1e-9));
  b2.klo = static_cast<int>(std::ceil(-s.lambda * s.N1.N * s.theta - 1e-9));
  b2.khi = static_cast<int>(std::floor(s.lambda * s.N1.N * s.theta + 1e-9));
  return {b1, b2};
}

std::pair<SparseField, SparseField> build_extremizer_pair(const ExtremizerSpec& s, double dmu) {
  auto [b1, b2] = extremizer_boxes(s, dmu);
  return {indicator_box_field(s.lambda, dmu, b1), indicator_box_field(s.lambda, dmu, b2)};
}

std::pair<SpectralField, SpectralField> build_extremizer_pair(const ExtremizerSpec& s,
                                                              const WaveguideGeometry& g) {
  g.validate();
  if (g.lambda != s.lambda)
    throw std::invalid_argument("build_extremizer_pair: geometry lambda mismatch");
  if (g.dmu() > s.N2.N * s.theta / 8.0)
    throw std::invalid_argument("build_extremizer_pair: grid cannot resolve the mu box");
  if (g.max_abs_eta() < s.N2.N + s.N1.N * s.theta)
    throw std::invalid_argument("build_extremizer_pair: grid cannot cover the torus modes");
  auto [b1, b2] = extremizer_boxes(s, g.dmu());
  auto fill = [&](const LatticeBox& b) {
    SpectralField f(g);
    for (int ix = 0; ix < g.nx; ++ix)
      for (int iy = 0; iy < g.ny; ++iy) {
        int j = WaveguideGeometry::signed_index(ix, g.nx);
        int k = g.k(iy);
        if (j >= b.jlo && j <= b.jhi && k >= b.klo && k <= b.khi)
          f.at(ix, iy) = complexd(1.0, 0.0);
      }
    return f;
  };
  return {fill(b1), fill(b2)};
}

EstimateReport verify_sharpness(const ExtremizerSpec& s, double dmu) {
  s.validate();
  if (dmu <= 0.0) dmu = s.default_dmu();
  auto [b1, b2] = extremizer_boxes(s, dmu);
  SparseField f1 = indicator_box_field(s.lambda, dmu, b1);
  SparseField f2 = indicator_box_field(s.lambda, dmu, b2);
  double lhs_sq = box_product_l2_time_integral(s.lambda, dmu, b1, b2, 0.0, 1.0);
  double lhs = std::sqrt(std::max(0.0, lhs_sq));
  double coh = 1.0 + std::abs(s.coherence()); // <lambda*N1*theta>
  double reference = std::sqrt(1.0 / (s.lambda * s.N1.N) + s.theta) *
                     (s.N2.N * s.theta / s.lambda) * coh;
  EstimateReport r;
  r.estimate_id = EstimateId::THM_ANGULAR_BILINEAR;
  r.params = {{"lambda", s.lambda},     {"N1", s.N1.N},
              {"N2", s.N2.N},           {"theta", s.theta},
              {"M", s.N1.N / 4.0},      {"dmu", dmu},
              {"sharpness", 1.0},       {"norm1", f1.l2_norm()},
              {"norm2", f2.l2_norm()},
              {"regime", s.regime() == ExtremizerRegime::SMALL ? 0.0 : 1.0}};
  r.lhs = lhs;
  r.rhs = reference;
  r.finish();
  return r;
}

OverlapDiagnostics stationary_overlap_diagnostics(const ExtremizerSpec& s, double box_scale,
                                                  int samples, double dmu) {
  s.validate();
  if (dmu <= 0.0) dmu = s.default_dmu();
  auto [f1, f2] = build_extremizer_pair(s, dmu);
  OverlapDiagnostics d;
  d.box_scale = box_scale;
  const double N1 = s.N1.N, N2 = s.N2.N, th = s.theta, lam = s.lambda;
  const bool small = s.regime() == ExtremizerRegime::SMALL;
  d.level = small ? N2 * th / lam : N1 * N2 * th * th / lam;

  d.origin_value1 = std::abs(eval_free_solution(f1, 0.0, 0.0, 0.0));
  d.origin_value2 = std::abs(eval_free_solution(f2, 0.0, 0.0, 0.0));
  d.predicted_origin1 = static_cast<double>(f1.modes.size()) * dmu / lam;
  d.predicted_origin2 = static_cast<double>(f2.modes.size()) * dmu / lam;

  // Space-time boxes: |x| <= s/(N2*theta), |t| <= s/(N2*theta)^2; the y extent
  // is s/(N2*theta) in the SMALL regime (O(1) torus lines) and s/(N1*theta)
  // in the LARGE regime; the moving factor is recentered on its stationary
  // ray (group velocity 4*pi*mu0 resp. 4*pi*eta0 under the 2*pi convention).
  const double xb = box_scale / (N2 * th);
  const double yb = small ? box_scale / (N2 * th) : box_scale / (N1 * th);
  const double tb = box_scale / (N2 * th * N2 * th);
  auto min_mod = [&](const SparseField& f, double vx, double vy) {
    double mn = 1e300;
    for (int it = 0; it < samples; ++it)
      for (int iyy = 0; iyy < samples; ++iyy)
        for (int ixx = 0; ixx < samples; ++ixx) {
          double t = samples == 1 ? 0.0 : -tb + 2.0 * tb * it / (samples - 1);
          double y = (samples == 1 ? 0.0 : -yb + 2.0 * yb * iyy / (samples - 1)) + vy * t;
          double x = (samples == 1 ? 0.0 : -xb + 2.0 * xb * ixx / (samples - 1)) + vx * t;
          mn = std::min(mn, std::abs(eval_free_solution(f, x, y, t)));
        }
    return mn;
  };
  // f1 sits at (mu, eta) ~ (0, N2): y drifts at 4*pi*N2.  f2 sits at
  // (mu, eta) ~ (N1, 0): x drifts at 4*pi*N1.
  d.min_mod1 = min_mod(f1, 0.0, 4.0 * M_PI * N2);
  d.min_mod2 = min_mod(f2, 4.0 * M_PI * N1, 0.0);
  return d;
}

} // namespace wglab
