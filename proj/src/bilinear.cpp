#include "wglab/bilinear.hpp"

namespace wglab {

std::string to_string(EstimateId id) {
  switch (id) {
    case EstimateId::THM_GLOBAL_BILINEAR: return "THM_GLOBAL_BILINEAR";
    case EstimateId::THM_ANGULAR_BILINEAR: return "THM_ANGULAR_BILINEAR";
    case EstimateId::PROP_NO_ANGLE: return "PROP_NO_ANGLE";
    case EstimateId::LEM_ONE_ANGLE: return "LEM_ONE_ANGLE";
    case EstimateId::LEM_CONJUGATE: return "LEM_CONJUGATE";
    case EstimateId::MULTILINEAR_D2: return "MULTILINEAR_D2";
    case EstimateId::L4_STRICHARTZ: return "L4_STRICHARTZ";
  }
  return "?";
}

double k_factor(double lambda, DyadicBand N1, DyadicBand N2, int d) {
  if (d < 2) throw std::invalid_argument("k_factor: unsupported dimension d < 2");
  if (!(N1.N >= N2.N && N2.N >= 1.0 && lambda >= 1.0))
    throw std::invalid_argument("k_factor: need N1 >= N2 >= 1 and lambda >= 1");
  if (d == 2) return 1.0 / lambda + N2.N / N1.N;
  return std::pow(N2.N, d - 3) / lambda + std::pow(N2.N, d - 1) / N1.N;
}

PhysicalField constrained_bilinear_form(const SpectralField& f1, const SpectralField& f2,
                                        const PairConstraint& c, bool conjugate_second,
                                        double t, int64_t pair_budget) {
  const WaveguideGeometry& g = f1.geometry;
  if (!g.same_grid(f2.geometry))
    throw std::invalid_argument("constrained_bilinear_form: geometry mismatch");
  // Enumerate supports.
  struct M {
    int ix, iy;
    FreqPoint xi;
    complexd c;
  };
  auto support = [&](const SpectralField& f) {
    std::vector<M> s;
    for (int ix = 0; ix < g.nx; ++ix)
      for (int iy = 0; iy < g.ny; ++iy)
        if (f.at(ix, iy) != complexd(0.0)) s.push_back({ix, iy, g.freq_point(ix, iy), f.at(ix, iy)});
    return s;
  };
  std::vector<M> s1 = support(f1), s2 = support(f2);
  if (static_cast<int64_t>(s1.size()) * s2.size() > pair_budget)
    throw std::length_error("constrained_bilinear_form: pair budget exceeded");

  SpectralField out(g);
  const double w = g.dmu() / g.lambda;
  for (const M& a : s1) {
    for (const M& b : s2) {
      if (!c.admits(a.xi, b.xi)) continue;
      int ix, iy;
      double sigma;
      complexd amp;
      if (conjugate_second) {
        ix = ((a.ix - b.ix) % g.nx + g.nx) % g.nx;
        iy = ((a.iy - b.iy) % g.ny + g.ny) % g.ny;
        sigma = a.xi.norm2() - b.xi.norm2();
        amp = a.c * std::conj(b.c);
      } else {
        ix = (a.ix + b.ix) % g.nx;
        iy = (a.iy + b.iy) % g.ny;
        sigma = a.xi.norm2() + b.xi.norm2();
        amp = a.c * b.c;
      }
      out.at(ix, iy) += amp * std::polar(w, -4.0 * M_PI * M_PI * sigma * t);
    }
  }
  return inverse_transform(out);
}

namespace {

EstimateReport make_report(EstimateId id, double lhs, double rhs,
                           std::map<std::string, double> params) {
  EstimateReport r;
  r.estimate_id = id;
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.finish();
  return r;
}

} // namespace

EstimateReport eval_angular_bilinear(double lambda, DyadicBand N1, DyadicBand N2, double M,
                                     double theta, const SparseField& f1,
                                     const SparseField& f2) {
  if (!(theta > 0.0 && theta < 1.0 && M >= 1.0 && N1.N >= N2.N && N2.N > 1.0))
    throw std::invalid_argument("eval_angular_bilinear: parameter preconditions violated");
  PairConstraint c;
  c.gap_M = M;
  c.gap_kind = GapKind::XDiff;
  c.angle_theta = theta;
  auto terms = build_pair_terms(f1, f2, c, false);
  double lhs = std::sqrt(std::max(0.0, l2_time_integral(terms, f1.dmu / f1.lambda, 0.0, 1.0)));
  double rhs = std::sqrt(1.0 / (lambda * M) + theta) * f1.l2_norm() * f2.l2_norm();
  return make_report(EstimateId::THM_ANGULAR_BILINEAR, lhs, rhs,
                     {{"lambda", lambda},
                      {"N1", N1.N},
                      {"N2", N2.N},
                      {"M", M},
                      {"theta", theta}});
}

EstimateReport eval_global_bilinear(double lambda, DyadicBand N1, DyadicBand N2, double eps,
                                    const SparseField& f1, const SparseField& f2, int slabs) {
  if (slabs < 1) throw std::invalid_argument("eval_global_bilinear: need >= 1 slab");
  PairConstraint none;
  auto terms = build_pair_terms(f1, f2, none, false);
  const double w = f1.dmu / f1.lambda;
  std::vector<double> i2(slabs);
  for (int gam = 0; gam < slabs; ++gam) {
    double I = std::max(0.0, l2_time_integral(terms, w, gam, gam + 1.0));
    i2[gam] = I * I; // a_gamma^4 = (integral of squared norm)^2
  }
  double lhs = std::pow(pairwise_sum(i2), 0.25);
  double rhs =
      std::pow(N2.N, eps) * std::sqrt(k_factor(lambda, N1, N2, 2)) * f1.l2_norm() * f2.l2_norm();
  return make_report(EstimateId::THM_GLOBAL_BILINEAR, lhs, rhs,
                     {{"lambda", lambda},
                      {"N1", N1.N},
                      {"N2", N2.N},
                      {"eps", eps},
                      {"slabs", static_cast<double>(slabs)}});
}

EstimateReport eval_no_angle_bilinear(double lambda, DyadicBand N1, DyadicBand N2, double M,
                                      const SparseField& f1, const SparseField& f2) {
  PairConstraint c;
  c.gap_M = M;
  c.gap_kind = GapKind::XDiff;
  auto terms = build_pair_terms(f1, f2, c, false);
  double lhs = std::sqrt(std::max(0.0, l2_time_integral(terms, f1.dmu / f1.lambda, 0.0, 1.0)));
  double rhs = std::sqrt(1.0 / (lambda * M) + N2.N / M) * f1.l2_norm() * f2.l2_norm();
  return make_report(EstimateId::PROP_NO_ANGLE, lhs, rhs,
                     {{"lambda", lambda}, {"N1", N1.N}, {"N2", N2.N}, {"M", M}});
}

EstimateReport eval_one_angle_bilinear(double lambda, DyadicBand N1, DyadicBand N2, double M,
                                       double theta, int l, const SparseField& f1,
                                       const SparseField& f2) {
  PairConstraint c;
  c.gap_M = M;
  c.gap_kind = GapKind::XSum;
  auto terms = build_pair_terms(f1, f2, c, true);
  double lhs = std::sqrt(std::max(0.0, l2_time_integral(terms, f1.dmu / f1.lambda, 0.0, 1.0)));
  double rhs =
      std::sqrt(1.0 / (lambda * M) + N1.N * theta / M) * f1.l2_norm() * f2.l2_norm();
  return make_report(EstimateId::LEM_ONE_ANGLE, lhs, rhs,
                     {{"lambda", lambda},
                      {"N1", N1.N},
                      {"N2", N2.N},
                      {"M", M},
                      {"theta", theta},
                      {"l", static_cast<double>(l)}});
}

double default_delta_prime(int k) { return std::min(1.0 / k, 0.25) - 0.01; }

EstimateReport eval_multilinear_d2(int k, const std::vector<DyadicBand>& bands,
                                   const std::vector<SparseField>& fs, double delta_prime) {
  if (k < 2) throw std::invalid_argument("eval_multilinear_d2: need k >= 2 at d = 2");
  if (bands.size() != static_cast<size_t>(k + 1) || fs.size() != static_cast<size_t>(k + 1))
    throw std::invalid_argument("eval_multilinear_d2: need k+1 bands and fields");
  for (size_t j = 1; j < bands.size(); ++j)
    if (bands[j].N > bands[j - 1].N)
      throw std::invalid_argument("eval_multilinear_d2: bands must be nonincreasing");
  auto terms = build_product_terms(fs);
  double lhs =
      std::sqrt(std::max(0.0, l2_time_integral(terms, fs[0].dmu / fs[0].lambda, 0.0, 1.0)));
  const double s_dk = 1.0 - 1.0 / k; // d/2 - 1/k at d = 2
  double rhs = std::pow(bands[k].N / bands[0].N + 1.0 / bands[1].N, delta_prime) *
               fs[0].l2_norm();
  for (int j = 1; j <= k; ++j) rhs *= std::pow(bands[j].N, s_dk) * fs[j].l2_norm();
  std::map<std::string, double> params{{"k", static_cast<double>(k)},
                                       {"delta_prime", delta_prime}};
  for (size_t j = 0; j < bands.size(); ++j)
    params["N" + std::to_string(j + 1)] = bands[j].N;
  return make_report(EstimateId::MULTILINEAR_D2, lhs, rhs, std::move(params));
}

EstimateReport eval_l4_strichartz(double lambda, DyadicBand N, const SparseField& f) {
  PairConstraint none;
  auto terms = build_pair_terms(f, f, none, false);
  double lhs =
      std::pow(std::max(0.0, l2_time_integral(terms, f.dmu / f.lambda, 0.0, 1.0)), 0.25);
  double rhs = f.l2_norm();
  return make_report(EstimateId::L4_STRICHARTZ, lhs, rhs, {{"lambda", lambda}, {"N", N.N}});
}

std::pair<SparseField, SparseField> draw_angular_pair(const AngularDrawParams& p,
                                                      std::mt19937_64& rng) {
  // f1 near angle 0, f2 near angle pi/2: |cos angle(xi1, xi2)| stays small and
  // |mu1 - mu2| ~ N1, so gap/transversality indicators are well-populated.
  double dmu = std::min(p.N2.N / 16.0, std::max(p.N2.N * p.theta, 1e-4));
  AngularSector s1{p.theta, 0, 2.0};
  AngularSector s2{p.theta, static_cast<int>(std::round(M_PI_2 / p.theta)), 2.0};
  SparseField f1 =
      random_band_field(p.lambda, dmu, p.N1.N, 2.0 * p.N1.N, s1, p.max_modes, rng);
  SparseField f2 =
      random_band_field(p.lambda, dmu, p.N2.N, 2.0 * p.N2.N, s2, p.max_modes, rng);
  return {std::move(f1), std::move(f2)};
}

std::pair<SparseField, SparseField> draw_band_pair(double lambda, DyadicBand N1, DyadicBand N2,
                                                   int max_modes, std::mt19937_64& rng) {
  double dmu = N2.N / 16.0;
  SparseField f1 = random_band_field(lambda, dmu, N1.N, 2.0 * N1.N, std::nullopt, max_modes, rng);
  SparseField f2 = random_band_field(lambda, dmu, N2.N, 2.0 * N2.N, std::nullopt, max_modes, rng);
  return {std::move(f1), std::move(f2)};
}

} // namespace wglab
