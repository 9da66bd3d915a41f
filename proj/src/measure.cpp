#include "wglab/measure.hpp"

#include <cmath>
#include <random>

#include "wglab/summation.hpp"

namespace wglab {

namespace {

constexpr double kBig = 1e15;       // stand-in for +/- infinity before clipping
constexpr double kWiden = 1e-12;    // endpoint widening before set algebra

IntervalSet widen(const IntervalSet& s, double eps) {
  std::vector<IntervalSet::Interval> out;
  for (const auto& [a, b] : s.intervals()) out.emplace_back(a - eps, b + eps);
  return IntervalSet(std::move(out));
}

// Stable quadratic-window solve: the set of s >= 0 with s^2 in [lo2, hi2],
// returned as [sqrt(max(lo2,0)), sqrt(hi2)] or empty when hi2 < 0.
bool sqrt_window(double lo2, double hi2, double& lo, double& hi) {
  if (hi2 < 0.0) return false;
  lo = lo2 > 0.0 ? std::sqrt(lo2) : 0.0;
  hi = std::sqrt(hi2);
  return true;
}

// |v - center| in [lo, hi] as an IntervalSet in v (two symmetric intervals).
IntervalSet abs_band(double center, double lo, double hi) {
  IntervalSet s;
  s.add(center - hi, center - lo);
  s.add(center + lo, center + hi);
  return s;
}

// cot on (0, pi), clipped: -> +kBig at 0, -kBig at pi.
double cot_clip(double x) {
  double sn = std::sin(x);
  if (sn <= 0.0) return x <= M_PI / 2 ? kBig : -kBig;
  double c = std::cos(x) / sn;
  return std::clamp(c, -kBig, kBig);
}

// The set of first coordinates v such that arg(v, eta_line) lies within
// circular distance <= half of center.  Uses monotonicity of cot.
IntervalSet arg_band_on_line(double eta_line, double center, double half) {
  if (half >= M_PI) return IntervalSet::single(-kBig, kBig);
  // Normalize the arc [center-half, center+half] into pieces of [0, 2*pi).
  double lo = std::remainder(center - half, 2.0 * M_PI);
  if (lo < 0.0) lo += 2.0 * M_PI;
  double hi = lo + 2.0 * half;
  std::vector<std::pair<double, double>> arcs;
  if (hi <= 2.0 * M_PI) {
    arcs.emplace_back(lo, hi);
  } else {
    arcs.emplace_back(lo, 2.0 * M_PI);
    arcs.emplace_back(0.0, hi - 2.0 * M_PI);
  }
  IntervalSet out;
  for (auto [a, b] : arcs) {
    if (eta_line > 0.0) {
      // args on this line fill (0, pi); cot is decreasing there.
      double a2 = std::max(a, 0.0), b2 = std::min(b, M_PI);
      if (a2 < b2)
        out = out.unite(IntervalSet::single(eta_line * cot_clip(b2), eta_line * cot_clip(a2)));
    } else if (eta_line < 0.0) {
      // args fill (pi, 2*pi); map by periodicity of cot, orientation flips
      // because eta_line < 0.
      double a2 = std::max(a, M_PI), b2 = std::min(b, 2.0 * M_PI);
      if (a2 < b2)
        out = out.unite(
            IntervalSet::single(eta_line * cot_clip(b2 - M_PI), eta_line * cot_clip(a2 - M_PI)));
    } else {
      // eta_line == 0: arg is 0 for v > 0 and pi for v < 0.
      if (a <= 0.0 || b >= 2.0 * M_PI) out = out.unite(IntervalSet::single(0.0, kBig));
      if (a <= M_PI && b >= M_PI) out = out.unite(IntervalSet::single(-kBig, 0.0));
    }
  }
  return out;
}

double circ_dist(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * M_PI);
  return d > M_PI ? 2.0 * M_PI - d : d;
}

} // namespace

std::string to_string(MeasureVariant v) {
  switch (v) {
    case MeasureVariant::M_FULL: return "M_FULL";
    case MeasureVariant::M1_NO_ANGLE: return "M1_NO_ANGLE";
    case MeasureVariant::M_TILDE_ONE_ANGLE: return "M_TILDE_ONE_ANGLE";
  }
  return "?";
}

void MeasureQuery::validate() const {
  if (!(lambda >= 1.0)) throw std::invalid_argument("MeasureQuery: lambda must be >= 1");
  if (!(M >= 1.0)) throw std::invalid_argument("MeasureQuery: M must be >= 1");
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("MeasureQuery: theta in (0,1)");
  if (!(N1.N >= N2.N && N2.N > 1.0))
    throw std::invalid_argument("MeasureQuery: need N1 >= N2 > 1");
}

std::pair<int, int> line_range(const MeasureQuery& q) {
  int kmax = static_cast<int>(std::ceil(2.0 * q.N2.N * q.lambda)) + 1;
  return {-kmax, kmax};
}

IntervalSet per_line_slice(const MeasureQuery& q, int k) {
  const double eta2 = k / q.lambda;
  const double mu = q.xi.mu, eta = q.xi.eta;
  const double etad = eta - eta2; // y-component of xi - xi2

  // Resonance window: |mu2 - mu/2|^2 in [(tau-1-c)/2, (tau+1-c)/2] with
  // c = mu^2/2 + eta2^2 + etad^2.
  const double c = mu * mu / 2.0 + eta2 * eta2 + etad * etad;
  double rlo, rhi;
  if (!sqrt_window((q.tau - 1.0 - c) / 2.0, (q.tau + 1.0 - c) / 2.0, rlo, rhi))
    return IntervalSet::empty();
  IntervalSet set = widen(abs_band(mu / 2.0, rlo, rhi), kWiden);

  // |xi2| in [N2, 2N2]  =>  |mu2| in [...] on this line.
  double alo, ahi;
  if (!sqrt_window(q.N2.N * q.N2.N - eta2 * eta2, 4.0 * q.N2.N * q.N2.N - eta2 * eta2, alo, ahi))
    return IntervalSet::empty();
  set = set.intersect(widen(abs_band(0.0, alo, ahi), kWiden));
  if (set.is_empty()) return set;

  // |xi - xi2| in [N1, 2N1]  =>  |mu - mu2| in [...].
  double blo, bhi;
  if (!sqrt_window(q.N1.N * q.N1.N - etad * etad, 4.0 * q.N1.N * q.N1.N - etad * etad, blo, bhi))
    return IntervalSet::empty();
  set = set.intersect(widen(abs_band(mu, blo, bhi), kWiden));
  if (set.is_empty()) return set;

  // Gap |mu/2 - mu2| >= M (not part of the one-angle variant, whose gap
  // constrains the query's mu instead).
  if (q.variant != MeasureVariant::M_TILDE_ONE_ANGLE) {
    IntervalSet gap = abs_band(mu / 2.0, q.M, kBig);
    set = set.intersect(widen(gap, kWiden));
    if (set.is_empty()) return set;
  }

  // Sector constraints.
  const double half = q.sector_c * q.theta;
  if (q.variant == MeasureVariant::M_FULL && q.sectors) {
    // arg(xi2) near l1*theta.
    set = set.intersect(widen(arg_band_on_line(eta2, q.sectors->first * q.theta, half), kWiden));
    if (set.is_empty()) return set;
    // arg(xi - xi2) near l2*theta: solve in u = mu - mu2, then map back
    // (mu2 = mu - u flips orientation).
    IntervalSet ub = arg_band_on_line(etad, q.sectors->second * q.theta, half);
    std::vector<IntervalSet::Interval> mapped;
    for (const auto& [a, b] : ub.intervals()) mapped.emplace_back(mu - b, mu - a);
    set = set.intersect(widen(IntervalSet(std::move(mapped)), kWiden));
  } else if (q.variant == MeasureVariant::M_TILDE_ONE_ANGLE) {
    int l2 = q.sectors ? q.sectors->second : 0;
    IntervalSet ub = arg_band_on_line(etad, l2 * q.theta, half);
    std::vector<IntervalSet::Interval> mapped;
    for (const auto& [a, b] : ub.intervals()) mapped.emplace_back(mu - b, mu - a);
    set = set.intersect(widen(IntervalSet(std::move(mapped)), kWiden));
  }
  return set;
}

bool admits_point(const MeasureQuery& q, int k, double mu2) {
  const double eta2 = k / q.lambda;
  FreqPoint xi2{mu2, eta2};
  FreqPoint d = q.xi - xi2;
  double n2 = xi2.norm(), n1 = d.norm();
  if (!(n2 >= q.N2.N && n2 <= 2.0 * q.N2.N)) return false;
  if (!(n1 >= q.N1.N && n1 <= 2.0 * q.N1.N)) return false;
  if (std::abs(q.tau - xi2.norm2() - d.norm2()) > 1.0) return false;
  if (q.variant != MeasureVariant::M_TILDE_ONE_ANGLE) {
    if (std::abs(q.xi.mu / 2.0 - mu2) < q.M) return false;
  }
  const double half = q.sector_c * q.theta;
  if (q.variant == MeasureVariant::M_FULL && q.sectors) {
    if (circ_dist(xi2.arg(), q.sectors->first * q.theta) > half) return false;
    if (circ_dist(d.arg(), q.sectors->second * q.theta) > half) return false;
  } else if (q.variant == MeasureVariant::M_TILDE_ONE_ANGLE) {
    int l2 = q.sectors ? q.sectors->second : 0;
    if (circ_dist(d.arg(), l2 * q.theta) > half) return false;
  }
  return true;
}

double measure(const MeasureQuery& q) {
  auto [klo, khi] = line_range(q);
  std::vector<double> lens;
  lens.reserve(khi - klo + 1);
  for (int k = klo; k <= khi; ++k) lens.push_back(per_line_slice(q, k).length());
  return pairwise_sum(lens) / q.lambda;
}

int nonempty_line_count(const MeasureQuery& q) {
  auto [klo, khi] = line_range(q);
  int n = 0;
  for (int k = klo; k <= khi; ++k)
    if (!per_line_slice(q, k).is_empty()) ++n;
  return n;
}

double measure_bound(const MeasureQuery& q) {
  switch (q.variant) {
    case MeasureVariant::M_FULL: return 1.0 / (q.lambda * q.M) + q.theta;
    case MeasureVariant::M1_NO_ANGLE: return 1.0 / (q.lambda * q.M) + q.N2.N / q.M;
    case MeasureVariant::M_TILDE_ONE_ANGLE:
      return 1.0 / (q.lambda * q.M) + q.N1.N * q.theta / q.M;
  }
  return 0.0;
}

AnnulusParams annulus_params(const MeasureQuery& q) {
  AnnulusParams p;
  double disc = 2.0 * q.tau - q.xi.norm2();
  if (disc <= 0.0) return p; // empty-annulus signal
  p.valid = true;
  p.r = std::sqrt(disc) / 2.0;
  p.inner = disc - 4.0 > 0.0 ? std::sqrt(disc - 4.0) / 2.0 : 0.0;
  p.outer = std::sqrt(disc + 4.0) / 2.0;
  p.width = p.outer - p.inner;
  return p;
}

std::vector<double> tau_k_sequence(const MeasureQuery& q, int k_lo, int k_hi) {
  std::vector<double> out;
  out.reserve(k_hi - k_lo + 1);
  for (int k = k_lo; k <= k_hi; ++k) {
    double d = k / q.lambda - q.xi.eta / 2.0;
    out.push_back(q.tau / 2.0 - d * d - q.xi.norm2() / 4.0);
  }
  return out;
}

std::pair<double, double> mc_measure(const MeasureQuery& q, int samples, uint64_t seed) {
  auto [klo, khi] = line_range(q);
  const int nlines = khi - klo + 1;
  const double w = 2.0 * q.N2.N; // mu2 window is [-w, w]
  const double total = static_cast<double>(nlines) * 2.0 * w / q.lambda;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kd(klo, khi);
  std::uniform_real_distribution<double> md(-w, w);
  long hits = 0;
  for (int i = 0; i < samples; ++i) {
    if (admits_point(q, kd(rng), md(rng))) ++hits;
  }
  double p = static_cast<double>(hits) / samples;
  double est = total * p;
  double se = total * std::sqrt(std::max(p * (1.0 - p), 1.0 / samples) / samples);
  return {est, se};
}

SupSweepReport sup_sweep(MeasureVariant variant, const std::vector<double>& lambdas,
                         const std::vector<double>& N1s, const std::vector<double>& N2s,
                         const std::vector<double>& Ms, const std::vector<double>& thetas,
                         int random_probes, uint64_t seed) {
  SupSweepReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ud(0.0, 1.0);

  auto snap = [](double eta, double lambda) { return std::round(eta * lambda) / lambda; };

  for (double lambda : lambdas)
    for (double N1 : N1s)
      for (double N2 : N2s) {
        if (N2 > N1) continue;
        for (double M : Ms) {
          if (M > N1) continue;
          for (double theta : thetas) {
            MeasureQuery base;
            base.lambda = lambda;
            base.M = M;
            base.theta = theta;
            base.N1 = DyadicBand{N1};
            base.N2 = DyadicBand{N2};
            base.variant = variant;

            // Query-point xi choices: |mu| ~ N1; grazing |eta| ~ N1; random.
            std::vector<FreqPoint> xis;
            xis.push_back({1.5 * N1, snap(0.0, lambda)});
            xis.push_back({0.3, snap(1.5 * N1, lambda)});
            if (variant == MeasureVariant::M_TILDE_ONE_ANGLE) {
              // |mu| ~ M regime with |xi| still ~ N1.
              double mu = std::min(1.5 * M, 1.4 * N1);
              double eta = std::sqrt(std::max(2.25 * N1 * N1 - mu * mu, 0.0));
              xis.push_back({mu, snap(eta, lambda)});
            }
            {
              double a = 2.0 * M_PI * ud(rng);
              double r = (1.2 + 1.0 * ud(rng)) * N1;
              xis.push_back({r * std::cos(a), snap(r * std::sin(a), lambda)});
            }

            for (const FreqPoint& xi : xis) {
              // Probe points on the target annulus |xi2| ~ 1.5*N2.
              for (int p = 0; p < 3 + random_probes; ++p) {
                double a;
                double r2 = 1.5 * N2;
                if (p == 0)
                  a = 0.0;
                else if (p == 1)
                  a = M_PI / 3.0;
                else {
                  a = 2.0 * M_PI * ud(rng);
                  r2 = (1.0 + ud(rng)) * N2;
                }
                double eta2 = snap(r2 * std::sin(a), lambda);
                if (std::abs(eta2) > r2) continue;
                double mu2 = std::copysign(std::sqrt(r2 * r2 - eta2 * eta2), std::cos(a));
                FreqPoint xi2{mu2, eta2};
                FreqPoint d = xi - xi2;

                MeasureQuery q = base;
                if (variant == MeasureVariant::M_FULL) {
                  q.sectors = {static_cast<int>(std::round(xi2.arg() / theta)),
                               static_cast<int>(std::round(d.arg() / theta))};
                } else if (variant == MeasureVariant::M_TILDE_ONE_ANGLE) {
                  q.sectors = {0, static_cast<int>(std::round(d.arg() / theta))};
                }
                q.xi = xi;

                // tau choices: probe-centered; gap-grazing (tau_k = M^2 at the
                // probe line); tangent line (tau_k = 1/4); jitter.
                double tau_probe = xi2.norm2() + d.norm2();
                double dk = eta2 - xi.eta / 2.0;
                double tau_gap = 2.0 * (M * M + dk * dk + xi.norm2() / 4.0);
                double tau_tan = 2.0 * (0.25 + dk * dk + xi.norm2() / 4.0);
                for (double tau :
                     {tau_probe, tau_gap, tau_tan, tau_probe + 2.0 * ud(rng) - 1.0}) {
                  q.tau = tau;
                  MeasureSweepRow row;
                  row.query = q;
                  row.value = measure(q);
                  row.bound = measure_bound(q);
                  row.ratio = row.bound > 0.0 ? row.value / row.bound : 0.0;
                  if (row.ratio > rep.max_ratio) {
                    rep.max_ratio = row.ratio;
                    rep.argmax = rep.rows.size();
                  }
                  rep.rows.push_back(row);
                }
              }
            }
          }
        }
      }
  return rep;
}

} // namespace wglab
