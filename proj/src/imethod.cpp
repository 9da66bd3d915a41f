#include "wglab/imethod.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

namespace wglab {

namespace {

// Smooth monotone step 0 -> 1 on [0, 1] built from the same exp(-1/t) glue as
// bump(); S(0) = 0, S(1) = 1.
double smooth_step01(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return 1.0 - bump(1.0 + t);
}

} // namespace

double m_radial(double r, const IMultiplier& im) {
  if (im.trivial()) return 1.0;
  r = std::abs(r);
  if (r <= im.N) return 1.0;
  const double full = (1.0 - im.s) * std::log(r / im.N); // -log m at r >= 2N
  if (r >= 2.0 * im.N) return std::exp(-full);
  return std::exp(-full * smooth_step01(r / im.N - 1.0));
}

double m_xi(const FreqPoint& xi, const IMultiplier& im) { return m_radial(xi.norm(), im); }

void NlsState::validate() const {
  u.geometry.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("NlsState: dt must be positive");
  const double mx = u.geometry.max_abs_mu(), my = u.geometry.max_abs_eta();
  if (dt * (mx * mx + my * my) > M_PI)
    throw std::invalid_argument("NlsState: dt * max|xi|^2 must be <= pi");
}

SpectralField rescale(const SpectralField& u0, double lambda) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("rescale: lambda must be >= 1");
  WaveguideGeometry g = u0.geometry;
  g.lambda *= lambda;
  g.x_half_length *= lambda;
  g.validate();
  SpectralField out(g);
  for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = lambda * u0.coeffs[i];
  return out;
}

double choose_lambda(double s, double A, double N, double c) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("choose_lambda: need 0 < s < 1");
  if (!(N >= 1.0 && c > 0.0 && A > 0.0))
    throw std::invalid_argument("choose_lambda: need N >= 1, c > 0, A > 0");
  return c * std::pow(N, (1.0 - s) / s);
}

NlsState split_step_evolve(const NlsState& state, int steps, double nonlinear_coeff) {
  state.validate();
  if (steps < 0) throw std::invalid_argument("split_step_evolve: steps must be >= 0");
  NlsState cur = state;
  for (int n = 0; n < steps; ++n) {
    PhysicalField v = inverse_transform(cur.u);
    const double half = 0.5 * nonlinear_coeff * cur.dt;
    for (complexd& z : v.values) z *= std::polar(1.0, -half * std::norm(z));
    SpectralField w = propagate(forward_transform(v), cur.dt);
    v = inverse_transform(w);
    for (complexd& z : v.values) z *= std::polar(1.0, -half * std::norm(z));
    SpectralField next = forward_transform(v);
    double nrm = next.l2_norm_sq();
    if (!std::isfinite(nrm))
      throw std::runtime_error("split_step_evolve: non-finite state (blowup) at t = " +
                               std::to_string(cur.t));
    cur.u = std::move(next);
    cur.t += cur.dt;
  }
  return cur;
}

EnergyValue energy_Iu(const NlsState& state, const IMultiplier& im) {
  const WaveguideGeometry& g = state.u.geometry;
  const double w = g.dmu() / g.lambda;
  SpectralField iu(g);
  std::vector<double> kin(state.u.coeffs.size()), mas(state.u.coeffs.size());
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) {
      const size_t i = static_cast<size_t>(ix) * g.ny + iy;
      const FreqPoint xi = g.freq_point(ix, iy);
      const double m = m_xi(xi, im);
      const double c2 = std::norm(state.u.coeffs[i]);
      const double grad = 2.0 * M_PI * xi.norm();
      kin[i] = grad * grad * m * m * c2;
      mas[i] = c2;
      iu.coeffs[i] = m * state.u.coeffs[i];
    }
  EnergyValue e;
  e.kinetic = 0.5 * w * pairwise_sum(kin);
  e.mass = w * pairwise_sum(mas);
  PhysicalField v = inverse_transform(iu);
  std::vector<double> p4(v.values.size());
  for (size_t i = 0; i < v.values.size(); ++i) {
    double a2 = std::norm(v.values[i]);
    p4[i] = a2 * a2;
  }
  e.potential = 0.25 * g.dx() * g.dy() * pairwise_sum(p4);
  e.E = e.kinetic + e.potential;
  return e;
}

namespace {

double dyadic_of(double r) {
  if (r <= 1.0) return 1.0;
  return std::exp2(std::floor(std::log2(r)));
}

void check_sigma4(const std::array<FreqPoint, 4>& xi) {
  double smu = xi[0].mu + xi[1].mu + xi[2].mu + xi[3].mu;
  double seta = xi[0].eta + xi[1].eta + xi[2].eta + xi[3].eta;
  double scale = 1.0;
  for (const FreqPoint& p : xi) scale = std::max(scale, std::abs(p.mu) + std::abs(p.eta));
  if (std::abs(smu) > 1e-9 * scale || std::abs(seta) > 1e-9 * scale)
    throw std::invalid_argument("quadrilinear multiplier: frequencies must sum to zero");
}

struct Quad {
  double r[4];      // |xi_j|
  double n2[4];     // |xi_j|^2
  double mu12, eta12, mu14, eta14;
  double nmax;      // max dyadic magnitude
  double rmax;
};

Quad quad_of(const std::array<FreqPoint, 4>& xi) {
  Quad q;
  q.rmax = 0.0;
  for (int j = 0; j < 4; ++j) {
    q.n2[j] = xi[j].norm2();
    q.r[j] = std::sqrt(q.n2[j]);
    q.rmax = std::max(q.rmax, q.r[j]);
  }
  q.nmax = dyadic_of(q.rmax);
  q.mu12 = xi[0].mu + xi[1].mu;
  q.eta12 = xi[0].eta + xi[1].eta;
  q.mu14 = xi[0].mu + xi[3].mu;
  q.eta14 = xi[0].eta + xi[3].eta;
  return q;
}

// S membership from precomputed quad data: the pair (xi1+xi2, xi1+xi4) is
// non-orthogonal at scale 1/Nmax, or all frequencies are <= N/3.
bool in_S(const Quad& q, const IMultiplier& im) {
  if (im.trivial() || 3.0 * q.rmax <= im.N) return true;
  const double a2 = q.mu12 * q.mu12 + q.eta12 * q.eta12;
  const double b2 = q.mu14 * q.mu14 + q.eta14 * q.eta14;
  if (a2 == 0.0 || b2 == 0.0) return false;
  const double dot = q.mu12 * q.mu14 + q.eta12 * q.eta14;
  return std::abs(dot) >= std::sqrt(a2 * b2) / q.nmax;
}

double lambda4_from(const Quad& q, const IMultiplier& im) {
  if (!in_S(q, im)) return 0.0;
  if (im.trivial() || 3.0 * q.rmax <= im.N) return 1.0; // all m = 1: numerator == denominator
  const double denom = q.n2[0] - q.n2[1] + q.n2[2] - q.n2[3];
  if (std::abs(denom) < 1e-9 * std::max(1.0, q.rmax * q.rmax)) return 0.0;
  double num = 0.0;
  for (int j = 0; j < 4; ++j) {
    const double m = m_radial(q.r[j], im);
    num += (j % 2 == 0 ? 1.0 : -1.0) * m * m * q.n2[j];
  }
  return num / denom;
}

} // namespace

bool indicator_S(const std::array<FreqPoint, 4>& xi, const IMultiplier& im) {
  check_sigma4(xi);
  return in_S(quad_of(xi), im);
}

double lambda4(const std::array<FreqPoint, 4>& xi, const IMultiplier& im) {
  check_sigma4(xi);
  return lambda4_from(quad_of(xi), im);
}

double lambda6(const std::array<FreqPoint, 6>& xi, const IMultiplier& im) {
  auto merged = [&](int a, int b, int c) {
    return FreqPoint{xi[a].mu + xi[b].mu + xi[c].mu, xi[a].eta + xi[b].eta + xi[c].eta};
  };
  double v = 0.0;
  v += lambda4({merged(0, 1, 2), xi[3], xi[4], xi[5]}, im);
  v -= lambda4({xi[0], merged(1, 2, 3), xi[4], xi[5]}, im);
  v += lambda4({xi[0], xi[1], merged(2, 3, 4), xi[5]}, im);
  v -= lambda4({xi[0], xi[1], xi[2], merged(3, 4, 5)}, im);
  return v;
}

double multiplier_A(const std::array<FreqPoint, 4>& xi, const IMultiplier& im, bool squared) {
  check_sigma4(xi);
  Quad q = quad_of(xi);
  if (in_S(q, im)) return 0.0;
  double v = 0.0;
  for (int j = 0; j < 4; ++j) {
    double m = m_radial(q.r[j], im);
    double mp = squared ? m * m : m;
    v += (j % 2 == 0 ? 1.0 : -1.0) * mp * q.n2[j];
  }
  return v;
}

E0Value modified_energy_E0(const NlsState& state, const IMultiplier& im, const E0Options& opts) {
  const WaveguideGeometry& g = state.u.geometry;
  const double w = g.dmu() / g.lambda;
  const size_t total = state.u.coeffs.size();

  // Per-grid-point tables (frequency, |xi|^2, multiplier value).
  std::vector<double> gmu(total), geta(total), gr2(total), gm(total);
  double maxabs = 0.0;
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) {
      const size_t i = static_cast<size_t>(ix) * g.ny + iy;
      FreqPoint xi = g.freq_point(ix, iy);
      gmu[i] = xi.mu;
      geta[i] = xi.eta;
      gr2[i] = xi.norm2();
      gm[i] = m_xi(xi, im);
      maxabs = std::max(maxabs, std::abs(state.u.coeffs[i]));
    }

  E0Value out;
  {
    std::vector<double> quad(total), mass1(total);
    for (size_t i = 0; i < total; ++i) {
      double c2 = std::norm(state.u.coeffs[i]);
      double grad = 2.0 * M_PI * std::sqrt(gr2[i]);
      quad[i] = grad * grad * gm[i] * gm[i] * c2;
    }
    out.quadratic = 0.5 * w * pairwise_sum(quad);
  }
  if (maxabs == 0.0) {
    out.E0 = out.quadratic;
    return out;
  }

  // Support for slots 1..3 of the Sigma_4 sum: coefficients above the relative
  // floor, largest-magnitude first, capped so the triple count fits the budget.
  std::vector<size_t> sup;
  for (size_t i = 0; i < total; ++i)
    if (std::abs(state.u.coeffs[i]) >= opts.coeff_floor * maxabs) sup.push_back(i);
  std::sort(sup.begin(), sup.end(), [&](size_t a, size_t b) {
    return std::norm(state.u.coeffs[a]) > std::norm(state.u.coeffs[b]);
  });
  size_t n = sup.size();
  while (n > 1 && static_cast<int64_t>(n) * n * n > opts.triple_budget) --n;

  std::vector<double> drop_abs;
  for (size_t i = 0; i < total; ++i) drop_abs.push_back(std::abs(state.u.coeffs[i]));
  double s_all = w * pairwise_sum(drop_abs);
  double s_kept = 0.0;
  {
    std::vector<double> kept;
    for (size_t t = 0; t < n; ++t) kept.push_back(std::abs(state.u.coeffs[sup[t]]));
    s_kept = w * pairwise_sum(kept);
  }

  // Signed lattice coordinates per support entry.
  const int nx = g.nx, ny = g.ny;
  std::vector<int> sj(n), sk(n);
  for (size_t t = 0; t < n; ++t) {
    sj[t] = WaveguideGeometry::signed_index(static_cast<int>(sup[t]) / ny, nx);
    sk[t] = WaveguideGeometry::signed_index(static_cast<int>(sup[t]) % ny, ny);
  }

  // Sum over (xi1, zeta2, xi3) in support^3 with xi2 = -zeta2, xi4 closing the
  // quadruple; slot 4 is looked up on the full grid so small closing
  // coefficients are never dropped.
  const double Ncut = im.trivial() ? std::numeric_limits<double>::infinity() : im.N;
  std::vector<complexd> partials(n, complexd(0.0));
  int64_t triples = 0;
  double lam_max = 1.0;
  for (size_t a = 0; a < n; ++a) {
    const size_t ia = sup[a];
    const complexd ca = state.u.coeffs[ia];
    complexd acc(0.0);
    for (size_t b = 0; b < n; ++b) {
      const size_t ib = sup[b];
      const complexd cab = ca * std::conj(state.u.coeffs[ib]);
      const double mu12 = gmu[ia] - gmu[ib], eta12 = geta[ia] - geta[ib];
      const double d12 = gr2[ia] - gr2[ib];
      const double rmax_ab = std::max(gr2[ia], gr2[ib]);
      const int jab = sj[a] - sj[b], kab = sk[a] - sk[b];
      for (size_t c = 0; c < n; ++c) {
        const size_t ic = sup[c];
        // zeta4 = xi1 + xi3 - zeta2 on the signed lattice (no wraparound).
        const int j4 = jab + sj[c];
        const int k4 = kab + sk[c];
        if (j4 < -nx / 2 || j4 > nx / 2 - 1 || k4 < -ny / 2 || k4 > ny / 2 - 1) continue;
        const size_t i4 =
            static_cast<size_t>((j4 + nx) % nx) * ny + static_cast<size_t>((k4 + ny) % ny);
        const complexd c4 = state.u.coeffs[i4];
        if (c4 == complexd(0.0)) continue;
        ++triples;
        // Lambda4(xi1, -zeta2, xi3, -zeta4), all quantities radial in the
        // support tables.
        const double r21 = gr2[ia], r22 = gr2[ib], r23 = gr2[ic], r24 = gr2[i4];
        const double rmax2 = std::max(std::max(rmax_ab, r23), r24);
        double lam;
        if (9.0 * rmax2 <= Ncut * Ncut) {
          lam = 1.0;
        } else {
          const double mu14 = gmu[ia] - gmu[i4], eta14 = geta[ia] - geta[i4];
          const double a2 = mu12 * mu12 + eta12 * eta12;
          const double b2 = mu14 * mu14 + eta14 * eta14;
          const double dot = mu12 * mu14 + eta12 * eta14;
          const double nmax = dyadic_of(std::sqrt(rmax2));
          if (a2 == 0.0 || b2 == 0.0 || std::abs(dot) < std::sqrt(a2 * b2) / nmax) {
            lam = 0.0; // outside S
          } else {
            const double denom = d12 + r23 - r24;
            if (std::abs(denom) < 1e-9 * std::max(1.0, rmax2)) {
              lam = 0.0;
            } else {
              lam = (gm[ia] * gm[ia] * r21 - gm[ib] * gm[ib] * r22 + gm[ic] * gm[ic] * r23 -
                     gm[i4] * gm[i4] * r24) /
                    denom;
            }
          }
        }
        if (lam == 0.0) continue;
        lam_max = std::max(lam_max, std::abs(lam));
        acc += lam * (cab * state.u.coeffs[ic] * std::conj(c4));
      }
    }
    partials[a] = acc;
  }
  complexd quart = pairwise_sum(partials);
  out.quartic = 0.25 * opts.norm_const * w * w * w * quart.real();
  out.triples = triples;
  out.support = static_cast<int>(n);
  const double s_drop = std::max(0.0, s_all - s_kept);
  out.truncation_bound = 0.75 * opts.norm_const * lam_max * s_drop * s_all * s_all * s_all;
  out.E0 = out.quadratic + out.quartic;
  return out;
}

double time_window(double t, double delta) {
  if (t <= 0.0 || t >= delta) return 0.0;
  const double q = delta / 4.0;
  return smooth_step01(t / q) * smooth_step01((delta - t) / q);
}

namespace {

// DFT of modulated window samples v_j = window(t_j) e^{-2 pi i t_j offset} on
// t_j = j delta / n; returns (delta/n) * DFT in natural order.
std::vector<complexd> window_dft(double delta, int nt, double offset) {
  std::vector<complexd> v(nt);
  for (int j = 0; j < nt; ++j) {
    double tj = j * delta / nt;
    v[j] = time_window(tj, delta) * std::polar(1.0, -2.0 * M_PI * tj * offset);
  }
  std::vector<complexd> out(nt);
  for (int m = 0; m < nt; ++m) {
    std::vector<complexd> terms(nt);
    for (int j = 0; j < nt; ++j)
      terms[j] = v[j] * std::polar(1.0, -2.0 * M_PI * j * m / static_cast<double>(nt));
    out[m] = (delta / nt) * pairwise_sum(terms);
  }
  return out;
}

double bracket(double a) { return std::sqrt(1.0 + a * a); }

} // namespace

double window_hb_norm(double delta, int nt, double b, double offset) {
  auto dft = window_dft(delta, nt, offset);
  std::vector<double> terms(nt);
  for (int m = 0; m < nt; ++m) {
    double tau = WaveguideGeometry::signed_index(m, nt) / delta;
    terms[m] = std::pow(bracket(tau + offset), 2.0 * b) * std::norm(dft[m]);
  }
  return std::sqrt(pairwise_sum(terms) / delta);
}

double xsb_norm(const std::vector<SpectralField>& trajectory, double delta, double s, double b) {
  const int nt = static_cast<int>(trajectory.size());
  if (nt < 16) throw std::invalid_argument("xsb_norm: need at least 16 time samples");
  if (!(delta > 0.0)) throw std::invalid_argument("xsb_norm: delta must be positive");
  const WaveguideGeometry& g = trajectory[0].geometry;
  for (const SpectralField& f : trajectory)
    if (!g.same_grid(f.geometry)) throw std::invalid_argument("xsb_norm: geometry mismatch");
  const double wk = g.dmu() / g.lambda;

  // Window each mode's time series, DFT, and weight on the recentered
  // dispersion lattice tau + 2*pi*|xi|^2.
  std::vector<double> win(nt);
  std::vector<complexd> tw(static_cast<size_t>(nt) * nt);
  for (int j = 0; j < nt; ++j) {
    win[j] = time_window(j * delta / nt, delta);
    for (int m = 0; m < nt; ++m)
      tw[static_cast<size_t>(j) * nt + m] =
          std::polar(1.0, -2.0 * M_PI * j * m / static_cast<double>(nt));
  }
  double maxabs = 0.0;
  for (const SpectralField& f : trajectory)
    for (const complexd& z : f.coeffs) maxabs = std::max(maxabs, std::abs(z));
  if (maxabs == 0.0) return 0.0;

  std::vector<double> contrib;
  std::vector<complexd> series(nt), dft(nt);
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) {
      const size_t i = static_cast<size_t>(ix) * g.ny + iy;
      bool live = false;
      for (int j = 0; j < nt && !live; ++j)
        live = std::abs(trajectory[j].coeffs[i]) >= 1e-9 * maxabs;
      if (!live) continue;
      for (int j = 0; j < nt; ++j) series[j] = win[j] * trajectory[j].coeffs[i];
      for (int m = 0; m < nt; ++m) {
        std::vector<complexd> terms(nt);
        for (int j = 0; j < nt; ++j) terms[j] = series[j] * tw[static_cast<size_t>(j) * nt + m];
        dft[m] = (delta / nt) * pairwise_sum(terms);
      }
      const FreqPoint xi = g.freq_point(ix, iy);
      const double disp = 2.0 * M_PI * xi.norm2();
      const double xw = std::pow(bracket(xi.norm()), 2.0 * s);
      std::vector<double> terms(nt);
      for (int m = 0; m < nt; ++m) {
        double tau = WaveguideGeometry::signed_index(m, nt) / delta;
        terms[m] = std::pow(bracket(tau + disp), 2.0 * b) * std::norm(dft[m]);
      }
      contrib.push_back(xw * wk * pairwise_sum(terms) / delta);
    }
  return std::sqrt(pairwise_sum(contrib) / 1.0);
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need >= 2 matched samples");
  const size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (size_t i = 0; i < n; ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(std::max(y[i], 1e-18));
  }
  double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < n; ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  return num / den;
}

SpectralField make_seeded_data(const WaveguideGeometry& g, uint64_t seed, double amplitude,
                               double decay) {
  g.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, M_SQRT1_2);
  SpectralField f(g);
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) {
      double r = g.freq_point(ix, iy).norm();
      complexd z(gauss(rng), gauss(rng));
      f.at(ix, iy) = amplitude * z / std::pow(1.0 + r, decay);
    }
  f.at(0, 0) = complexd(0.0);
  return f;
}

IncrementReport increment_experiment(const SpectralField& u0, double s,
                                     const std::vector<double>& Ns, double delta, double dt,
                                     double c0, const E0Options& opts, bool with_xsb) {
  IncrementReport rep;
  std::vector<double> ns, gaps, incs;
  for (double N : Ns) {
    IncrementRow row;
    row.N = N;
    IMultiplier im{N, s};
    // Grow c until the rescaled initial modified energy is admissible.
    double c = c0;
    SpectralField ulam;
    EnergyValue e0v;
    for (int iter = 0;; ++iter) {
      row.lambda = std::max(1.0, choose_lambda(s, 1.0, N, c));
      ulam = rescale(u0, row.lambda);
      e0v = energy_Iu(NlsState{0.0, ulam, dt}, im);
      if (e0v.E <= 1.0 / 3.0 || iter >= 60) break;
      c *= 2.0;
    }
    row.c_used = c;
    if (e0v.E > 1.0 / 3.0)
      throw std::runtime_error("increment_experiment: could not reach E(Iu(0)) <= 1/3");

    NlsState st{0.0, std::move(ulam), dt};
    const int steps = std::max(1, static_cast<int>(std::llround(delta / dt)));
    row.E_Iu_0 = e0v.E;
    E0Value z0 = modified_energy_E0(st, im, opts);
    row.E0_0 = z0.E0;
    double mass0 = e0v.mass;

    NlsState end;
    double xsb = 0.0;
    if (with_xsb) {
      const int snaps = 32;
      std::vector<SpectralField> traj;
      traj.reserve(snaps);
      NlsState cur = st;
      int done = 0;
      for (int j = 0; j < snaps; ++j) {
        int target = static_cast<int>(static_cast<int64_t>(steps) * j / snaps);
        cur = split_step_evolve(cur, target - done);
        done = target;
        traj.push_back(cur.u);
      }
      end = split_step_evolve(cur, steps - done);
      xsb = xsb_norm(traj, delta, s, 0.6);
    } else {
      end = split_step_evolve(st, steps);
    }
    EnergyValue e1v = energy_Iu(end, im);
    E0Value z1 = modified_energy_E0(end, im, opts);
    row.E_Iu_1 = e1v.E;
    row.E0_1 = z1.E0;
    row.gap_0 = std::abs(row.E_Iu_0 - row.E0_0);
    row.gap_1 = std::abs(row.E_Iu_1 - row.E0_1);
    row.increment = std::abs(row.E0_1 - row.E0_0);
    row.mass_drift = std::abs(e1v.mass - mass0);
    row.xsb = xsb;
    rep.rows.push_back(row);
    ns.push_back(N);
    gaps.push_back(std::max(row.gap_0, row.gap_1));
    incs.push_back(row.increment);
  }
  if (ns.size() >= 2) {
    rep.gap_slope = fit_loglog_slope(ns, gaps);
    rep.increment_slope = fit_loglog_slope(ns, incs);
  }
  return rep;
}

} // namespace wglab
