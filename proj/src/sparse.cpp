#include "wglab/sparse.hpp"

#include <algorithm>
#include <unordered_set>

#include "wglab/summation.hpp"

namespace wglab {

namespace {

constexpr double kTwoPiSq4 = 4.0 * M_PI * M_PI;

// int_{t0}^{t1} e^{-4*pi^2*i*dsigma*t} dt.
complexd time_kernel(double dsigma, double t0, double t1) {
  double w = kTwoPiSq4 * dsigma;
  if (std::abs(w) * (t1 - t0) < 1e-8) {
    return std::polar(t1 - t0, -w * 0.5 * (t0 + t1));
  }
  complexd iw(0.0, -w);
  return (std::exp(iw * t1) - std::exp(iw * t0)) / iw;
}

void check_compatible(const SparseField& a, const SparseField& b) {
  if (a.lambda != b.lambda || a.dmu != b.dmu)
    throw std::invalid_argument("sparse product: lattice mismatch (lambda/dmu)");
}

} // namespace

double SparseField::l2_norm_sq() const {
  std::vector<double> t(modes.size());
  for (size_t i = 0; i < modes.size(); ++i) t[i] = std::norm(modes[i].c);
  return dmu / lambda * pairwise_sum(t);
}

int64_t output_key(int jmu, int k) {
  return static_cast<int64_t>(jmu) * 4194304LL + (static_cast<int64_t>(k) + 2097152LL);
}

std::vector<ProductTerm> build_pair_terms(const SparseField& f1, const SparseField& f2,
                                          const PairConstraint& c, bool conjugate_second,
                                          int64_t pair_budget) {
  check_compatible(f1, f2);
  int64_t pairs = static_cast<int64_t>(f1.modes.size()) * f2.modes.size();
  if (pairs > pair_budget)
    throw std::length_error("build_pair_terms: pair budget exceeded; band-limit the inputs");
  const double w = f1.dmu / f1.lambda;
  std::vector<ProductTerm> terms;
  terms.reserve(pairs);
  for (const SparseMode& m1 : f1.modes) {
    FreqPoint xi1 = f1.freq(m1);
    double n1sq = xi1.norm2();
    for (const SparseMode& m2 : f2.modes) {
      FreqPoint xi2 = f2.freq(m2);
      if (!c.admits(xi1, xi2)) continue;
      ProductTerm t;
      if (conjugate_second) {
        t.okey = output_key(m1.jmu - m2.jmu, m1.k - m2.k);
        t.sigma = n1sq - xi2.norm2();
        t.amp = m1.c * std::conj(m2.c) * w;
      } else {
        t.okey = output_key(m1.jmu + m2.jmu, m1.k + m2.k);
        t.sigma = n1sq + xi2.norm2();
        t.amp = m1.c * m2.c * w;
      }
      terms.push_back(t);
    }
  }
  std::sort(terms.begin(), terms.end(), [](const ProductTerm& a, const ProductTerm& b) {
    return a.okey != b.okey ? a.okey < b.okey : a.sigma < b.sigma;
  });
  return terms;
}

std::vector<ProductTerm> build_product_terms(const std::vector<SparseField>& fs,
                                             int64_t pair_budget) {
  if (fs.size() < 2) throw std::invalid_argument("build_product_terms: need >= 2 factors");
  for (size_t i = 1; i < fs.size(); ++i) check_compatible(fs[0], fs[i]);
  const double w = fs[0].dmu / fs[0].lambda;

  struct Partial {
    int jmu;
    int k;
    double sigma;
    complexd amp;
  };
  std::vector<Partial> acc;
  for (const SparseMode& m : fs[0].modes) {
    FreqPoint xi = fs[0].freq(m);
    acc.push_back({m.jmu, m.k, xi.norm2(), m.c});
  }
  for (size_t i = 1; i < fs.size(); ++i) {
    int64_t next = static_cast<int64_t>(acc.size()) * fs[i].modes.size();
    if (next > pair_budget)
      throw std::length_error("build_product_terms: pair budget exceeded");
    std::vector<Partial> out;
    out.reserve(next);
    for (const Partial& p : acc) {
      for (const SparseMode& m : fs[i].modes) {
        FreqPoint xi = fs[i].freq(m);
        out.push_back({p.jmu + m.jmu, p.k + m.k, p.sigma + xi.norm2(), p.amp * m.c * w});
      }
    }
    acc = std::move(out);
  }
  std::vector<ProductTerm> terms(acc.size());
  for (size_t i = 0; i < acc.size(); ++i)
    terms[i] = {output_key(acc[i].jmu, acc[i].k), acc[i].sigma, acc[i].amp};
  std::sort(terms.begin(), terms.end(), [](const ProductTerm& a, const ProductTerm& b) {
    return a.okey != b.okey ? a.okey < b.okey : a.sigma < b.sigma;
  });
  return terms;
}

double l2_time_integral(const std::vector<ProductTerm>& terms, double w_out, double t0,
                        double t1) {
  if (!(t1 > t0)) throw std::invalid_argument("l2_time_integral: need t1 > t0");
  std::vector<double> group_sums;
  size_t i = 0;
  while (i < terms.size()) {
    size_t j = i;
    while (j < terms.size() && terms[j].okey == terms[i].okey) ++j;
    double s = 0.0;
    for (size_t p = i; p < j; ++p) {
      s += std::norm(terms[p].amp) * (t1 - t0);
      for (size_t q = p + 1; q < j; ++q) {
        complexd k = time_kernel(terms[p].sigma - terms[q].sigma, t0, t1);
        s += 2.0 * std::real(terms[p].amp * std::conj(terms[q].amp) * k);
      }
    }
    group_sums.push_back(s);
    i = j;
  }
  return w_out * pairwise_sum(group_sums);
}

double spatial_l2_at(const std::vector<ProductTerm>& terms, double w_out, double t) {
  std::vector<double> group_sums;
  size_t i = 0;
  while (i < terms.size()) {
    size_t j = i;
    while (j < terms.size() && terms[j].okey == terms[i].okey) ++j;
    complexd acc = 0.0;
    for (size_t p = i; p < j; ++p)
      acc += terms[p].amp * std::polar(1.0, -kTwoPiSq4 * terms[p].sigma * t);
    group_sums.push_back(std::norm(acc));
    i = j;
  }
  return std::sqrt(w_out * pairwise_sum(group_sums));
}

complexd eval_free_solution(const SparseField& f, double x, double y, double t) {
  const double w = f.dmu / f.lambda;
  std::vector<complexd> terms(f.modes.size());
  for (size_t i = 0; i < f.modes.size(); ++i) {
    FreqPoint xi = f.freq(f.modes[i]);
    double phase = 2.0 * M_PI * (x * xi.mu + y * xi.eta) - kTwoPiSq4 * xi.norm2() * t;
    terms[i] = f.modes[i].c * std::polar(w, phase);
  }
  return pairwise_sum(terms);
}

SparseField random_band_field(double lambda, double dmu, double Nlo, double Nhi,
                              const std::optional<AngularSector>& sector, int max_modes,
                              std::mt19937_64& rng) {
  SparseField f;
  f.lambda = lambda;
  f.dmu = dmu;
  const int jmax = static_cast<int>(std::ceil(Nhi / dmu));
  const int kmax = static_cast<int>(std::ceil(Nhi * lambda));
  std::uniform_int_distribution<int> jd(-jmax, jmax), kd(-kmax, kmax);
  std::normal_distribution<double> gauss(0.0, M_SQRT1_2);
  std::unordered_set<int64_t> seen;
  const int64_t attempts_cap = 4000LL * max_modes + 100000;
  for (int64_t a = 0; a < attempts_cap && static_cast<int>(f.modes.size()) < max_modes; ++a) {
    int j = jd(rng), k = kd(rng);
    FreqPoint xi{j * dmu, k / lambda};
    double r = xi.norm();
    if (r < Nlo || r > Nhi) continue;
    if (sector && !sector->contains(xi)) continue;
    if (!seen.insert(output_key(j, k)).second) continue;
    f.modes.push_back({j, k, complexd(gauss(rng), gauss(rng))});
  }
  return f;
}

SparseField indicator_box_field(double lambda, double dmu, const LatticeBox& box) {
  SparseField f;
  f.lambda = lambda;
  f.dmu = dmu;
  f.modes.reserve(box.count());
  for (int j = box.jlo; j <= box.jhi; ++j)
    for (int k = box.klo; k <= box.khi; ++k) f.modes.push_back({j, k, complexd(1.0, 0.0)});
  return f;
}

namespace {

// Histogram of (j2 - j2')*(j2 + j2' - jo) over all output slots jo and pairs
// (j2, j2') in the slot's index rectangle; the separable half of the exact
// pair-sum time integral for indicator boxes.
std::vector<std::pair<int64_t, int64_t>> difference_histogram(int lo1, int hi1, int lo2,
                                                              int hi2) {
  int64_t pmax = hi2 - lo2;
  int64_t qmax = std::max(std::abs(static_cast<int64_t>(lo2) - hi1),
                          std::abs(static_cast<int64_t>(hi2) - lo1));
  int64_t amax = std::max<int64_t>(1, pmax * qmax);
  if (amax > 50000000)
    throw std::length_error("box_product: histogram range too large");
  std::vector<int64_t> hist(2 * amax + 1, 0);
  for (int jo = lo1 + lo2; jo <= hi1 + hi2; ++jo) {
    int a = std::max(lo2, jo - hi1), b = std::min(hi2, jo - lo1);
    for (int j2 = a; j2 <= b; ++j2)
      for (int j2p = a; j2p <= b; ++j2p) {
        int64_t v = static_cast<int64_t>(j2 - j2p) * (j2 + j2p - jo);
        ++hist[v + amax];
      }
  }
  std::vector<std::pair<int64_t, int64_t>> nz;
  for (int64_t v = -amax; v <= amax; ++v)
    if (hist[v + amax] != 0) nz.emplace_back(v, hist[v + amax]);
  return nz;
}

} // namespace

double box_product_l2_time_integral(double lambda, double dmu, const LatticeBox& box1,
                                    const LatticeBox& box2, double t0, double t1) {
  if (!(t1 > t0)) throw std::invalid_argument("box_product: need t1 > t0");
  auto ha = difference_histogram(box1.jlo, box1.jhi, box2.jlo, box2.jhi);
  auto hb = difference_histogram(box1.klo, box1.khi, box2.klo, box2.khi);
  const double w = dmu / lambda;
  // Delta sigma between two pairs sharing an output slot splits as
  // 2*dmu^2*a + 2*b/lambda^2 with integers a, b from the two histograms.
  std::vector<double> partials;
  partials.reserve(ha.size());
  for (const auto& [a, na] : ha) {
    double s = 0.0;
    for (const auto& [b, nb] : hb) {
      double dsigma = 2.0 * dmu * dmu * a + 2.0 * b / (lambda * lambda);
      s += static_cast<double>(nb) * std::real(time_kernel(dsigma, t0, t1));
    }
    partials.push_back(static_cast<double>(na) * s);
  }
  return w * w * w * pairwise_sum(partials);
}

} // namespace wglab
