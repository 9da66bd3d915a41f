#include "wglab/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace wglab {

namespace {

// FFTW plan cache keyed by (nx, ny, sign).  Plan creation is not thread-safe,
// so it is serialized; execution via fftw_execute_dft on caller-owned arrays
// is safe.
struct PlanCache {
  std::mutex mtx;
  std::map<std::tuple<int, int, int>, fftw_plan> plans;

  fftw_plan get(int nx, int ny, int sign) {
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(nx, ny, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    // Plan on a scratch array; FFTW_ESTIMATE does not touch the data.
    std::vector<complexd> scratch(static_cast<size_t>(nx) * ny);
    fftw_plan p = fftw_plan_dft_2d(nx, ny, reinterpret_cast<fftw_complex*>(scratch.data()),
                                   reinterpret_cast<fftw_complex*>(scratch.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans[key] = p;
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run_fft(std::vector<complexd>& data, int nx, int ny, int sign) {
  fftw_plan p = cache().get(nx, ny, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data.data()),
                   reinterpret_cast<fftw_complex*>(data.data()));
}

} // namespace

SpectralField forward_transform(const PhysicalField& f) {
  const WaveguideGeometry& g = f.geometry;
  g.validate();
  if (f.values.size() != static_cast<size_t>(g.nx) * g.ny)
    throw std::invalid_argument("forward_transform: grid dimensions mismatch geometry");
  SpectralField F(g);
  F.coeffs = f.values;
  run_fft(F.coeffs, g.nx, g.ny, FFTW_FORWARD);
  // The x grid starts at -L, giving a phase e^{+2*pi*i*L*mu} = (-1)^m per
  // x-frequency slot of parity m; combined with the quadrature weight dx*dy.
  const double w = g.dx() * g.dy();
  for (int ix = 0; ix < g.nx; ++ix) {
    const double sgn = (ix % 2 == 0) ? w : -w;
    complexd* row = &F.coeffs[static_cast<size_t>(ix) * g.ny];
    for (int iy = 0; iy < g.ny; ++iy) row[iy] *= sgn;
  }
  return F;
}

PhysicalField inverse_transform(const SpectralField& F) {
  const WaveguideGeometry& g = F.geometry;
  g.validate();
  if (F.coeffs.size() != static_cast<size_t>(g.nx) * g.ny)
    throw std::invalid_argument("inverse_transform: grid dimensions mismatch geometry");
  PhysicalField f(g);
  f.values = F.coeffs;
  // Undo the -L offset phase, then unnormalized inverse FFT times the
  // frequency-measure weight dmu/lambda.
  const double w = g.dmu() / g.lambda;
  for (int ix = 0; ix < g.nx; ++ix) {
    const double sgn = (ix % 2 == 0) ? w : -w;
    complexd* row = &f.values[static_cast<size_t>(ix) * g.ny];
    for (int iy = 0; iy < g.ny; ++iy) row[iy] *= sgn;
  }
  run_fft(f.values, g.nx, g.ny, FFTW_BACKWARD);
  return f;
}

double lambda_measure_integrate(const WaveguideGeometry& g, const std::vector<double>& samples) {
  if (samples.size() != static_cast<size_t>(g.nx) * g.ny)
    throw std::invalid_argument("lambda_measure_integrate: sample count mismatch");
  return g.dmu() / g.lambda * pairwise_sum(samples);
}

double simpson_integrate(const std::function<double(double)>& integrand, double t0, double t1,
                         int nt) {
  if (!(t1 > t0)) throw std::invalid_argument("simpson_integrate: need t1 > t0");
  if (nt < 2) nt = 2;
  if (nt % 2 != 0) ++nt;
  const double h = (t1 - t0) / nt;
  std::vector<double> terms(static_cast<size_t>(nt) + 1);
  for (int i = 0; i <= nt; ++i) {
    double w = (i == 0 || i == nt) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    terms[i] = w * integrand(t0 + i * h);
  }
  return h / 3.0 * pairwise_sum(terms);
}

double l2_spacetime_norm(const std::function<PhysicalField(double)>& u, double t0, double t1,
                         int nt) {
  if (!(t1 > t0)) throw std::invalid_argument("l2_spacetime_norm: need t1 > t0");
  if (nt < 16) throw std::invalid_argument("l2_spacetime_norm: nt must be >= 16");
  double val = simpson_integrate([&](double t) { return u(t).l2_norm_sq(); }, t0, t1, nt);
  return std::sqrt(std::max(0.0, val));
}

} // namespace wglab
