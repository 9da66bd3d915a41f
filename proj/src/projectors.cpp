#include "wglab/projectors.hpp"

namespace wglab {

namespace {

double glue(double t) { // exp(-1/t) for t > 0, 0 otherwise
  return t > 0.0 ? std::exp(-1.0 / t) : 0.0;
}

template <typename Mult>
SpectralField apply_multiplier(const SpectralField& f, Mult&& m) {
  SpectralField out(f.geometry);
  const WaveguideGeometry& g = f.geometry;
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy)
      out.at(ix, iy) = m(g.freq_point(ix, iy)) * f.at(ix, iy);
  return out;
}

} // namespace

double bump(double r) {
  r = std::abs(r);
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  double a = glue(2.0 - r), b = glue(r - 1.0);
  return a / (a + b);
}

double propagator_phase(const FreqPoint& xi, double t) {
  return -4.0 * M_PI * M_PI * xi.norm2() * t;
}

SpectralField propagate(const SpectralField& f, double t) {
  return apply_multiplier(f, [t](const FreqPoint& xi) {
    return std::polar(1.0, propagator_phase(xi, t));
  });
}

SpectralField project_dyadic(const SpectralField& f, DyadicBand N, bool sharp) {
  N.validate();
  if (N.N > 2.0 * std::hypot(f.geometry.max_abs_mu(), f.geometry.max_abs_eta()))
    throw std::out_of_range("project_dyadic: band exceeds grid Nyquist range");
  if (sharp) {
    return apply_multiplier(f, [N](const FreqPoint& xi) {
      double r = xi.norm();
      return (r > N.N / 2.0 && r <= N.N) ? 1.0 : 0.0;
    });
  }
  return apply_multiplier(f, [N](const FreqPoint& xi) {
    double r = xi.norm();
    return bump(r / N.N) - bump(2.0 * r / N.N);
  });
}

SpectralField project_dyadic_le(const SpectralField& f, DyadicBand N, bool sharp) {
  N.validate();
  if (sharp) {
    return apply_multiplier(f,
                            [N](const FreqPoint& xi) { return xi.norm() <= N.N ? 1.0 : 0.0; });
  }
  return apply_multiplier(f, [N](const FreqPoint& xi) { return bump(xi.norm() / N.N); });
}

SpectralField project_sector(const SpectralField& f, const AngularSector& s) {
  if (!(s.theta > 0.0 && s.theta < 1.0))
    throw std::invalid_argument("project_sector: theta must be in (0,1)");
  return apply_multiplier(f, [&s](const FreqPoint& xi) {
    if (xi.mu == 0.0 && xi.eta == 0.0) return 0.0;
    return s.contains(xi) ? 1.0 : 0.0;
  });
}

SpectralField cube_project(const SpectralField& f, const FreqPoint& center, double side) {
  if (side < f.geometry.dmu())
    throw std::invalid_argument("cube_project: side smaller than frequency spacing");
  const double h = side / 2.0;
  return apply_multiplier(f, [&](const FreqPoint& xi) {
    return (std::abs(xi.mu - center.mu) <= h && std::abs(xi.eta - center.eta) <= h) ? 1.0 : 0.0;
  });
}

} // namespace wglab
