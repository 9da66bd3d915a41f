#ifndef WGLAB_FOURIER_HPP
#define WGLAB_FOURIER_HPP

#include <functional>

#include "wglab/field.hpp"

namespace wglab {

// Fourier convention (fixed throughout the lab, stated in README):
//   fhat(xi) = int_{[-L,L) x [0,lambda)} f(z) e^{-2*pi*i z.xi} dz
//   f(z)     = int fhat(xi) e^{+2*pi*i z.xi} (dxi)_lambda
// where (dxi)_lambda = (1/lambda) sum_k dmu is the semi-discrete measure:
//   int a (dxi)_lambda = (dmu/lambda) * sum over grid points.
// With these weights Plancherel holds exactly on the grid.

SpectralField forward_transform(const PhysicalField& f);
PhysicalField inverse_transform(const SpectralField& F);

// int a (dk)_lambda for samples a on the full frequency grid.
double lambda_measure_integrate(const WaveguideGeometry& g, const std::vector<double>& samples);

// Composite-Simpson quadrature of t -> integrand(t) over [t0, t1] with nt
// subintervals (rounded up to even).
double simpson_integrate(const std::function<double(double)>& integrand, double t0, double t1,
                         int nt);

// sqrt( int_{t0}^{t1} ||u(t)||_{L^2}^2 dt ) by composite Simpson; nt >= 16.
double l2_spacetime_norm(const std::function<PhysicalField(double)>& u, double t0, double t1,
                         int nt);

} // namespace wglab

#endif
