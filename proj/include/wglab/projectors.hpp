#ifndef WGLAB_PROJECTORS_HPP
#define WGLAB_PROJECTORS_HPP

#include <optional>

#include "wglab/field.hpp"

namespace wglab {

// Dyadic frequency scale N = 2^j, j >= 0.
struct DyadicBand {
  double N = 1.0;

  void validate() const {
    if (!(N >= 1.0)) throw std::invalid_argument("DyadicBand: N must be >= 1");
    double l = std::log2(N);
    if (std::abs(l - std::round(l)) > 1e-12)
      throw std::invalid_argument("DyadicBand: N must be an exact power of two");
  }
};

// Angular sector centered at angle l*theta with half-width c_sector*theta.
// The default c_sector = 1.5 makes the family {l = 0..ceil(2*pi/theta)} a
// cover of [0, 2*pi) with pointwise overlap between 2 and 3 (membership uses
// strict inequality on the half-width).
struct AngularSector {
  double theta = 0.125;
  int l = 0;
  double c_sector = 1.5;

  double center() const { return l * theta; }
  bool contains(double angle) const {
    double d = std::fmod(std::abs(angle - center()), 2.0 * M_PI);
    if (d > M_PI) d = 2.0 * M_PI - d;
    return d < c_sector * theta;
  }
  bool contains(const FreqPoint& xi) const { return contains(xi.arg()); }
};

// Indicator constraints coupling a frequency pair (xi1, xi2).
enum class GapKind { XDiff, XSum, None };

struct PairConstraint {
  double gap_M = 0.0;
  GapKind gap_kind = GapKind::None;
  std::optional<double> angle_theta;                        // |cos angle(xi1,xi2)| <= theta
  std::optional<std::pair<AngularSector, AngularSector>> sectors;

  bool active() const {
    return (gap_kind != GapKind::None && gap_M > 0.0) || angle_theta.has_value() ||
           sectors.has_value();
  }

  bool admits(const FreqPoint& xi1, const FreqPoint& xi2) const {
    if (gap_kind == GapKind::XDiff && std::abs(xi1.mu - xi2.mu) < gap_M) return false;
    if (gap_kind == GapKind::XSum && std::abs(xi1.mu + xi2.mu) < gap_M) return false;
    if (angle_theta) {
      double n1 = xi1.norm(), n2 = xi2.norm();
      if (n1 == 0.0 || n2 == 0.0) return false;
      if (std::abs(xi1.dot(xi2)) / (n1 * n2) > *angle_theta) return false;
    }
    if (sectors) {
      if (!sectors->first.contains(xi1)) return false;
      if (!sectors->second.contains(xi2)) return false;
    }
    return true;
  }
};

// Smooth even bump: 1 on |r| <= 1, 0 on |r| >= 2, C-infinity in between
// (standard exp(-1/t) glue; bump(1.5) = 0.5 by symmetry).
double bump(double r);

// Free propagator: multiplies each coefficient by e^{-4*pi^2*i*|xi|^2*t}
// (e^{it Laplacian} under the 2*pi Fourier convention).
SpectralField propagate(const SpectralField& f, double t);
double propagator_phase(const FreqPoint& xi, double t); // the phase angle itself

// Littlewood-Paley pieces.  Smooth: multiplier bump(|xi|/N) - bump(2|xi|/N)
// (for N >= 2), so that P_{<=1} + sum_{N=2,4,...} P_N telescopes to
// bump(|xi|/Nmax).  Sharp: indicator of the half-open annulus N/2 < |xi| <= N.
SpectralField project_dyadic(const SpectralField& f, DyadicBand N, bool sharp);
// P_{<=N}: bump(|xi|/N) (smooth) or indicator |xi| <= N (sharp).
SpectralField project_dyadic_le(const SpectralField& f, DyadicBand N, bool sharp);

// Sharp restriction to an angular sector.
SpectralField project_sector(const SpectralField& f, const AngularSector& s);

// Sharp restriction to the closed axis-parallel cube of given side about center.
SpectralField cube_project(const SpectralField& f, const FreqPoint& center, double side);

} // namespace wglab

#endif
