#include "doctest.h"

#include <random>
#include <set>

#include "wglab/bilinear.hpp"
#include "wglab/fourier.hpp"
#include "wglab/sparse.hpp"

using namespace wglab;

namespace {

// Dense geometry whose lattice matches a sparse field with dmu = 1/(2L).
WaveguideGeometry matching_geometry(double lambda, double dmu, int nx, int ny) {
  return WaveguideGeometry{lambda, 1.0 / (2.0 * dmu), nx, ny};
}

SpectralField embed(const SparseField& f, const WaveguideGeometry& g) {
  REQUIRE(g.lambda == f.lambda);
  REQUIRE(g.dmu() == doctest::Approx(f.dmu).epsilon(1e-14));
  SpectralField out(g);
  for (const SparseMode& m : f.modes) {
    REQUIRE(std::abs(m.jmu) < g.nx / 2);
    REQUIRE(std::abs(m.k) < g.ny / 2);
    out.at((m.jmu + g.nx) % g.nx, (m.k + g.ny) % g.ny) += m.c;
  }
  return out;
}

SparseField small_random_sparse(double lambda, double dmu, int jmax, int kmax, int count,
                                uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> ju(-jmax, jmax), ku(-kmax, kmax);
  std::normal_distribution<double> gauss;
  SparseField f;
  f.lambda = lambda;
  f.dmu = dmu;
  std::set<std::pair<int, int>> seen;
  while (static_cast<int>(f.modes.size()) < count) {
    int j = ju(rng), k = ku(rng);
    if (!seen.insert({j, k}).second) continue;
    f.modes.push_back({j, k, complexd(gauss(rng), gauss(rng))});
  }
  return f;
}

PhysicalField pointwise_product(const PhysicalField& a, const PhysicalField& b, bool conj_b) {
  PhysicalField out(a.geometry);
  for (size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = a.values[i] * (conj_b ? std::conj(b.values[i]) : b.values[i]);
  return out;
}

} // namespace

TEST_CASE("k factor closed forms") {
  CHECK(k_factor(1.0, DyadicBand{8.0}, DyadicBand{8.0}, 2) == doctest::Approx(2.0));
  CHECK(k_factor(4.0, DyadicBand{16.0}, DyadicBand{2.0}, 2) == doctest::Approx(0.375));
  CHECK(k_factor(2.0, DyadicBand{8.0}, DyadicBand{4.0}, 3) == doctest::Approx(2.5));
  CHECK_THROWS(k_factor(1.0, DyadicBand{8.0}, DyadicBand{8.0}, 1));
  CHECK_THROWS(k_factor(1.0, DyadicBand{4.0}, DyadicBand{8.0}, 2));
}

TEST_CASE("sparse free solution matches dense inverse transform") {
  const double lambda = 2.0, dmu = 1.0 / 32.0;
  WaveguideGeometry g = matching_geometry(lambda, dmu, 64, 8);
  SparseField f = small_random_sparse(lambda, dmu, 12, 3, 10, 51);
  SpectralField dense = embed(f, g);
  for (double t : {0.0, 0.3}) {
    PhysicalField u = inverse_transform(propagate(dense, t));
    for (int ix = 0; ix < g.nx; ix += 7)
      for (int iy = 0; iy < g.ny; ++iy) {
        complexd want = u.at(ix, iy);
        complexd got = eval_free_solution(f, g.x(ix), g.y(iy), t);
        CHECK(std::abs(want - got) < 1e-10);
      }
  }
  CHECK(f.l2_norm_sq() == doctest::Approx(dense.l2_norm_sq()).epsilon(1e-12));
}

TEST_CASE("pair terms reproduce the dense product norm at fixed times") {
  const double lambda = 2.0, dmu = 1.0 / 32.0;
  WaveguideGeometry g = matching_geometry(lambda, dmu, 128, 16);
  SparseField f1 = small_random_sparse(lambda, dmu, 10, 3, 8, 61);
  SparseField f2 = small_random_sparse(lambda, dmu, 10, 3, 8, 62);
  SpectralField d1 = embed(f1, g), d2 = embed(f2, g);
  PairConstraint none;
  for (bool conj : {false, true}) {
    auto terms = build_pair_terms(f1, f2, none, conj);
    for (double t : {0.0, 0.45}) {
      PhysicalField u1 = inverse_transform(propagate(d1, t));
      PhysicalField u2 = inverse_transform(propagate(d2, t));
      double want = pointwise_product(u1, u2, conj).l2_norm();
      double got = spatial_l2_at(terms, dmu / lambda, t);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("closed-form time integral matches Simpson quadrature") {
  const double lambda = 1.0, dmu = 1.0 / 16.0;
  SparseField f1 = small_random_sparse(lambda, dmu, 8, 2, 6, 71);
  SparseField f2 = small_random_sparse(lambda, dmu, 8, 2, 6, 72);
  PairConstraint none;
  auto terms = build_pair_terms(f1, f2, none, false);
  const double w = dmu / lambda;
  auto sq = [&](double t) {
    double v = spatial_l2_at(terms, w, t);
    return v * v;
  };
  double exact = l2_time_integral(terms, w, 0.0, 1.0);
  double simpson = simpson_integrate(sq, 0.0, 1.0, 800);
  CHECK(exact == doctest::Approx(simpson).epsilon(1e-7));
  // Additivity over subintervals.
  CHECK(l2_time_integral(terms, w, 0.0, 0.4) + l2_time_integral(terms, w, 0.4, 1.0) ==
        doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("triple products match the dense oracle") {
  const double lambda = 1.0, dmu = 1.0 / 16.0;
  WaveguideGeometry g = matching_geometry(lambda, dmu, 128, 16);
  std::vector<SparseField> fs = {small_random_sparse(lambda, dmu, 6, 2, 5, 81),
                                 small_random_sparse(lambda, dmu, 6, 2, 5, 82),
                                 small_random_sparse(lambda, dmu, 6, 2, 5, 83)};
  auto terms = build_product_terms(fs);
  for (double t : {0.0, 0.2}) {
    PhysicalField prod = inverse_transform(propagate(embed(fs[0], g), t));
    for (int j = 1; j < 3; ++j)
      prod = pointwise_product(prod, inverse_transform(propagate(embed(fs[j], g), t)), false);
    CHECK(spatial_l2_at(terms, dmu / lambda, t) ==
          doctest::Approx(prod.l2_norm()).epsilon(1e-9));
  }
}

TEST_CASE("box-product fast path equals the generic pair path") {
  const double lambda = 4.0, dmu = 1.0 / 32.0;
  LatticeBox b1{-3, 5, 7, 12};
  LatticeBox b2{40, 46, -2, 3};
  SparseField f1 = indicator_box_field(lambda, dmu, b1);
  SparseField f2 = indicator_box_field(lambda, dmu, b2);
  CHECK(static_cast<int64_t>(f1.modes.size()) == b1.count());
  PairConstraint none;
  auto terms = build_pair_terms(f1, f2, none, false);
  double generic = l2_time_integral(terms, dmu / lambda, 0.0, 1.0);
  double fast = box_product_l2_time_integral(lambda, dmu, b1, b2, 0.0, 1.0);
  CHECK(fast == doctest::Approx(generic).epsilon(1e-10));
}

TEST_CASE("constrained dense form reduces to propagate-then-multiply") {
  WaveguideGeometry g{1.0, 8.0, 64, 8};
  std::mt19937_64 rng(91);
  std::normal_distribution<double> gauss;
  SpectralField f1(g), f2(g);
  // Keep supports in the inner half-lattice so the grid product is alias-free.
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) {
      int j = WaveguideGeometry::signed_index(ix, g.nx);
      int k = WaveguideGeometry::signed_index(iy, g.ny);
      if (std::abs(j) > g.nx / 8 || std::abs(k) > g.ny / 8) continue;
      f1.at(ix, iy) = complexd(gauss(rng), gauss(rng));
      f2.at(ix, iy) = complexd(gauss(rng), gauss(rng));
    }
  PairConstraint none;
  for (double t : {0.0, 0.31}) {
    PhysicalField got = constrained_bilinear_form(f1, f2, none, false, t);
    PhysicalField u1 = inverse_transform(propagate(f1, t));
    PhysicalField u2 = inverse_transform(propagate(f2, t));
    double err = 0.0;
    for (size_t i = 0; i < got.values.size(); ++i)
      err = std::max(err, std::abs(got.values[i] - u1.values[i] * u2.values[i]));
    CHECK(err < 1e-8);
  }
}

TEST_CASE("random band fields respect band, sector, and mode cap") {
  std::mt19937_64 rng(101);
  AngularSector s{0.125, 4, 2.0};
  SparseField f = random_band_field(2.0, 1.0 / 8.0, 4.0, 8.0, s, 40, rng);
  CHECK(!f.modes.empty());
  CHECK(f.modes.size() <= 40);
  std::set<std::pair<int, int>> seen;
  for (const SparseMode& m : f.modes) {
    FreqPoint xi = f.freq(m);
    CHECK(xi.norm() >= 4.0 - 1e-12);
    CHECK(xi.norm() <= 8.0 + 1e-12);
    CHECK(s.contains(xi));
    CHECK(seen.insert({m.jmu, m.k}).second);  // no duplicates
  }
}

TEST_CASE("estimate evaluators produce sane reports") {
  std::mt19937_64 rng(111);
  AngularDrawParams p;
  p.lambda = 2.0;
  p.N1 = DyadicBand{16.0};
  p.N2 = DyadicBand{4.0};
  p.theta = 0.125;
  auto [f1, f2] = draw_angular_pair(p, rng);
  EstimateReport r = eval_angular_bilinear(2.0, p.N1, p.N2, 4.0, p.theta, f1, f2);
  CHECK(r.estimate_id == EstimateId::THM_ANGULAR_BILINEAR);
  CHECK(r.lhs >= 0.0);
  CHECK(r.rhs > 0.0);
  CHECK(r.ratio == doctest::Approx(r.lhs / r.rhs));
  CHECK_FALSE(r.degenerate);
  CHECK(r.params.at("lambda") == 2.0);

  auto [g1, g2] = draw_band_pair(1.0, DyadicBand{8.0}, DyadicBand{4.0}, 32, rng);
  EstimateReport l4 = eval_l4_strichartz(1.0, DyadicBand{8.0}, g1);
  CHECK(l4.lhs > 0.0);
  CHECK(l4.ratio < 10.0);

  EstimateReport gb = eval_global_bilinear(1.0, DyadicBand{8.0}, DyadicBand{4.0}, 0.1, g1, g2, 4);
  CHECK(gb.lhs > 0.0);
  CHECK(gb.params.at("slabs") == 4.0);

  std::vector<DyadicBand> bands{DyadicBand{8.0}, DyadicBand{4.0}, DyadicBand{2.0}};
  std::vector<SparseField> fs;
  for (const DyadicBand& b : bands)
    fs.push_back(random_band_field(1.0, b.N / 8.0, b.N, 2.0 * b.N, std::nullopt, 16, rng));
  EstimateReport ml = eval_multilinear_d2(2, bands, fs, default_delta_prime(2));
  CHECK(ml.lhs > 0.0);
  CHECK(ml.params.at("N3") == 2.0);
  CHECK_THROWS(eval_multilinear_d2(1, bands, fs, 0.1));
}

TEST_CASE("pair budget overflow throws") {
  SparseField f = small_random_sparse(1.0, 1.0 / 8.0, 20, 3, 60, 121);
  PairConstraint none;
  CHECK_THROWS_AS(build_pair_terms(f, f, none, false, 100), std::length_error);
}
