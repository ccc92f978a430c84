#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "isodeform/errors.hpp"

using namespace isodeform;

namespace {

double dotv(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void expect_vec(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "component " << i;
}

}  // namespace

TEST(IsotropicLift, SeedAPolynomials) {
  const auto alpha = HoloSeries::from_polynomials({{1.0}, {0.0, 1.0}}, 16);
  const auto a1 = isotropic_lift(alpha, HoloSeries::constant({1.0}, 16));
  ASSERT_EQ(a1.ncomp(), 4);
  const cplx I(0, 1);
  const std::vector<std::vector<cplx>> want{
      {1.0, 0.0, -1.0, 0.0, -0.25}, {I, 0.0, I, 0.0, 0.25 * I}, {0.0, 2.0}, {0.0, 0.0, 1.0}};
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j <= 16; ++j) {
      const cplx w = j < static_cast<int>(want[k].size()) ? want[k][static_cast<std::size_t>(j)] : cplx(0.0);
      EXPECT_NEAR(std::abs(a1.coeff(k, j) - w), 0.0, 1e-15) << k << "," << j;
    }
}

TEST(IsotropicLift, ScaleMultiplies) {
  const auto alpha = HoloSeries::from_polynomials({{1.0}, {0.0, 1.0}}, 16);
  const auto a = isotropic_lift(alpha, HoloSeries::constant({1.0}, 16));
  const auto b = isotropic_lift(alpha, HoloSeries::constant({cplx(0, 3)}, 16));
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j <= 16; ++j) EXPECT_NEAR(std::abs(b.coeff(k, j) - cplx(0, 3) * a.coeff(k, j)), 0.0, 1e-14);
}

TEST(IsotropicLift, RejectsBadScale) {
  const auto alpha = HoloSeries::from_polynomials({{1.0}}, 8);
  EXPECT_THROW(isotropic_lift(alpha, HoloSeries::constant({0.0}, 8)), SeedError);
  EXPECT_THROW(isotropic_lift(alpha, HoloSeries::constant({1.0, 1.0}, 8)), SeedError);
}

TEST(BuildSurface, SeedAGaussMapAtBase) {
  const auto& c = fixture::seed_a();
  EXPECT_EQ(c.N, 6);
  const auto g0 = c.gauss.evaluate(0.0);
  const std::vector<cplx> want{0.5, cplx(0, 0.5), 0.0, 0.0, 0.0, 0.0};
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(std::abs(g0[k] - want[k]), 0.0, 1e-15);
  EXPECT_TRUE(c.warnings.empty());
}

TEST(BuildSurface, SeedAJetAtBase) {
  const auto D = evaluate_surface(fixture::seed_a(), 0.0, 2);
  expect_vec(D.at(0, 0), {0, 0, 0, 0, 0, 0}, 1e-15);
  expect_vec(D.at(1, 0), {0.5, 0, 0, 0, 0, 0}, 1e-15);
  expect_vec(D.at(0, 1), {0, -0.5, 0, 0, 0, 0}, 1e-15);
  expect_vec(D.at(2, 0), {0, 0, 1, 0, 0, 0}, 1e-15);
  expect_vec(D.at(0, 2), {0, 0, -1, 0, 0, 0}, 1e-15);
  expect_vec(D.at(1, 1), {0, 0, 0, -1, 0, 0}, 1e-15);
}

TEST(BuildSurface, Invariants) {
  for (const SurfaceChart* c : {&fixture::seed_a(), &fixture::seed_b()}) {
    EXPECT_LE(isotropy_defect(*c), 1e-12);
    EXPECT_LE(conformality_defect(*c), 1e-12);
    EXPECT_EQ(substantiality_rank(*c), c->N);
  }
  EXPECT_EQ(fixture::seed_b().N, 8);
}

TEST(BuildSurface, NonNullDataIsDetected) {
  const auto phi = HoloSeries::from_polynomials({{0.0, 1.0}, {0.0, 1.0}}, 16);
  const auto c = chart_from_isotropic_data(phi, HoloSeries::constant({1.0}, 16), 1.0);
  EXPECT_NEAR(isotropy_defect(c), 1.0, 1e-12);
  EXPECT_LE(conformality_defect(c), 1e-12);  // still conformal
}

TEST(BuildSurface, ConformalAndHarmonicOnDisc) {
  for (const SurfaceChart* c : {&fixture::seed_a(), &fixture::seed_b()})
    for (double r : {0.0, 0.2, 0.5, 0.8})
      for (int k = 0; k < 6; ++k) {
        const cplx z = std::polar(r, 0.7 + k);
        const auto D = evaluate_surface(*c, z, 2);
        const double E = dotv(D.at(1, 0), D.at(1, 0)), G = dotv(D.at(0, 1), D.at(0, 1));
        EXPECT_NEAR(E - G, 0.0, 1e-11 * E);
        EXPECT_NEAR(dotv(D.at(1, 0), D.at(0, 1)), 0.0, 1e-11 * E);
        for (int i = 0; i < c->N; ++i) EXPECT_NEAR(D.at(2, 0)[i] + D.at(0, 2)[i], 0.0, 1e-11);
      }
}

TEST(BuildSurface, DerivativesMatchDifferences) {
  const auto& c = fixture::seed_b();
  const cplx z(0.2, -0.1);
  const double h = 1e-5;
  const auto D = evaluate_surface(c, z, 1);
  const auto up = evaluate_surface(c, z + h, 0).at(0, 0), um = evaluate_surface(c, z - h, 0).at(0, 0);
  const auto vp = evaluate_surface(c, z + cplx(0, h), 0).at(0, 0), vm = evaluate_surface(c, z - cplx(0, h), 0).at(0, 0);
  for (int i = 0; i < c.N; ++i) {
    EXPECT_NEAR(D.at(1, 0)[i], (up[i] - um[i]) / (2 * h), 1e-8);
    EXPECT_NEAR(D.at(0, 1)[i], (vp[i] - vm[i]) / (2 * h), 1e-8);
  }
}

TEST(BuildSurface, DomainEnforced) {
  EXPECT_THROW(evaluate_surface(fixture::seed_a(), cplx(0.95, 0.0), 1), DomainError);
  EXPECT_NO_THROW(evaluate_surface(fixture::seed_a(), cplx(0.89, 0.0), 1));
}

TEST(BuildSurface, TruncationOrderIrrelevantForPolynomialSeeds) {
  auto s = fixture::seed_b_spec();
  s.alpha0 = HoloSeries::from_polynomials({{1.0}, {0.0, 1.0}, {0.0, 0.0, 0.5}, {0.0, 0.0, 0.0, 1.0 / 6}}, 64);
  const auto c64 = build_surface(s);
  const cplx z(0.5, 0.3);
  const auto a = evaluate_surface(fixture::seed_b(), z, 2), b = evaluate_surface(c64, z, 2);
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; p + q <= 2; ++q)
      for (int i = 0; i < 8; ++i) EXPECT_NEAR(a.at(p, q)[i], b.at(p, q)[i], 1e-12);
}

TEST(BuildSurface, SeedErrors) {
  auto s = fixture::seed_a_spec();
  s.ambient_dim = 5;
  EXPECT_THROW(build_surface(s), SeedError);
  s = fixture::seed_a_spec();
  s.alpha0 = HoloSeries::from_polynomials({{1.0}}, kDefaultOrder);
  EXPECT_THROW(build_surface(s), SeedError);
  s = fixture::seed_a_spec();
  s.alpha0 = HoloSeries::from_polynomials({{0.0}, {0.0}}, kDefaultOrder);
  EXPECT_THROW(build_surface(s), SeedError);
  s = fixture::seed_a_spec();
  s.radius = 0.0;
  EXPECT_THROW(build_surface(s), SeedError);
  s = fixture::seed_a_spec();
  s.base_point = cplx(0.1, 0.0);
  EXPECT_THROW(build_surface(s), SeedError);
}

TEST(BuildSurface, DegenerateSeedWarns) {
  // constant alpha0 in the last slot only: the lift never leaves a 4-plane plus its image
  auto s = fixture::seed_b_spec();
  s.alpha0 = HoloSeries::from_polynomials({{1.0}, {0.0}, {0.0}, {0.0}}, kDefaultOrder);
  const auto c = build_surface(s);
  EXPECT_LT(substantiality_rank(c), 8);
  EXPECT_FALSE(c.warnings.empty());
}

TEST(BuildSurface, TranslationShiftsOnlyPosition) {
  const std::vector<double> shift{1, 2, 3, 4, 5, 6};
  const auto t = translated(fixture::seed_a(), shift);
  const auto a = evaluate_surface(fixture::seed_a(), fixture::kGeneric, 1);
  const auto b = evaluate_surface(t, fixture::kGeneric, 1);
  for (int i = 0; i < 6; ++i) {
    EXPECT_NEAR(b.at(0, 0)[i] - a.at(0, 0)[i], shift[i], 1e-14);
    EXPECT_EQ(b.at(1, 0)[i], a.at(1, 0)[i]);
  }
  EXPECT_THROW(translated(fixture::seed_a(), {1.0}), ShapeError);
}
