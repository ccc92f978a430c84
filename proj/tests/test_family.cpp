#include <gtest/gtest.h>

#include <numbers>

#include "fixtures.hpp"
#include "isodeform/errors.hpp"

using namespace isodeform;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd ev(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

const std::vector<cplx> kPoints{{0.1, 0.05}, {-0.2, 0.13}, {0.07, -0.25}};
const std::vector<double> kThetas{0.3, kPi / 2, 2.5};

std::vector<double> t_for(int N) {
  const std::vector<double> base{0.3, -0.2, 0.25, 0.1};
  return {base.begin(), base.begin() + (N - 4)};
}

}  // namespace

TEST(AssociatedSurface, ThetaZeroIsIdentity) {
  const auto d = associated_surface(fixture::seed_b(), 0.0);
  const auto a = evaluate_surface(fixture::seed_b(), fixture::kGeneric, 2);
  const auto b = evaluate_surface(d.chart, fixture::kGeneric, 2);
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; p + q <= 2; ++q)
      for (int i = 0; i < 8; ++i) EXPECT_EQ(a.at(p, q)[i], b.at(p, q)[i]);
}

TEST(AssociatedSurface, QuarterTurnAtBase) {
  const auto d = associated_surface(fixture::seed_a(), kPi / 2);
  const auto D = evaluate_surface(d.chart, 0.0, 1);
  const std::vector<double> gu{0, -0.5, 0, 0, 0, 0}, gv{-0.5, 0, 0, 0, 0, 0};
  for (int i = 0; i < 6; ++i) {
    EXPECT_NEAR(D.at(1, 0)[i], gu[i], 1e-15);
    EXPECT_NEAR(D.at(0, 1)[i], gv[i], 1e-15);
  }
}

TEST(AssociatedSurface, ThetaRange) {
  EXPECT_THROW(associated_surface(fixture::seed_a(), -0.1), DomainError);
  EXPECT_THROW(associated_surface(fixture::seed_a(), kPi), DomainError);
  EXPECT_NO_THROW(associated_surface(fixture::seed_a(), 3.14));
}

TEST(AssociatedSurface, StaysIsotropic) {
  const auto d = associated_surface(fixture::seed_b(), 1.1);
  EXPECT_LE(conformality_defect(d.chart), 1e-12);
  EXPECT_LE(curvature_ellipse(d.chart, fixture::kGeneric, 1).circle_defect, 1e-9);
}

TEST(AssociatedSurface, IsometricWithRotatedDifferential) {
  for (double th : kThetas) {
    const auto d = associated_surface(fixture::seed_b(), th);
    for (cplx z : kPoints) {
      EXPECT_LE(metric_residual(fixture::seed_b(), d, z), 1e-11);
      EXPECT_LE(rotation_residual(fixture::seed_b(), d, z), 1e-10);
      EXPECT_LE(second_form_residual(fixture::seed_b(), d, z), 1e-9);
    }
  }
}

TEST(DeformedImmersion, ThetaZeroReproducesRuledManifold) {
  const RuledPoint rp{fixture::kGeneric, t_for(8)};
  const auto dp = deformed_immersion(fixture::seed_b(), associated_surface(fixture::seed_b(), 0.0), rp);
  EXPECT_LE((ev(dp.F) - ev(eval_F(fixture::seed_b(), rp))).norm(), 1e-13);
  const auto hd = horizontal_data(fixture::seed_b(), rp);
  EXPECT_LE((ev(dp.FX1) - ev(hd.FX1)).norm(), 1e-12);
  EXPECT_NEAR(dp.Omega, hd.Omega, 1e-14);
}

TEST(DeformedImmersion, ZeroSectionIsDeformedSurface) {
  const auto d = associated_surface(fixture::seed_b(), 0.8);
  const auto dp = deformed_immersion(fixture::seed_b(), d, RuledPoint{fixture::kGeneric, {0, 0, 0, 0}});
  const auto g = evaluate_surface(d.chart, fixture::kGeneric, 0).at(0, 0);
  for (int i = 0; i < 8; ++i) EXPECT_EQ(dp.F[i], g[i]);
}

TEST(DeformedImmersion, FrameIsOrthonormal) {
  const auto d = associated_surface(fixture::seed_b(), 1.3);
  const auto dp = deformed_immersion(fixture::seed_b(), d, RuledPoint{fixture::kGeneric, t_for(8)});
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) EXPECT_NEAR(ev(dp.frame[i]).dot(ev(dp.frame[j])), i == j ? 1.0 : 0.0, 1e-11);
}

TEST(DeformedImmersion, InducedMetricPreserved) {
  for (const SurfaceChart* c : {&fixture::seed_a(), &fixture::seed_b()})
    for (double th : kThetas)
      for (cplx z : kPoints) {
        const auto d = associated_surface(*c, th);
        EXPECT_LE(induced_metric_residual(*c, d, RuledPoint{z, t_for(c->N)}), 1e-9);
      }
}

TEST(DeformedImmersion, HorizontalLiftUnchanged) {
  for (double th : kThetas)
    for (cplx z : kPoints) {
      const auto d = associated_surface(fixture::seed_b(), th);
      EXPECT_LE(horizontal_lift_residual(fixture::seed_b(), d, RuledPoint{z, t_for(8)}), 1e-6);
    }
}

TEST(BundleIsometry, NormsAndOrthogonality) {
  for (double th : kThetas) {
    const auto d = associated_surface(fixture::seed_b(), th);
    const RuledPoint rp{fixture::kGeneric, t_for(8)};
    const auto bi = bundle_isometry(fixture::seed_b(), d, rp);
    EXPECT_LE(bi.norm_defect, 1e-9);
    // the images are normal to the deformed ruled manifold
    const auto dp = deformed_immersion(fixture::seed_b(), d, rp);
    for (const auto& T : {ev(dp.FX1), ev(dp.FX2), ev(dp.frame[4]), ev(dp.frame[7])}) {
      EXPECT_NEAR(ev(bi.xi_theta).dot(T), 0.0, 1e-10);
      EXPECT_NEAR(ev(bi.eta_theta).dot(T), 0.0, 1e-10);
    }
  }
}

TEST(BundleIsometry, ParallelismPreserved) {
  for (double th : kThetas)
    for (cplx z : kPoints) EXPECT_LE(parallelism_residual(fixture::seed_b(), RuledPoint{z, t_for(8)}, th), 1e-6);
}

TEST(Deformation, ThetaZeroIsExact) {
  const auto r = deformation_residual(fixture::seed_b(), RuledPoint{fixture::kGeneric, t_for(8)}, 0.0);
  EXPECT_LE(r.residual, 1e-12);
}

TEST(Deformation, FormulaHolds) {
  for (const SurfaceChart* c : {&fixture::seed_a(), &fixture::seed_b()})
    for (double th : kThetas)
      for (cplx z : kPoints) {
        const auto r = deformation_residual(*c, RuledPoint{z, t_for(c->N)}, th);
        EXPECT_LE(r.residual, 2e-5) << "theta " << th;
        EXPECT_LE(r.normal_leak, 2e-5);
      }
}

TEST(Deformation, LiteralAssignmentFails) {
  const auto r = deformation_residual(fixture::seed_b(), RuledPoint{fixture::kGeneric, t_for(8)}, kPi / 2,
                                      BetaConvention::literal);
  EXPECT_GT(r.residual, 1e-2);
}

TEST(TracelessForm, Conventions) {
  const auto a = traceless_form(2.0), b = traceless_form(2.0, BetaConvention::literal);
  EXPECT_EQ(a.b11, Eigen::Vector2d(0.0, 0.25));
  EXPECT_EQ(a.b12, Eigen::Vector2d(-0.25, 0.0));
  EXPECT_EQ(a.b22, -a.b11);
  EXPECT_EQ(b.b11, Eigen::Vector2d(0.25, 0.0));
  EXPECT_EQ(b.b12, Eigen::Vector2d(0.0, -0.25));
  Eigen::VectorXd X = Eigen::VectorXd::Zero(4), V = Eigen::VectorXd::Zero(4);
  X(0) = 1.0;
  V(2) = 1.0;
  EXPECT_EQ(a.value(X, V), Eigen::Vector2d::Zero());
}

TEST(ThetaOperators, ThetaZeroIsBase) {
  const auto f = adapted_frame(fixture::seed_b(), fixture::kGeneric);
  const auto S = shape_operators(f, t_for(8)), T = theta_shape_operators(f, t_for(8), 0.0);
  EXPECT_EQ(S.A_xi, T.A_xi);
  EXPECT_EQ(S.A_eta, T.A_eta);
}

TEST(ThetaOperators, HalfTurnSwapsH) {
  const auto f = adapted_frame(fixture::seed_b(), fixture::kGeneric);
  const auto S = shape_operators(f, t_for(8)), T = theta_shape_operators(f, t_for(8), kPi / 2);
  EXPECT_NEAR(T.h1, S.h2, 1e-15);
  EXPECT_NEAR(T.h2, -S.h1, 1e-15);
}

TEST(ThetaOperators, MatchNumericOperatorsOfDeformation) {
  for (double th : kThetas) {
    const RuledPoint rp{fixture::kGeneric, t_for(8)};
    const auto d = associated_surface(fixture::seed_b(), th);
    const auto bi = bundle_isometry(fixture::seed_b(), d, rp);
    const auto num = numeric_sff(fixture::seed_b(), d.chart, rp, NormalPair{bi.xi_theta, bi.eta_theta});
    const auto T = theta_shape_operators(fixture::seed_b(), rp, th);
    const double scale = std::max(1.0, T.kappa);
    EXPECT_LE((num.A_xi - T.full_xi()).cwiseAbs().maxCoeff(), 2e-5 * scale) << th;
    EXPECT_LE((num.A_eta - T.full_eta()).cwiseAbs().maxCoeff(), 2e-5 * scale) << th;
  }
}

TEST(Reflection, IdentityHolds) {
  for (cplx z : kPoints) {
    const auto f = adapted_frame(fixture::seed_b(), z);
    for (double th : default_theta_grid()) EXPECT_LE(reflection_identity_residual(f, t_for(8), th), 1e-9);
  }
}

TEST(Reflection, MatrixIsReflection) {
  for (double th : kThetas) {
    const Eigen::Matrix2d L = reflection_L(th);
    EXPECT_LE((L * L - Eigen::Matrix2d::Identity()).norm(), 1e-15);
    EXPECT_NEAR(L.determinant(), -1.0, 1e-15);
    EXPECT_NEAR(L.trace(), 0.0, 1e-15);
  }
  const Eigen::Matrix2d L0 = reflection_L(0.0);
  EXPECT_EQ(L0, (Eigen::Matrix2d() << 0, 1, 1, 0).finished());
}

TEST(ThetaGrid, Default) {
  const auto g = default_theta_grid();
  ASSERT_EQ(g.size(), 12u);
  EXPECT_EQ(g[0], 0.0);
  EXPECT_NEAR(g[11], 11 * kPi / 12, 1e-15);
}
