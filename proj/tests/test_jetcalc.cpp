#include <gtest/gtest.h>

#include <random>

#include <Eigen/Dense>

#include "isodeform/errors.hpp"
#include "isodeform/ortho.hpp"
#include "isodeform/weierstrass.hpp"

using namespace isodeform;

namespace {

HoloSeries random_series(std::mt19937& rng, int ncomp, int order, int degree) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<std::vector<cplx>> polys(static_cast<std::size_t>(ncomp));
  for (auto& p : polys)
    for (int j = 0; j <= degree; ++j) p.emplace_back(n(rng), n(rng));
  return HoloSeries::from_polynomials(polys, order);
}

double max_coeff(const HoloSeries& s) { return s.max_abs(); }

}  // namespace

TEST(SymInner, NullConstantVector) {
  const auto a = HoloSeries::constant({1.0, cplx(0, 1)}, 16);
  EXPECT_EQ(max_coeff(sym_inner(a, a)), 0.0);
}

TEST(SymInner, PolynomialProduct) {
  const auto z = HoloSeries::variable(16);
  const auto s = sym_inner(z, z);
  EXPECT_EQ(s.ncomp(), 1);
  EXPECT_EQ(s.order(), 16);
  for (int j = 0; j <= 16; ++j) EXPECT_EQ(s.coeff(0, j), j == 2 ? cplx(1.0) : cplx(0.0));
}

TEST(SymInner, SeedALiftIsNull) {
  const auto alpha = HoloSeries::from_polynomials({{1.0}, {0.0, 1.0}}, 32);
  const auto a1 = isotropic_lift(alpha, HoloSeries::constant({1.0}, 32));
  EXPECT_LE(max_coeff(sym_inner(a1, a1)), 1e-14);
}

TEST(SymInner, ShapeMismatch) {
  const auto a = HoloSeries::constant({1.0, 2.0}, 8);
  const auto b = HoloSeries::constant({1.0}, 8);
  EXPECT_THROW(sym_inner(a, b), ShapeError);
  EXPECT_THROW(sym_inner(a, HoloSeries::constant({1.0, 2.0}, 9)), ShapeError);
  EXPECT_THROW(sym_inner(a, HoloSeries::constant({1.0, 2.0}, 8, cplx(0.1, 0))), ShapeError);
}

TEST(Antiderivative, ConstantAboutShiftedBase) {
  const cplx z0(0.3, -0.2);
  const auto one = HoloSeries::constant({1.0}, 12, z0);
  const auto p = antiderivative(one);
  EXPECT_EQ(p.coeff(0, 0), cplx(0.0));
  EXPECT_EQ(p.coeff(0, 1), cplx(1.0));
  EXPECT_NEAR(std::abs(p.evaluate(z0 + cplx(0.1, 0.2))[0] - cplx(0.1, 0.2)), 0.0, 1e-15);
}

TEST(Antiderivative, Monomial) {
  const auto p = antiderivative(HoloSeries::variable(12));
  EXPECT_EQ(p.coeff(0, 2), cplx(0.5));
  EXPECT_EQ(p.degree(), 2);
}

TEST(Antiderivative, InitialValue) {
  const auto p = antiderivative(HoloSeries::variable(12), cplx(2.0, 1.0));
  EXPECT_EQ(p.evaluate(0.0)[0], cplx(2.0, 1.0));
}

TEST(Antiderivative, DerivativeInvertsUpToTopCoefficient) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_series(rng, 3, 10, 10);
    const auto back = antiderivative(a).derivative();
    for (int k = 0; k < 3; ++k) {
      for (int j = 0; j < 10; ++j) EXPECT_NEAR(std::abs(back.coeff(k, j) - a.coeff(k, j)), 0.0, 1e-13);
      EXPECT_EQ(back.coeff(k, 10), cplx(0.0));
    }
  }
}

TEST(HoloSeriesProperty, ProductRule) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_series(rng, 1, 12, 5), b = random_series(rng, 1, 12, 5);
    const auto lhs = multiply(a, b).derivative();
    const auto rhs = multiply(a.derivative(), b) + multiply(a, b.derivative());
    for (int j = 0; j <= 12; ++j) EXPECT_NEAR(std::abs(lhs.coeff(0, j) - rhs.coeff(0, j)), 0.0, 1e-12);
  }
}

TEST(HoloSeriesProperty, EvaluationMatchesHorner) {
  const auto p = HoloSeries::from_polynomials({{1.0, 2.0, 3.0}}, 8, cplx(0.5, 0.0));
  const cplx z(0.7, 0.1), w = z - cplx(0.5, 0.0);
  EXPECT_NEAR(std::abs(p.evaluate(z)[0] - (1.0 + 2.0 * w + 3.0 * w * w)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.evaluate(z, 1)[0] - (2.0 + 6.0 * w)), 0.0, 1e-15);
}

TEST(HoloSeriesProperty, TruncationRejectsOverflow) {
  EXPECT_THROW(HoloSeries::from_polynomials({{0.0, 0.0, 1.0}}, 1), ShapeError);
}

// Jets ---------------------------------------------------------------------

namespace {
using J2 = Jet2<2>;
J2 u0() { return J2::variable_u(0.3); }
J2 v0() { return J2::variable_v(-0.2); }
}  // namespace

TEST(Jet2, PartialsOfPolynomial) {
  const J2 f = u0() * u0() * v0() + 3.0;  // u^2 v + 3
  const double u = 0.3, v = -0.2;
  EXPECT_NEAR(f.value(), u * u * v + 3, 1e-15);
  EXPECT_NEAR(f.d_u(), 2 * u * v, 1e-15);
  EXPECT_NEAR(f.d_v(), u * u, 1e-15);
  EXPECT_NEAR(f.partial(2, 0), 2 * v, 1e-15);
  EXPECT_NEAR(f.partial(1, 1), 2 * u, 1e-15);
  EXPECT_NEAR(f.partial(0, 2), 0.0, 1e-15);
}

TEST(Jet2, SqrtSquaresBack) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    J2 j(2.0 + d(rng));
    for (int k = 1; k < J2::kSize; ++k) j.data()[static_cast<std::size_t>(k)] = d(rng);
    const J2 s = sqrt(j);
    const J2 back = s * s;
    for (int k = 0; k < J2::kSize; ++k)
      EXPECT_NEAR(back.data()[static_cast<std::size_t>(k)], j.data()[static_cast<std::size_t>(k)], 1e-13);
  }
}

TEST(Jet2, QuotientAndChainRules) {
  const J2 u = u0(), v = v0();
  const J2 q = sin(u) / (1.0 + v * v);
  const double U = 0.3, V = -0.2, den = 1 + V * V;
  EXPECT_NEAR(q.d_u(), std::cos(U) / den, 1e-14);
  EXPECT_NEAR(q.d_v(), -std::sin(U) * 2 * V / (den * den), 1e-14);
  const J2 l = log(u * u + v * v);
  EXPECT_NEAR(l.d_u(), 2 * U / (U * U + V * V), 1e-13);
  const J2 a = atan2(v, u);
  EXPECT_NEAR(a.d_u(), -V / (U * U + V * V), 1e-13);
  EXPECT_NEAR(a.d_v(), U / (U * U + V * V), 1e-13);
}

TEST(JetOrthonormalize, OrthonormalInputUnchanged) {
  std::vector<Vec<double>> vs{{1, 0, 0}, {0, 0, 1}};
  const auto out = jet_orthonormalize(vs);
  EXPECT_EQ(out.vectors[0], vs[0]);
  EXPECT_EQ(out.vectors[1], vs[1]);
}

TEST(JetOrthonormalize, TwoByTwo) {
  std::vector<Vec<Jet2<1>>> vs{{2.0, 0.0}, {1.0, 1.0}};
  const auto out = jet_orthonormalize(vs);
  EXPECT_NEAR(out.vectors[0][0].value(), 1.0, 1e-15);
  EXPECT_NEAR(out.vectors[0][1].value(), 0.0, 1e-15);
  EXPECT_NEAR(out.vectors[1][0].value(), 0.0, 1e-15);
  EXPECT_NEAR(out.vectors[1][1].value(), 1.0, 1e-15);
}

TEST(JetOrthonormalize, DependentInputNamesIndex) {
  std::vector<Vec<double>> vs{{1, 0, 0}, {0, 1, 0}, {1, 1, 1e-12}};
  try {
    jet_orthonormalize(vs);
    FAIL() << "expected a degeneracy error";
  } catch (const DegeneracyError& e) {
    EXPECT_EQ(e.index(), 2);
  }
}

TEST(JetOrthonormalize, MatchesFiniteDifferenceGramSchmidt) {
  // Vectors a_i + b_i u + c_i v; jets at (0, 0) against doubles at displaced points.
  std::mt19937 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  const int dim = 4, count = 3;
  std::vector<std::array<Eigen::Vector4d, 3>> coef(count);
  for (auto& c : coef)
    for (auto& v : c) v = Eigen::Vector4d(n(rng), n(rng), n(rng), n(rng));
  std::vector<Vec<Jet2<1>>> jets(count, Vec<Jet2<1>>(dim));
  const auto U = Jet2<1>::variable_u(0.0), V = Jet2<1>::variable_v(0.0);
  for (int i = 0; i < count; ++i)
    for (int k = 0; k < dim; ++k) jets[i][k] = coef[i][0](k) + coef[i][1](k) * U + coef[i][2](k) * V;
  const auto out = jet_orthonormalize(jets);

  auto at = [&](double u, double v) {
    std::vector<Vec<double>> vs(count, Vec<double>(dim));
    for (int i = 0; i < count; ++i)
      for (int k = 0; k < dim; ++k) vs[i][k] = coef[i][0](k) + coef[i][1](k) * u + coef[i][2](k) * v;
    return jet_orthonormalize(vs).vectors;
  };
  const double h = 1e-4;
  const auto up = at(h, 0), um = at(-h, 0), vp = at(0, h), vm = at(0, -h);
  for (int i = 0; i < count; ++i)
    for (int k = 0; k < dim; ++k) {
      EXPECT_NEAR(out.vectors[i][k].d_u(), (up[i][k] - um[i][k]) / (2 * h), 1e-6);
      EXPECT_NEAR(out.vectors[i][k].d_v(), (vp[i][k] - vm[i][k]) / (2 * h), 1e-6);
    }
  // orthonormality and its differentiated form
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) {
      const auto d = dot(out.vectors[i], out.vectors[j]);
      EXPECT_NEAR(d.value(), i == j ? 1.0 : 0.0, 1e-12);
      EXPECT_NEAR(d.d_u(), 0.0, 1e-10);
      EXPECT_NEAR(d.d_v(), 0.0, 1e-10);
    }
}
