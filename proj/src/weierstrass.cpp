#include "isodeform/weierstrass.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "isodeform/errors.hpp"

namespace isodeform {

namespace {

constexpr cplx kI{0.0, 1.0};

HoloSeries one_like(const HoloSeries& s) { return HoloSeries::constant({1.0}, s.order(), s.base_point()); }

HoloSeries scale_or_one(const std::vector<HoloSeries>& scales, std::size_t i, const HoloSeries& like) {
  if (i < scales.size()) return scales[i];
  return one_like(like);
}

// (1 - s, i (1 + s), 2 phi) with s = (phi, phi).
HoloSeries null_vector(const HoloSeries& phi) {
  const HoloSeries s = sym_inner(phi, phi);
  const HoloSeries one = one_like(phi);
  return concat({one - s, kI * (one + s), 2.0 * phi});
}

double normalized_square_defect(const HoloSeries& a) {
  const HoloSeries sq = sym_inner(a, a);
  const auto maj = sym_square_majorant(a);
  const double denom = *std::max_element(maj.begin(), maj.end());
  if (denom == 0.0) return 0.0;
  return sq.max_abs() / denom;
}

}  // namespace

HoloSeries isotropic_lift(const HoloSeries& alpha, const HoloSeries& scale) {
  if (scale.ncomp() != 1) throw SeedError("isotropic_lift: scale must have one component");
  if (std::abs(scale.coeff(0, 0)) == 0.0)
    throw SeedError("isotropic_lift: scale vanishes at the base point");
  const HoloSeries phi = antiderivative(alpha, 0.0);
  return multiply(scale, null_vector(phi));
}

SurfaceChart chart_from_gauss_map(const HoloSeries& gamma, double radius, std::string provenance) {
  SurfaceChart chart;
  chart.N = gamma.ncomp();
  chart.gauss = gamma;
  chart.primitive = antiderivative(gamma, 0.0);
  chart.offset.assign(chart.N, 0.0);
  chart.base_point = gamma.base_point();
  chart.radius = radius;
  chart.provenance = std::move(provenance);
  return chart;
}

SurfaceChart chart_from_isotropic_data(const HoloSeries& phi, const HoloSeries& scale, double radius,
                                       std::string provenance) {
  HoloSeries gamma = multiply(scale, null_vector(phi));
  gamma *= 0.5;
  SurfaceChart chart = chart_from_gauss_map(gamma, radius, std::move(provenance));
  chart.iso = phi;
  return chart;
}

SurfaceChart build_surface(const SeedSpec& seed) {
  if (seed.ambient_dim < 6) throw SeedError("build_surface: ambient dimension must be at least 6");
  if (seed.lift_repeats < 1) throw SeedError("build_surface: at least one lift is required");
  if (!(seed.radius > 0.0)) throw SeedError("build_surface: radius must be positive");
  const int expected = seed.ambient_dim - 2 - 2 * seed.lift_repeats;
  if (expected < 1 || seed.alpha0.ncomp() != expected)
    throw SeedError("build_surface: alpha0 must have " + std::to_string(expected) + " components");
  if (seed.alpha0.max_abs() == 0.0) throw SeedError("build_surface: alpha0 is identically zero");
  if (seed.alpha0.base_point() != seed.base_point)
    throw SeedError("build_surface: alpha0 is not expanded about the base point");
  for (const auto& s : seed.scales) {
    if (s.ncomp() != 1 || s.order() != seed.alpha0.order() || s.base_point() != seed.base_point)
      throw SeedError("build_surface: scale series must be scalar and match alpha0");
    if (std::abs(s.coeff(0, 0)) == 0.0) throw SeedError("build_surface: scale vanishes at base point");
  }

  HoloSeries lifted = seed.alpha0;
  for (int r = 0; r < seed.lift_repeats; ++r)
    lifted = isotropic_lift(lifted, scale_or_one(seed.scales, 0, seed.alpha0));
  const HoloSeries phi = antiderivative(lifted, 0.0);
  const HoloSeries beta = scale_or_one(seed.scales, 1, seed.alpha0);
  SurfaceChart chart = chart_from_isotropic_data(phi, beta, seed.radius, "seed");
  const int rank = substantiality_rank(chart);
  if (rank < chart.N)
    chart.warnings.push_back("Gauss-map derivatives at the base point span only " +
                             std::to_string(rank) + " of " + std::to_string(chart.N) +
                             " dimensions; surface may not be substantial");
  return chart;
}

double isotropy_defect(const SurfaceChart& chart) {
  if (chart.iso) return normalized_square_defect(chart.iso->derivative());
  return normalized_square_defect(chart.gauss.derivative());
}

double conformality_defect(const SurfaceChart& chart) { return normalized_square_defect(chart.gauss); }

SurfaceDerivatives::SurfaceDerivatives(int max_order, int N) : max_order_(max_order) {
  data_.assign(static_cast<std::size_t>((max_order + 1) * (max_order + 2) / 2),
               std::vector<double>(N, 0.0));
}

const std::vector<double>& SurfaceDerivatives::at(int a, int b) const {
  const int d = a + b;
  return data_.at(static_cast<std::size_t>(d * (d + 1) / 2 + b));
}

std::vector<double>& SurfaceDerivatives::at(int a, int b) {
  const int d = a + b;
  return data_.at(static_cast<std::size_t>(d * (d + 1) / 2 + b));
}

void check_domain(const SurfaceChart& chart, cplx z) {
  if (!(std::abs(z - chart.base_point) < 0.9 * chart.radius))
    throw DomainError("point (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                      ") lies outside 0.9 of the chart radius");
}

std::vector<std::vector<cplx>> primitive_derivatives(const SurfaceChart& chart, cplx z, int max_deriv) {
  check_domain(chart, z);
  return chart.primitive.evaluate_all(z, max_deriv);
}

SurfaceDerivatives evaluate_surface(const SurfaceChart& chart, cplx z, int deriv_order) {
  const auto G = primitive_derivatives(chart, z, deriv_order);
  SurfaceDerivatives out(deriv_order, chart.N);
  for (int d = 0; d <= deriv_order; ++d)
    for (int b = 0; b <= d; ++b) {
      // d_v acts on Re G as multiplication of G^(d) by i.
      cplx ib = 1.0;
      for (int k = 0; k < b; ++k) ib *= kI;
      auto& slot = out.at(d - b, b);
      for (int c = 0; c < chart.N; ++c) slot[c] = (ib * G[d][c]).real();
    }
  for (int c = 0; c < chart.N; ++c) out.at(0, 0)[c] += chart.offset[c];
  return out;
}

int substantiality_rank(const SurfaceChart& chart, double rel_tol) {
  const auto derivs = chart.gauss.evaluate_all(chart.base_point, chart.N);
  Eigen::MatrixXd M(chart.N, 2 * chart.N);
  for (int j = 0; j < chart.N; ++j)
    for (int c = 0; c < chart.N; ++c) {
      M(c, 2 * j) = derivs[j][c].real();
      M(c, 2 * j + 1) = derivs[j][c].imag();
    }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++rank;
  return rank;
}

SurfaceChart translated(const SurfaceChart& chart, const std::vector<double>& shift) {
  if (static_cast<int>(shift.size()) != chart.N) throw ShapeError("translated: dimension mismatch");
  SurfaceChart out = chart;
  for (int c = 0; c < chart.N; ++c) out.offset[c] += shift[c];
  return out;
}

}  // namespace isodeform
