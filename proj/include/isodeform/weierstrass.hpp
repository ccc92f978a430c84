#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isodeform/holo_series.hpp"

namespace isodeform {

/// Seed data for a 1-isotropic surface in R^N.
struct SeedSpec {
  int ambient_dim = 6;
  HoloSeries alpha0;                // N - 2 - 2 * lift_repeats components
  std::vector<HoloSeries> scales;   // lift scale, then Gauss-map scale; missing entries are 1
  cplx base_point{};
  double radius = 1.0;
  int lift_repeats = 1;
};

/// A conformal minimal surface g = Re G over a disc |z - z0| < radius.
struct SurfaceChart {
  int N = 0;
  HoloSeries gauss;               // gamma = G'
  std::optional<HoloSeries> iso;  // phi in the Gauss-map formula, when known
  HoloSeries primitive;           // G with G(z0) = 0
  std::vector<double> offset;     // constant ambient translation added to Re G
  cplx base_point{};
  double radius = 1.0;
  std::string provenance;
  std::vector<std::string> warnings;

  int order() const { return gauss.order(); }
};

/// alpha -> scale * (1 - s, i (1 + s), 2 phi) with phi = int alpha, s = (phi, phi).
HoloSeries isotropic_lift(const HoloSeries& alpha, const HoloSeries& scale);

/// Gauss map (scale / 2) (1 - (phi, phi), i (1 + (phi, phi)), 2 phi) and its primitive.
/// Minimal for any phi; 1-isotropic exactly when (phi', phi') = 0.
SurfaceChart chart_from_isotropic_data(const HoloSeries& phi, const HoloSeries& scale,
                                       double radius, std::string provenance = "iso-data");

/// A chart straight from a null Gauss map (used for holomorphic curves).
SurfaceChart chart_from_gauss_map(const HoloSeries& gamma, double radius, std::string provenance);

SurfaceChart build_surface(const SeedSpec& seed);

/// Normalized size of (phi', phi') (or (gamma', gamma') when phi is unknown):
/// max coefficient modulus divided by the max coefficient of its majorant.
double isotropy_defect(const SurfaceChart& chart);

/// Same normalization for (gamma, gamma); zero for conformal charts.
double conformality_defect(const SurfaceChart& chart);

/// Partial derivatives d_u^a d_v^b g for a + b <= max_order.
class SurfaceDerivatives {
 public:
  SurfaceDerivatives(int max_order, int N);
  int max_order() const { return max_order_; }
  const std::vector<double>& at(int a, int b) const;
  std::vector<double>& at(int a, int b);

 private:
  int max_order_;
  std::vector<std::vector<double>> data_;
};

SurfaceDerivatives evaluate_surface(const SurfaceChart& chart, cplx z, int deriv_order);

/// Complex derivatives G^(k)(z), k = 0..max_deriv, with the domain check applied.
std::vector<std::vector<cplx>> primitive_derivatives(const SurfaceChart& chart, cplx z,
                                                     int max_deriv);

void check_domain(const SurfaceChart& chart, cplx z);

/// Rank of the real span of Re/Im gamma^(j)(z0), j < N. Equals N for substantial charts.
int substantiality_rank(const SurfaceChart& chart, double rel_tol = 1e-9);

/// Chart translated by a constant ambient vector.
SurfaceChart translated(const SurfaceChart& chart, const std::vector<double>& shift);

}  // namespace isodeform
