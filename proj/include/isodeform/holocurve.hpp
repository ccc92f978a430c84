#pragma once

#include <vector>

#include "isodeform/family.hpp"

namespace isodeform {

/// A holomorphic curve zeta: U -> C^m realized in R^{2m} as (Re zeta_1, Im zeta_1, Re zeta_2, ...).
struct HoloCurveSpec {
  int m = 4;
  HoloSeries components;  // m components
  double radius = 1.0;
};

/// Throws DegeneracyError when the curve is not substantial at its base point.
SurfaceChart holo_chart(const HoloCurveSpec& spec);

/// tau_s = kappa_s / kappa_{s-1}, kappa_0 = 1, s = 1..s_max.
std::vector<double> tau_ratios(const SurfaceChart& chart, cplx z, int s_max);

struct ConnectionCheck {
  double con1 = 0.0;
  double con2 = 0.0;
  double max() const { return std::max(con1, con2); }
};

/// Residuals of omega_{2s-1,2s+1} = omega_{2s,2s+2} = tau_s omega_1,
/// omega_{2s-1,2s+2} = -omega_{2s,2s+1} = tau_s omega_2 and
/// omega_{2s+1,2s+2} = (s+1) omega_12 + * d log kappa_s over the available s.
ConnectionCheck holo_connection_check(const AdaptedFrame& frame);
ConnectionCheck holo_connection_check(const SurfaceChart& chart, cplx z);

/// The specialized operators, built from tau_1, tau_2, tau_3 and the derivatives of tau_2.
ShapeOperators holo_shape_operators(const AdaptedFrame& frame, const std::vector<double>& t);
ShapeOperators holo_shape_operators(const SurfaceChart& chart, const RuledPoint& rp);

/// S_theta on ruling coordinates: each pair (t_{2s-3}, t_{2s-2}), s >= 2, turned by theta.
std::vector<double> fiber_rotation(const std::vector<double>& t, double theta);

struct Alignment {
  Eigen::MatrixXd rotation;
  Eigen::VectorXd translation;
  double rms = 0.0;
  double diameter = 0.0;
  double normalized() const { return diameter > 0 ? rms / diameter : rms; }
};

/// Optimal rigid motion x -> R x + c carrying `moving` onto `fixed` (rows are points),
/// with the determinant fixed to +1.
Alignment rigid_align(const Eigen::MatrixXd& fixed, const Eigen::MatrixXd& moving);

/// RMS / diameter after aligning {F_g(S_{-theta} q)} onto {F_theta(q)}.
double equivariance_residual(const SurfaceChart& chart, const std::vector<RuledPoint>& cloud,
                             double theta);

/// max over samples of |h1| + |h2| from the specialized operators.
double nonkaehler_witness(const SurfaceChart& chart, const std::vector<RuledPoint>& samples);

}  // namespace isodeform
