#pragma once

#include <Eigen/Dense>
#include <vector>

#include "isodeform/ruled.hpp"

namespace isodeform {

/// Member g_theta of the associated family: Gauss map e^{i theta} gamma.
struct DeformedChart {
  double theta = 0.0;
  SurfaceChart chart;
};

DeformedChart associated_surface(const SurfaceChart& chart, double theta);

/// Relative deviation of the first fundamental forms of g and g_theta at z.
double metric_residual(const SurfaceChart& base, const DeformedChart& deformed, cplx z);

/// max | g_theta_* e_k - (cos theta g_* e_k + sin theta g_* J e_k) | over k = 1, 2.
double rotation_residual(const SurfaceChart& base, const DeformedChart& deformed, cplx z);

/// max | alpha_{g_theta}(X, Y) - alpha_g(J_theta X, Y) | over the frame pairs.
double second_form_residual(const SurfaceChart& base, const DeformedChart& deformed, cplx z);

struct DeformedPoint {
  AmbientVec F;
  std::vector<AmbientVec> frame;  // e^theta_1 .. e^theta_N
  AmbientVec FX1, FX2;            // closed-form F_theta_* X_i
  double Omega = 1.0;
};

/// F_theta(p, v) = g_theta(p) + v with the prescribed frames (e3, e4 rotated, the rest copied).
DeformedPoint deformed_immersion(const SurfaceChart& base, const DeformedChart& deformed,
                                 const RuledPoint& rp);

/// Max deviation between the chart-coordinate metrics of F_theta and F_g, relative to the
/// largest entry. Uses exact first derivatives from the frame jets.
double induced_metric_residual(const SurfaceChart& base, const DeformedChart& deformed,
                               const RuledPoint& rp);

/// max | F_theta_* X_i (numeric) - closed form |, which asserts X_i^theta = X_i.
double horizontal_lift_residual(const SurfaceChart& base, const DeformedChart& deformed,
                                const RuledPoint& rp, double step = 1e-4);

struct BundleIsometry {
  double theta = 0.0;
  AmbientVec xi, eta;              // normals of F_g
  AmbientVec xi_theta, eta_theta;  // their images
  double norm_defect = 0.0;        // max of | |xi_theta| - |xi| |, | |eta_theta| - |eta| |, |<xi_theta, eta_theta>|
};

BundleIsometry bundle_isometry(const SurfaceChart& base, const DeformedChart& deformed,
                               const RuledPoint& rp);

/// max over the directions X1, X2, E3, E4 of |<D xi_theta, eta_theta> - <D xi, eta>|.
double parallelism_residual(const SurfaceChart& base, const RuledPoint& rp, double theta,
                            double step = 1e-4);

/// The traceless form: beta(E1, E1) = -beta(E2, E2) and beta(E1, E2) in terms of xi, eta.
/// `literal` is the printed assignment (xi, -eta); `consistent` swaps the roles to
/// (eta, -xi), which is the assignment the deformation formula requires.
enum class BetaConvention { consistent, literal };

struct TracelessForm {
  // Coefficients on (xi, eta) of beta(E_i, E_j), i, j in {1, 2}; beta vanishes on V.
  Eigen::Vector2d b11, b12, b22;
  Eigen::Vector2d value(const Eigen::VectorXd& X, const Eigen::VectorXd& Y) const;
};

TracelessForm traceless_form(double Omega, BetaConvention convention = BetaConvention::consistent);

struct DeformationCheck {
  double residual = 0.0;       // max coefficient deviation, normalized by kappa
  double normal_leak = 0.0;    // part of numeric alpha_{F_theta} outside span{xi_theta, eta_theta}
};

DeformationCheck deformation_residual(const SurfaceChart& base, const RuledPoint& rp, double theta,
                                      BetaConvention convention = BetaConvention::consistent,
                                      double step = 1e-4);

/// A^theta matrices of F_theta for the normals (xi_theta, eta_theta).
ShapeOperators theta_shape_operators(const AdaptedFrame& frame, const std::vector<double>& t,
                                     double theta);
ShapeOperators theta_shape_operators(const SurfaceChart& base, const RuledPoint& rp, double theta);

/// Reflection L_theta on {E1, E2}.
Eigen::Matrix2d reflection_L(double theta);

/// max entry of A^theta_xi - (A_{R xi} - 2 kappa sin(theta/2) L) and the eta counterpart
/// with J L (J E1 = E2).
double reflection_identity_residual(const AdaptedFrame& frame, const std::vector<double>& t,
                                    double theta);

/// {k pi / 12 : k = 0..11}
std::vector<double> default_theta_grid();

}  // namespace isodeform
