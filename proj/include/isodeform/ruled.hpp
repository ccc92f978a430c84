#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "isodeform/surfgeo.hpp"

namespace isodeform {

inline constexpr double kIsotropyLambdaTol = 1e-7;

/// A point (p, v) of the ruled manifold: v = sum_j t_j e_{j+4}(z).
struct RuledPoint {
  cplx z{};
  std::vector<double> t;
};

/// Validates the length of t against the chart (n - 2 = N - 4 entries).
RuledPoint make_ruled_point(const SurfaceChart& chart, cplx z, std::vector<double> t);

using AmbientVec = std::vector<double>;

struct HorizontalData {
  AmbientVec FX1, FX2;
  double Omega = 1.0;
  double phi1 = 0, phi2 = 0;
  double psi1 = 0, psi2 = 0;
  double G1 = 0, G2 = 0, H1 = 0, H2 = 0;
};

struct NormalPair {
  AmbientVec xi, eta;
};

/// Shape operators on {E1, E2, E3, E4} with respect to the (unnormalized) normals
/// xi and eta, whose common length is Omega.
struct ShapeOperators {
  int n = 4;
  Eigen::Matrix4d A_xi = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d A_eta = Eigen::Matrix4d::Zero();
  double kappa = 0, h1 = 0, h2 = 0;
  double r1 = 0, r2 = 0, s1 = 0, s2 = 0;
  double B1 = 0, B2 = 0;
  double Omega = 1.0;

  /// n x n matrices, zero on the relative nullity directions E5..En.
  Eigen::MatrixXd full_xi() const;
  Eigen::MatrixXd full_eta() const;
};

/// Shape operator pattern shared by the base and deformed immersions.
ShapeOperators assemble_shape_operators(int n, double kappa, double h1, double h2, double r1,
                                        double r2, double s1, double s2);

AmbientVec eval_F(const SurfaceChart& chart, const RuledPoint& rp);
AmbientVec eval_F(const SurfaceChart& chart, const ValueFrame& frame, const std::vector<double>& t);

/// Throws ModelViolation unless the frame's first ellipse is a circle.
void require_isotropic(const AdaptedFrame& frame);

HorizontalData horizontal_data(const AdaptedFrame& frame, const std::vector<double>& t);
HorizontalData horizontal_data(const SurfaceChart& chart, const RuledPoint& rp);

NormalPair normal_frame(const AdaptedFrame& frame, const std::vector<double>& t);
NormalPair normal_frame(const SurfaceChart& chart, const RuledPoint& rp);

/// Scalars entering the closed-form operators.
struct ShapeScalars {
  double a1 = 0, a2 = 0, b1 = 0, b2 = 0;
  double e1a1 = 0, e2a1 = 0, e1b1 = 0, e2b1 = 0;
  double B1 = 0, B2 = 0;
};
ShapeScalars shape_scalars(const AdaptedFrame& frame);

ShapeOperators shape_operators(const AdaptedFrame& frame, const std::vector<double>& t);
ShapeOperators shape_operators(const SurfaceChart& chart, const RuledPoint& rp);

/// Finite-difference second fundamental form of (u, v, t) -> image(u, v) + sum t_j e_{j+4}(u, v),
/// with the frames e_j of `base` built at displaced points under the plan of the centre.
struct NumericSff {
  int n = 4;
  Eigen::MatrixXd chart_coords;            // column a: (u, v, t_1, ...) coordinates of E_a
  std::vector<Eigen::VectorXd> tangent;    // F_* E_a
  std::vector<std::vector<Eigen::VectorXd>> alpha;  // normal part of D^2 F (E_a, E_b)
  std::vector<std::vector<Eigen::VectorXd>> hessian;  // D^2 F (E_a, E_b), unprojected
  Eigen::MatrixXd A_xi, A_eta;             // <D^2 F (E_a, E_b), nu> for the supplied normals
  Eigen::MatrixXd metric;                  // <F_* E_a, F_* E_b>
  double mean_curvature = 0.0;             // |trace alpha| using the numeric metric
  double normal_defect = 0.0;              // max |<nu, F_* E_a>| / |nu|
};

NumericSff numeric_sff(const SurfaceChart& base, const SurfaceChart& image, const RuledPoint& rp,
                       const NormalPair& normals, double step = 1e-4);
NumericSff numeric_sff(const SurfaceChart& chart, const RuledPoint& rp, double step = 1e-4);

/// The eight scalar Ricci identities; entries 5..8 are exactly 0 when N = 6.
std::array<double, 8> ricci_residuals(const AdaptedFrame& frame);
std::array<double, 8> ricci_residuals(const SurfaceChart& chart, cplx z);

/// Same identities with an additive perturbation of a1 (sensitivity control).
std::array<double, 8> ricci_residuals_perturbed(const AdaptedFrame& frame, double delta_a1);

/// xi_theta = phi_1 e1 + phi_2 e2 + cos(theta) e3 + sin(theta) e4 and
/// eta_theta = psi_1 e1 + psi_2 e2 - sin(theta) e3 + cos(theta) e4, from the frame of g.
NormalPair normal_fields(const AdaptedFrame& frame, const std::vector<double>& t, double theta = 0.0);

/// Central difference (with one Richardson step when requested) of the normal fields
/// along the chart direction (du, dv, dt_1, ...).
struct FieldDerivative {
  Eigen::VectorXd xi, eta;
};
FieldDerivative normal_field_derivative(const SurfaceChart& chart, const AdaptedFrame& centre,
                                        const RuledPoint& rp, const Eigen::VectorXd& direction,
                                        double theta, double step, bool richardson = true);

/// Chart coordinates (du, dv, dt) of the horizontal lift X_i, i = 1, 2.
Eigen::VectorXd horizontal_lift(const AdaptedFrame& frame, const std::vector<double>& t, int i);

struct CompResiduals {
  double vertical = 0.0;    // xi_*, eta_* along E3, E4 and V0
  double horizontal = 0.0;  // xi_*, eta_* along X1, X2
  double max() const { return std::max(vertical, horizontal); }
};

CompResiduals comp_residuals(const SurfaceChart& chart, const RuledPoint& rp, double step = 1e-4);

struct RankProfile {
  int rank = 0;
  Eigen::MatrixXd nullity;  // columns: orthonormal basis of the kernel in E-coordinates
  bool generic = false;     // rank 4 with the kernel equal to V0
};

RankProfile rank_profile(const ShapeOperators& ops, double rel_tol = 1e-8);
RankProfile rank_profile(const SurfaceChart& chart, const RuledPoint& rp, double rel_tol = 1e-8);

/// max |omega_{5j}|, |omega_{6j}| over j >= 9: couplings the closed forms assume absent.
double outer_coupling(const AdaptedFrame& frame);

}  // namespace isodeform
