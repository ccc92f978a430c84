#include "isodeform/family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "isodeform/errors.hpp"

namespace isodeform {

namespace {

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

AmbientVec to_std(const Eigen::VectorXd& v) { return AmbientVec(v.data(), v.data() + v.size()); }

// Coordinates (T^u, T^v) of the tangent frame vector e_k.
Eigen::Vector2d tcoords(const AdaptedFrame& f, int k) {
  return {f.tangent_coord(k, 0).value(), f.tangent_coord(k, 1).value()};
}

Eigen::Vector2d tcoords(const SurfaceChart& chart, const ValueFrame& f, int k) {
  const auto D = evaluate_surface(chart, f.z, 1);
  const Eigen::VectorXd gu = to_eigen(D.at(1, 0)), gv = to_eigen(D.at(0, 1));
  Eigen::Matrix2d G;
  G << gu.dot(gu), gu.dot(gv), gu.dot(gv), gv.dot(gv);
  const Eigen::VectorXd e = to_eigen(f.e[k - 1]);
  return G.ldlt().solve(Eigen::Vector2d(e.dot(gu), e.dot(gv)));
}

// g_* applied to the chart vector T.
Eigen::VectorXd push(const SurfaceChart& chart, cplx z, const Eigen::Vector2d& T) {
  const auto D = evaluate_surface(chart, z, 1);
  return T(0) * to_eigen(D.at(1, 0)) + T(1) * to_eigen(D.at(0, 1));
}

// Intrinsic J on (x1, x2) coordinates in {e1, e2}: J e1 = e2.
const Eigen::Matrix2d kJ = (Eigen::Matrix2d() << 0, -1, 1, 0).finished();

}  // namespace

DeformedChart associated_surface(const SurfaceChart& chart, double theta) {
  if (!(theta >= 0.0 && theta < std::numbers::pi))
    throw DomainError("associated_surface: theta must lie in [0, pi)");
  DeformedChart out;
  out.theta = theta;
  out.chart = chart;
  out.chart.gauss = chart.gauss * std::polar(1.0, theta);
  out.chart.primitive = antiderivative(out.chart.gauss, 0.0);
  out.chart.provenance = chart.provenance + "/associated";
  return out;
}

double metric_residual(const SurfaceChart& base, const DeformedChart& d, cplx z) {
  const auto A = evaluate_surface(base, z, 1), B = evaluate_surface(d.chart, z, 1);
  auto gram = [](const SurfaceDerivatives& S) {
    const Eigen::VectorXd u = to_eigen(S.at(1, 0)), v = to_eigen(S.at(0, 1));
    return Eigen::Vector3d(u.dot(u), u.dot(v), v.dot(v));
  };
  const Eigen::Vector3d ga = gram(A), gb = gram(B);
  return (ga - gb).cwiseAbs().maxCoeff() / ga.cwiseAbs().maxCoeff();
}

double rotation_residual(const SurfaceChart& base, const DeformedChart& d, cplx z) {
  const ValueFrame f = frame_values(base, z);
  const double c = std::cos(d.theta), s = std::sin(d.theta);
  const Eigen::VectorXd e1 = to_eigen(f.e[0]), e2 = to_eigen(f.e[1]);
  double r = 0.0;
  for (int k = 1; k <= 2; ++k) {
    const Eigen::VectorXd got = push(d.chart, z, tcoords(base, f, k));
    const Eigen::VectorXd want = k == 1 ? Eigen::VectorXd(c * e1 + s * e2) : Eigen::VectorXd(-s * e1 + c * e2);
    r = std::max(r, (got - want).lpNorm<Eigen::Infinity>());
  }
  return r;
}

double second_form_residual(const SurfaceChart& base, const DeformedChart& d, cplx z) {
  const ValueFrame f = frame_values(base, z);
  const auto A = evaluate_surface(base, z, 2), B = evaluate_surface(d.chart, z, 2);
  const Eigen::VectorXd e1 = to_eigen(f.e[0]), e2 = to_eigen(f.e[1]);
  const int N = base.N;
  const Eigen::MatrixXd Pn = Eigen::MatrixXd::Identity(N, N) - e1 * e1.transpose() - e2 * e2.transpose();
  const Eigen::Vector2d T[2] = {tcoords(base, f, 1), tcoords(base, f, 2)};
  auto alpha = [&](const SurfaceDerivatives& S, const Eigen::Vector2d& X, const Eigen::Vector2d& Y) {
    const Eigen::VectorXd v = X(0) * Y(0) * to_eigen(S.at(2, 0)) + (X(0) * Y(1) + X(1) * Y(0)) * to_eigen(S.at(1, 1)) +
                              X(1) * Y(1) * to_eigen(S.at(0, 2));
    return Eigen::VectorXd(Pn * v);
  };
  const double c = std::cos(d.theta), s = std::sin(d.theta);
  double r = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      // J_theta X in chart coordinates: X = e_a, J e1 = e2, J e2 = -e1.
      const Eigen::Vector2d JX = a == 0 ? Eigen::Vector2d(c * T[0] + s * T[1]) : Eigen::Vector2d(c * T[1] - s * T[0]);
      r = std::max(r, (alpha(B, T[a], T[b]) - alpha(A, JX, T[b])).lpNorm<Eigen::Infinity>());
    }
  return r;
}

DeformedPoint deformed_immersion(const SurfaceChart& base, const DeformedChart& d, const RuledPoint& rp) {
  const AdaptedFrame f = adapted_frame(base, rp.z);
  require_isotropic(f);
  const int N = base.N;
  const double c = std::cos(d.theta), s = std::sin(d.theta);
  DeformedPoint out;
  out.frame.resize(N);
  out.frame[0] = to_std(push(d.chart, rp.z, tcoords(f, 1)));
  out.frame[1] = to_std(push(d.chart, rp.z, tcoords(f, 2)));
  const Eigen::VectorXd e3 = to_eigen(f.ev(3)), e4 = to_eigen(f.ev(4));
  const Eigen::VectorXd e3t = c * e3 + s * e4, e4t = -s * e3 + c * e4;
  out.frame[2] = to_std(e3t);
  out.frame[3] = to_std(e4t);
  for (int j = 5; j <= N; ++j) out.frame[j - 1] = f.ev(j);

  Eigen::VectorXd F = to_eigen(evaluate_surface(d.chart, rp.z, 0).at(0, 0));
  for (std::size_t j = 0; j < rp.t.size(); ++j) F += rp.t[j] * to_eigen(out.frame[j + 4]);
  out.F = to_std(F);

  const DualFields df = dual_fields(f);
  const double a1 = df.a1 * c + df.a2 * s, a2 = df.a2 * c - df.a1 * s;
  const double b1 = df.b1 * c + df.b2 * s, b2 = df.b2 * c - df.b1 * s;
  const double t1 = rp.t[0], t2 = rp.t[1];
  const double phi1 = t1 * a1 + t2 * b1, phi2 = t1 * a2 + t2 * b2;
  out.FX1 = to_std(to_eigen(out.frame[0]) - phi1 * e3t - phi2 * e4t);
  out.FX2 = to_std(to_eigen(out.frame[1]) - phi2 * e3t + phi1 * e4t);
  out.Omega = std::sqrt(1.0 + phi1 * phi1 + phi2 * phi2);
  return out;
}

double induced_metric_residual(const SurfaceChart& base, const DeformedChart& d, const RuledPoint& rp) {
  const AdaptedFrame f = adapted_frame(base, rp.z);
  const int N = base.N, m = N - 4, dim = 2 + m;
  auto chart_pushes = [&](const SurfaceChart& image) {
    const auto D = evaluate_surface(image, rp.z, 1);
    Eigen::MatrixXd M(N, dim);
    M.col(0) = to_eigen(D.at(1, 0));
    M.col(1) = to_eigen(D.at(0, 1));
    for (int j = 0; j < m; ++j) {
      const auto& e = f.e_jet(j + 5);
      for (int k = 0; k < N; ++k) {
        M(k, 0) += rp.t[j] * e[k].d_u();
        M(k, 1) += rp.t[j] * e[k].d_v();
        M(k, 2 + j) = e[k].value();
      }
    }
    return Eigen::MatrixXd(M.transpose() * M);
  };
  const Eigen::MatrixXd Ga = chart_pushes(base), Gb = chart_pushes(d.chart);
  return (Ga - Gb).cwiseAbs().maxCoeff() / Ga.cwiseAbs().maxCoeff();
}

double horizontal_lift_residual(const SurfaceChart& base, const DeformedChart& d, const RuledPoint& rp,
                                double h) {
  const AdaptedFrame f = adapted_frame(base, rp.z);
  const DeformedPoint dp = deformed_immersion(base, d, rp);
  const int m = base.N - 4;
  const FramePlan plan = f.plan();
  auto P = [&](cplx z) {
    const ValueFrame vf = frame_values(base, z, &plan);
    Eigen::VectorXd p = to_eigen(evaluate_surface(d.chart, z, 0).at(0, 0));
    for (int j = 0; j < m; ++j) p += rp.t[j] * to_eigen(vf.e[j + 4]);
    return p;
  };
  double r = 0.0;
  for (int i = 1; i <= 2; ++i) {
    const Eigen::VectorXd X = horizontal_lift(f, rp.t, i);
    const cplx dir(X(0), X(1));
    auto central = [&](double s) { return Eigen::VectorXd((P(rp.z + s * dir) - P(rp.z - s * dir)) / (2.0 * s)); };
    Eigen::VectorXd FX = (4.0 * central(0.5 * h) - central(h)) / 3.0;
    for (int j = 0; j < m; ++j) FX += X(2 + j) * to_eigen(f.ev(j + 5));
    const Eigen::VectorXd want = to_eigen(i == 1 ? dp.FX1 : dp.FX2);
    r = std::max(r, (FX - want).lpNorm<Eigen::Infinity>());
  }
  return r;
}

BundleIsometry bundle_isometry(const SurfaceChart& base, const DeformedChart& d, const RuledPoint& rp) {
  const AdaptedFrame f = adapted_frame(base, rp.z);
  const NormalPair np = normal_frame(f, rp.t);
  const DualFields df = dual_fields(f);
  const double theta = d.theta, c = std::cos(theta), s = std::sin(theta);
  const Eigen::Vector2d TVW(rp.t[0] * df.a1 + rp.t[1] * df.b1, rp.t[0] * df.a2 + rp.t[1] * df.b2);
  // g_theta_* on intrinsic coordinates in {e1, e2}.
  Eigen::MatrixXd gt(base.N, 2);
  gt.col(0) = push(d.chart, rp.z, tcoords(f, 1));
  gt.col(1) = push(d.chart, rp.z, tcoords(f, 2));
  auto Jrot = [&](double a) { return Eigen::Matrix2d(std::cos(a) * Eigen::Matrix2d::Identity() + std::sin(a) * kJ); };
  const Eigen::VectorXd e3 = to_eigen(f.ev(3)), e4 = to_eigen(f.ev(4));
  const Eigen::VectorXd xi_t = gt * (Jrot(-theta) * TVW) + c * e3 + s * e4;
  const Eigen::VectorXd eta_t = -gt * (Jrot(std::numbers::pi / 2 - theta) * TVW) - s * e3 + c * e4;

  BundleIsometry bi;
  bi.theta = theta;
  bi.xi = np.xi;
  bi.eta = np.eta;
  bi.xi_theta = to_std(xi_t);
  bi.eta_theta = to_std(eta_t);
  const double nx = to_eigen(np.xi).norm(), ne = to_eigen(np.eta).norm();
  bi.norm_defect = std::max({std::abs(xi_t.norm() - nx), std::abs(eta_t.norm() - ne),
                             std::abs(xi_t.dot(eta_t)) / (nx * ne)});
  return bi;
}

double parallelism_residual(const SurfaceChart& base, const RuledPoint& rp, double theta, double h) {
  const AdaptedFrame f = adapted_frame(base, rp.z);
  require_isotropic(f);
  const int m = base.N - 4;
  std::vector<Eigen::VectorXd> dirs = {horizontal_lift(f, rp.t, 1), horizontal_lift(f, rp.t, 2)};
  for (int j = 0; j < 2; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(2 + m);
    e(2 + j) = 1.0;
    dirs.push_back(e);
  }
  const NormalPair n0 = normal_fields(f, rp.t, 0.0), nt = normal_fields(f, rp.t, theta);
  double r = 0.0;
  for (const auto& X : dirs) {
    const FieldDerivative d0 = normal_field_derivative(base, f, rp, X, 0.0, h);
    const FieldDerivative dt = normal_field_derivative(base, f, rp, X, theta, h);
    r = std::max(r, std::abs(dt.xi.dot(to_eigen(nt.eta)) - d0.xi.dot(to_eigen(n0.eta))));
  }
  return r;
}

Eigen::Vector2d TracelessForm::value(const Eigen::VectorXd& X, const Eigen::VectorXd& Y) const {
  return X(0) * Y(0) * b11 + (X(0) * Y(1) + X(1) * Y(0)) * b12 + X(1) * Y(1) * b22;
}

TracelessForm traceless_form(double Omega, BetaConvention convention) {
  const double w = 1.0 / (Omega * Omega);
  TracelessForm b;
  if (convention == BetaConvention::literal) {
    b.b11 = {w, 0.0};
    b.b12 = {0.0, -w};
  } else {
    b.b11 = {0.0, w};
    b.b12 = {-w, 0.0};
  }
  b.b22 = -b.b11;
  return b;
}

DeformationCheck deformation_residual(const SurfaceChart& base, const RuledPoint& rp, double theta,
                                      BetaConvention convention, double step) {
  const AdaptedFrame f = adapted_frame(base, rp.z);
  const NormalPair np = normal_frame(f, rp.t);
  const DeformedChart d = associated_surface(base, theta);
  const BundleIsometry bi = bundle_isometry(base, d, rp);
  const NumericSff num0 = numeric_sff(base, base, rp, np, step);
  const NumericSff numt = numeric_sff(base, d.chart, rp, NormalPair{bi.xi_theta, bi.eta_theta}, step);

  const int n = num0.n;
  const double W2 = to_eigen(np.xi).squaredNorm(), W = std::sqrt(W2), kappa = f.kappa();
  const double c = std::cos(theta), s = std::sin(theta), sh = std::sin(theta / 2);
  const TracelessForm beta = traceless_form(W, convention);
  const Eigen::Matrix2d Jh = std::cos(-theta / 2) * Eigen::Matrix2d::Identity() + std::sin(-theta / 2) * kJ;
  const Eigen::VectorXd xt = to_eigen(bi.xi_theta), et = to_eigen(bi.eta_theta);

  DeformationCheck out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Eigen::Vector2d lhs(numt.A_xi(a, b) / W2, numt.A_eta(a, b) / W2);
      const double x = num0.A_xi(a, b) / W2, y = num0.A_eta(a, b) / W2;
      Eigen::Vector2d rhs(c * x + s * y, -s * x + c * y);
      Eigen::VectorXd X = Eigen::VectorXd::Zero(n), Y = Eigen::VectorXd::Zero(n);
      X(a) = 1.0;
      Y(b) = 1.0;
      if (a < 2) X.head<2>() = Jh * X.head<2>();
      rhs += 2.0 * kappa * sh * beta.value(X, Y);
      out.residual = std::max(out.residual, (lhs - rhs).cwiseAbs().maxCoeff() * W / kappa);
      const Eigen::VectorXd span = lhs(0) * xt + lhs(1) * et;
      out.normal_leak = std::max(out.normal_leak, (numt.alpha[a][b] - span).norm() / kappa);
    }
  return out;
}

ShapeOperators theta_shape_operators(const AdaptedFrame& f, const std::vector<double>& t, double theta) {
  const ShapeOperators S = shape_operators(f, t);
  const ShapeScalars sc = shape_scalars(f);
  const double c = std::cos(theta), s = std::sin(theta);
  const double a1 = sc.a1 * c + sc.a2 * s, a2 = sc.a2 * c - sc.a1 * s;
  const double b1 = sc.b1 * c + sc.b2 * s, b2 = sc.b2 * c - sc.b1 * s;
  const double h1 = S.h1 * c + S.h2 * s, h2 = -S.h1 * s + S.h2 * c;
  ShapeOperators T = assemble_shape_operators(S.n, S.kappa, h1, h2, -a1 / S.Omega, -a2 / S.Omega,
                                              -b1 / S.Omega, -b2 / S.Omega);
  T.B1 = S.B1;
  T.B2 = S.B2;
  T.Omega = S.Omega;
  return T;
}

ShapeOperators theta_shape_operators(const SurfaceChart& base, const RuledPoint& rp, double theta) {
  return theta_shape_operators(adapted_frame(base, rp.z), rp.t, theta);
}

Eigen::Matrix2d reflection_L(double theta) {
  const double sh = std::sin(theta / 2), ch = std::cos(theta / 2);
  Eigen::Matrix2d L;
  L << -sh, ch, ch, sh;
  return L;
}

double reflection_identity_residual(const AdaptedFrame& f, const std::vector<double>& t, double theta) {
  const ShapeOperators S = shape_operators(f, t), T = theta_shape_operators(f, t, theta);
  const double c = std::cos(theta), s = std::sin(theta), sh = std::sin(theta / 2);
  Eigen::Matrix4d Lx = Eigen::Matrix4d::Zero(), Le = Eigen::Matrix4d::Zero();
  Lx.topLeftCorner<2, 2>() = reflection_L(theta);
  Le.topLeftCorner<2, 2>() = kJ * reflection_L(theta);
  const Eigen::Matrix4d want_xi = c * S.A_xi + s * S.A_eta - 2.0 * S.kappa * sh * Lx;
  const Eigen::Matrix4d want_eta = -s * S.A_xi + c * S.A_eta - 2.0 * S.kappa * sh * Le;
  return std::max((T.A_xi - want_xi).cwiseAbs().maxCoeff(), (T.A_eta - want_eta).cwiseAbs().maxCoeff());
}

std::vector<double> default_theta_grid() {
  std::vector<double> g;
  for (int k = 0; k < 12; ++k) g.push_back(k * std::numbers::pi / 12);
  return g;
}

}  // namespace isodeform
