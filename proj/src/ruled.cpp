#include "isodeform/ruled.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isodeform/errors.hpp"

namespace isodeform {

namespace {

// omega_ij(e_k) with indices beyond the ambient dimension read as 0.
double om(const AdaptedFrame& f, int i, int j, int k) {
  if (i > f.N() || j > f.N()) return 0.0;
  return f.omega(i, j, k);
}

double tj(const std::vector<double>& t, int j) {
  return j <= static_cast<int>(t.size()) ? t[static_cast<std::size_t>(j - 1)] : 0.0;
}

void add(AmbientVec& x, double c, const std::vector<double>& v) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += c * v[i];
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void check_t(const AdaptedFrame& f, const std::vector<double>& t) {
  if (static_cast<int>(t.size()) != f.N() - 4)
    throw ShapeError("ruling coordinates must have " + std::to_string(f.N() - 4) + " entries");
}

// e_i(omega_ab(e_j)) from the frame jets.
double deriv(const AdaptedFrame& f, int i, int a, int b, int j) { return f.along(i, f.omega_jet(a, b, j)); }

}  // namespace

RuledPoint make_ruled_point(const SurfaceChart& chart, cplx z, std::vector<double> t) {
  if (static_cast<int>(t.size()) != chart.N - 4)
    throw ShapeError("ruling coordinates must have " + std::to_string(chart.N - 4) + " entries");
  for (double x : t)
    if (!std::isfinite(x)) throw ShapeError("ruling coordinates must be finite");
  check_domain(chart, z);
  return {z, std::move(t)};
}

Eigen::MatrixXd ShapeOperators::full_xi() const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  M.topLeftCorner(4, 4) = A_xi;
  return M;
}

Eigen::MatrixXd ShapeOperators::full_eta() const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  M.topLeftCorner(4, 4) = A_eta;
  return M;
}

ShapeOperators assemble_shape_operators(int n, double kappa, double h1, double h2, double r1,
                                        double r2, double s1, double s2) {
  ShapeOperators S;
  S.n = n;
  S.kappa = kappa;
  S.h1 = h1;
  S.h2 = h2;
  S.r1 = r1;
  S.r2 = r2;
  S.s1 = s1;
  S.s2 = s2;
  S.A_xi << kappa + h1, h2, r1, s1,
            h2, -kappa - h1, r2, s2,
            r1, r2, 0, 0,
            s1, s2, 0, 0;
  S.A_eta << h2, kappa - h1, r2, s2,
             kappa - h1, -h2, -r1, -s1,
             r2, -r1, 0, 0,
             s2, -s1, 0, 0;
  return S;
}

AmbientVec eval_F(const SurfaceChart& chart, const ValueFrame& frame, const std::vector<double>& t) {
  if (static_cast<int>(t.size()) != chart.N - 4)
    throw ShapeError("ruling coordinates must have " + std::to_string(chart.N - 4) + " entries");
  AmbientVec p = evaluate_surface(chart, frame.z, 0).at(0, 0);
  for (std::size_t j = 0; j < t.size(); ++j) add(p, t[j], frame.e[j + 4]);
  return p;
}

AmbientVec eval_F(const SurfaceChart& chart, const RuledPoint& rp) {
  return eval_F(chart, frame_values(chart, rp.z), rp.t);
}

void require_isotropic(const AdaptedFrame& frame) {
  if (std::abs(frame.lambda() - 1.0) > kIsotropyLambdaTol)
    throw ModelViolation("ruled construction needs a 1-isotropic surface; lambda = " +
                         std::to_string(frame.lambda()));
}

HorizontalData horizontal_data(const AdaptedFrame& f, const std::vector<double>& t) {
  require_isotropic(f);
  check_t(f, t);
  const DualFields d = dual_fields(f);
  HorizontalData h;
  const double t1 = tj(t, 1), t2 = tj(t, 2), t3 = tj(t, 3), t4 = tj(t, 4);
  h.phi1 = t1 * d.a1 + t2 * d.b1;
  h.phi2 = t1 * d.a2 + t2 * d.b2;
  h.psi1 = t1 * d.c1 + t2 * d.d1;
  h.psi2 = t1 * d.c2 + t2 * d.d2;
  for (int i = 1; i <= 2; ++i) {
    const double G = t2 * om(f, 5, 6, i) + t3 * om(f, 5, 7, i) + t4 * om(f, 5, 8, i);
    const double H = -t1 * om(f, 5, 6, i) + t3 * om(f, 6, 7, i) + t4 * om(f, 6, 8, i);
    (i == 1 ? h.G1 : h.G2) = G;
    (i == 1 ? h.H1 : h.H2) = H;
  }
  const double inv_lambda = 1.0 / d.lambda;
  h.FX1 = f.ev(1);
  add(h.FX1, -h.phi1, f.ev(3));
  add(h.FX1, -inv_lambda * h.phi2, f.ev(4));
  h.FX2 = f.ev(2);
  add(h.FX2, -h.phi2, f.ev(3));
  add(h.FX2, inv_lambda * h.phi1, f.ev(4));
  h.Omega = std::sqrt(1.0 + h.phi1 * h.phi1 + h.phi2 * h.phi2);
  return h;
}

HorizontalData horizontal_data(const SurfaceChart& chart, const RuledPoint& rp) {
  return horizontal_data(adapted_frame(chart, rp.z), rp.t);
}

NormalPair normal_frame(const AdaptedFrame& f, const std::vector<double>& t) {
  const HorizontalData h = horizontal_data(f, t);
  NormalPair np;
  np.xi = f.ev(3);
  add(np.xi, h.phi1, f.ev(1));
  add(np.xi, h.phi2, f.ev(2));
  np.eta = f.ev(4);
  add(np.eta, h.psi1, f.ev(1));
  add(np.eta, h.psi2, f.ev(2));
  return np;
}

NormalPair normal_frame(const SurfaceChart& chart, const RuledPoint& rp) {
  return normal_frame(adapted_frame(chart, rp.z), rp.t);
}

ShapeScalars shape_scalars(const AdaptedFrame& f) {
  ShapeScalars s;
  s.a1 = f.omega(3, 5, 1);
  s.a2 = f.omega(3, 5, 2);
  s.b1 = f.omega(3, 6, 1);
  s.b2 = f.omega(3, 6, 2);
  s.e1a1 = deriv(f, 1, 3, 5, 1);
  s.e2a1 = deriv(f, 2, 3, 5, 1);
  s.e1b1 = deriv(f, 1, 3, 6, 1);
  s.e2b1 = deriv(f, 2, 3, 6, 1);
  s.B1 = f.omega(1, 2, 1) + f.omega(3, 4, 1);
  s.B2 = f.omega(1, 2, 2) + f.omega(3, 4, 2);
  return s;
}

ShapeOperators shape_operators(const AdaptedFrame& f, const std::vector<double>& t) {
  const HorizontalData hd = horizontal_data(f, t);
  const ShapeScalars s = shape_scalars(f);
  const double t1 = tj(t, 1), t2 = tj(t, 2), t3 = tj(t, 3), t4 = tj(t, 4);
  const double W2 = hd.Omega * hd.Omega;
  auto h_of = [&](int i, double eia1, double eib1, double Bi) {
    return -(t1 * (eia1 - s.a2 * Bi - s.b1 * om(f, 5, 6, i)) +
             t2 * (eib1 - s.b2 * Bi + s.a1 * om(f, 5, 6, i)) +
             t3 * (s.a1 * om(f, 5, 7, i) + s.b1 * om(f, 6, 7, i)) +
             t4 * (s.a1 * om(f, 5, 8, i) + s.b1 * om(f, 6, 8, i))) /
           W2;
  };
  const double h1 = h_of(1, s.e1a1, s.e1b1, s.B1);
  const double h2 = h_of(2, s.e2a1, s.e2b1, s.B2);
  ShapeOperators S = assemble_shape_operators(f.N() - 2, f.kappa(), h1, h2, -s.a1 / hd.Omega,
                                              -s.a2 / hd.Omega, -s.b1 / hd.Omega, -s.b2 / hd.Omega);
  S.B1 = s.B1;
  S.B2 = s.B2;
  S.Omega = hd.Omega;
  return S;
}

ShapeOperators shape_operators(const SurfaceChart& chart, const RuledPoint& rp) {
  return shape_operators(adapted_frame(chart, rp.z), rp.t);
}

NumericSff numeric_sff(const SurfaceChart& base, const SurfaceChart& image, const RuledPoint& rp,
                       const NormalPair& normals, double h) {
  if (!(h >= 1e-6 && h <= 1e-3)) throw DomainError("numeric_sff: step must lie in [1e-6, 1e-3]");
  if (image.N != base.N) throw ShapeError("numeric_sff: charts differ in ambient dimension");
  const int N = base.N, n = N - 2, m = N - 4, dim = 2 + m;
  if (static_cast<int>(rp.t.size()) != m) throw ShapeError("numeric_sff: wrong number of ruling coordinates");

  const ValueFrame c = frame_values(base, rp.z);
  auto frame_at = [&](double du, double dv) { return frame_values(base, rp.z + cplx(du, dv), &c.plan); };
  auto P = [&](const ValueFrame& f) {
    Eigen::VectorXd p = to_eigen(evaluate_surface(image, f.z, 0).at(0, 0));
    for (int j = 0; j < m; ++j) p += rp.t[j] * to_eigen(f.e[j + 4]);
    return p;
  };
  const ValueFrame fpu = frame_at(h, 0), fmu = frame_at(-h, 0), fpv = frame_at(0, h), fmv = frame_at(0, -h);
  const Eigen::VectorXd P0 = P(c), Ppu = P(fpu), Pmu = P(fmu), Ppv = P(fpv), Pmv = P(fmv);
  const Eigen::VectorXd Ppp = P(frame_at(h, h)), Ppm = P(frame_at(h, -h)), Pmp = P(frame_at(-h, h)),
                        Pmm = P(frame_at(-h, -h));

  // Chart Hessian over (u, v, t_1..t_m); t-t entries vanish identically.
  std::vector<std::vector<Eigen::VectorXd>> H(dim, std::vector<Eigen::VectorXd>(dim, Eigen::VectorXd::Zero(N)));
  H[0][0] = (Ppu - 2.0 * P0 + Pmu) / (h * h);
  H[1][1] = (Ppv - 2.0 * P0 + Pmv) / (h * h);
  H[0][1] = H[1][0] = (Ppp - Ppm - Pmp + Pmm) / (4.0 * h * h);
  for (int j = 0; j < m; ++j) {
    H[0][2 + j] = H[2 + j][0] = (to_eigen(fpu.e[j + 4]) - to_eigen(fmu.e[j + 4])) / (2.0 * h);
    H[1][2 + j] = H[2 + j][1] = (to_eigen(fpv.e[j + 4]) - to_eigen(fmv.e[j + 4])) / (2.0 * h);
  }
  const Eigen::VectorXd Pu = (Ppu - Pmu) / (2.0 * h), Pv = (Ppv - Pmv) / (2.0 * h);
  auto push = [&](const Eigen::VectorXd& coords) {
    Eigen::VectorXd v = coords(0) * Pu + coords(1) * Pv;
    for (int j = 0; j < m; ++j) v += coords(2 + j) * to_eigen(c.e[j + 4]);
    return v;
  };

  // Tangent coordinates of e1, e2 from the exact metric of the base chart.
  const auto D = evaluate_surface(base, rp.z, 1);
  const Eigen::VectorXd gu = to_eigen(D.at(1, 0)), gv = to_eigen(D.at(0, 1));
  Eigen::Matrix2d G;
  G << gu.dot(gu), gu.dot(gv), gu.dot(gv), gv.dot(gv);

  NumericSff out;
  out.n = n;
  out.chart_coords = Eigen::MatrixXd::Zero(dim, n);
  for (int i = 0; i < 2; ++i) {
    const Eigen::VectorXd ei = to_eigen(c.e[i]);
    const Eigen::Vector2d T = G.ldlt().solve(Eigen::Vector2d(ei.dot(gu), ei.dot(gv)));
    Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
    w(0) = T(0);
    w(1) = T(1);
    const Eigen::VectorXd Fw = push(w);
    for (int j = 0; j < m; ++j) w(2 + j) = -Fw.dot(to_eigen(c.e[j + 4]));
    out.chart_coords.col(i) = w / push(w).norm();
  }
  for (int j = 0; j < m; ++j) out.chart_coords(2 + j, 2 + j) = 1.0;

  Eigen::MatrixXd Tm(N, n);
  for (int a = 0; a < n; ++a) {
    out.tangent.push_back(push(out.chart_coords.col(a)));
    Tm.col(a) = out.tangent.back();
  }
  out.metric = Tm.transpose() * Tm;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Tm);
  const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(N, n);
  const Eigen::MatrixXd Pperp = Eigen::MatrixXd::Identity(N, N) - Q * Q.transpose();

  const Eigen::VectorXd xi = to_eigen(normals.xi), eta = to_eigen(normals.eta);
  out.A_xi.resize(n, n);
  out.A_eta.resize(n, n);
  out.alpha.assign(n, std::vector<Eigen::VectorXd>(n));
  out.hessian.assign(n, std::vector<Eigen::VectorXd>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Eigen::VectorXd hab = Eigen::VectorXd::Zero(N);
      for (int p = 0; p < dim; ++p)
        for (int q = 0; q < dim; ++q) {
          const double w = out.chart_coords(p, a) * out.chart_coords(q, b);
          if (w != 0.0) hab += w * H[p][q];
        }
      out.hessian[a][b] = hab;
      out.alpha[a][b] = Pperp * hab;
      out.A_xi(a, b) = out.alpha[a][b].dot(xi);
      out.A_eta(a, b) = out.alpha[a][b].dot(eta);
    }
  const Eigen::MatrixXd ginv = out.metric.inverse();
  Eigen::VectorXd Hvec = Eigen::VectorXd::Zero(N);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) Hvec += ginv(a, b) * out.alpha[a][b];
  out.mean_curvature = Hvec.norm();
  for (int a = 0; a < n; ++a) {
    const double ta = out.tangent[a].norm();
    out.normal_defect = std::max({out.normal_defect, std::abs(xi.dot(out.tangent[a])) / (xi.norm() * ta),
                                  std::abs(eta.dot(out.tangent[a])) / (eta.norm() * ta)});
  }
  return out;
}

NumericSff numeric_sff(const SurfaceChart& chart, const RuledPoint& rp, double step) {
  return numeric_sff(chart, chart, rp, normal_frame(chart, rp), step);
}

std::array<double, 8> ricci_residuals_perturbed(const AdaptedFrame& f, double delta_a1) {
  const double a1 = f.omega(3, 5, 1) + delta_a1, a2 = f.omega(3, 5, 2);
  const double b1 = f.omega(3, 6, 1), b2 = f.omega(3, 6, 2);
  const double B1 = f.omega(1, 2, 1) + f.omega(3, 4, 1);
  const double B2 = f.omega(1, 2, 2) + f.omega(3, 4, 2);
  const double e1a1 = deriv(f, 1, 3, 5, 1), e2a1 = deriv(f, 2, 3, 5, 1);
  const double e1a2 = deriv(f, 1, 3, 5, 2), e2a2 = deriv(f, 2, 3, 5, 2);
  const double e1b1 = deriv(f, 1, 3, 6, 1), e2b1 = deriv(f, 2, 3, 6, 1);
  const double e1b2 = deriv(f, 1, 3, 6, 2), e2b2 = deriv(f, 2, 3, 6, 2);
  const double w1 = om(f, 5, 6, 1), w2 = om(f, 5, 6, 2);
  std::array<double, 8> r{};
  r[0] = e1a2 - e2a1 + a1 * B1 + a2 * B2 - b2 * w1 + b1 * w2;
  r[1] = e1b2 - e2b1 + b1 * B1 + b2 * B2 + a2 * w1 - a1 * w2;
  r[2] = e1a1 + e2a2 - a2 * B1 + a1 * B2 - b1 * w1 - b2 * w2;
  r[3] = e1b1 + e2b2 - b2 * B1 + b1 * B2 + a1 * w1 + a2 * w2;
  if (f.N() >= 7) {
    r[4] = a2 * om(f, 5, 7, 1) - a1 * om(f, 5, 7, 2) + b2 * om(f, 6, 7, 1) - b1 * om(f, 6, 7, 2);
    r[6] = a1 * om(f, 5, 7, 1) + a2 * om(f, 5, 7, 2) + b1 * om(f, 6, 7, 1) + b2 * om(f, 6, 7, 2);
  }
  if (f.N() >= 8) {
    r[5] = a2 * om(f, 5, 8, 1) - a1 * om(f, 5, 8, 2) + b2 * om(f, 6, 8, 1) - b1 * om(f, 6, 8, 2);
    r[7] = a1 * om(f, 5, 8, 1) + a2 * om(f, 5, 8, 2) + b1 * om(f, 6, 8, 1) + b2 * om(f, 6, 8, 2);
  }
  for (double& x : r) x = std::abs(x);
  return r;
}

std::array<double, 8> ricci_residuals(const AdaptedFrame& f) { return ricci_residuals_perturbed(f, 0.0); }

std::array<double, 8> ricci_residuals(const SurfaceChart& chart, cplx z) {
  return ricci_residuals(adapted_frame(chart, z));
}

NormalPair normal_fields(const AdaptedFrame& g, const std::vector<double>& t, double theta) {
  const double t1 = tj(t, 1), t2 = tj(t, 2);
  const double phi1 = t1 * g.omega(3, 5, 1) + t2 * g.omega(3, 6, 1);
  const double phi2 = t1 * g.omega(3, 5, 2) + t2 * g.omega(3, 6, 2);
  const double psi1 = t1 * g.omega(4, 5, 1) + t2 * g.omega(4, 6, 1);
  const double psi2 = t1 * g.omega(4, 5, 2) + t2 * g.omega(4, 6, 2);
  const double c = std::cos(theta), s = std::sin(theta);
  NormalPair out;
  out.xi.assign(static_cast<std::size_t>(g.N()), 0.0);
  out.eta = out.xi;
  add(out.xi, phi1, g.ev(1));
  add(out.xi, phi2, g.ev(2));
  add(out.xi, c, g.ev(3));
  add(out.xi, s, g.ev(4));
  add(out.eta, psi1, g.ev(1));
  add(out.eta, psi2, g.ev(2));
  add(out.eta, -s, g.ev(3));
  add(out.eta, c, g.ev(4));
  return out;
}

FieldDerivative normal_field_derivative(const SurfaceChart& chart, const AdaptedFrame& centre,
                                        const RuledPoint& rp, const Eigen::VectorXd& dir,
                                        double theta, double h, bool richardson) {
  const int m = centre.N() - 4;
  if (dir.size() != 2 + m) throw ShapeError("normal_field_derivative: direction has wrong length");
  const FramePlan plan = centre.plan();
  auto at = [&](double s) {
    std::vector<double> t = rp.t;
    for (int j = 0; j < m; ++j) t[j] += s * dir(2 + j);
    if (dir(0) == 0.0 && dir(1) == 0.0) return normal_fields(centre, t, theta);
    const AdaptedFrame g = adapted_frame(chart, rp.z + s * cplx(dir(0), dir(1)), &plan);
    return normal_fields(g, t, theta);
  };
  auto central = [&](double s) {
    const NormalPair p = at(s), q = at(-s);
    FieldDerivative d;
    d.xi = (to_eigen(p.xi) - to_eigen(q.xi)) / (2.0 * s);
    d.eta = (to_eigen(p.eta) - to_eigen(q.eta)) / (2.0 * s);
    return d;
  };
  FieldDerivative d = central(h);
  if (richardson) {
    const FieldDerivative d2 = central(0.5 * h);
    d.xi = (4.0 * d2.xi - d.xi) / 3.0;
    d.eta = (4.0 * d2.eta - d.eta) / 3.0;
  }
  return d;
}

Eigen::VectorXd horizontal_lift(const AdaptedFrame& f, const std::vector<double>& t, int i) {
  const int m = f.N() - 4;
  Eigen::VectorXd X(2 + m);
  X(0) = f.tangent_coord(i, 0).value();
  X(1) = f.tangent_coord(i, 1).value();
  for (int j = 1; j <= m; ++j) {
    double s = 0.0;
    for (int k = 1; k <= m; ++k) s += tj(t, k) * f.omega(k + 4, j + 4, i);
    X(1 + j) = -s;
  }
  return X;
}

CompResiduals comp_residuals(const SurfaceChart& chart, const RuledPoint& rp, double h) {
  const AdaptedFrame f = adapted_frame(chart, rp.z);
  require_isotropic(f);
  check_t(f, rp.t);
  const int N = f.N(), m = N - 4;
  const FramePlan plan = f.plan();

  auto directional = [&](double cu, double cv, const std::vector<double>& ct) {
    Eigen::VectorXd dir(2 + m);
    dir << cu, cv, Eigen::Map<const Eigen::VectorXd>(ct.data(), m);
    return normal_field_derivative(chart, f, rp, dir, 0.0, h);
  };
  using Fields = FieldDerivative;

  const DualFields d = dual_fields(f);
  const double lambda = d.lambda, sigma = 1.0 / lambda, kappa = f.kappa();
  std::vector<Eigen::VectorXd> e(N + 1);
  for (int i = 1; i <= N; ++i) e[i] = to_eigen(f.ev(i));
  auto tangent = [&](double x1, double x2) -> Eigen::VectorXd { return x1 * e[1] + x2 * e[2]; };
  const Eigen::VectorXd V = tangent(d.a1, d.a2), W = tangent(d.b1, d.b2);
  const Eigen::VectorXd Y = tangent(d.c1, d.c2), Z = tangent(d.d1, d.d2);

  CompResiduals res;
  for (int j = 0; j < m; ++j) {
    std::vector<double> ct(m, 0.0);
    ct[j] = 1.0;
    const Fields D = directional(0.0, 0.0, ct);
    Eigen::VectorXd want_xi = Eigen::VectorXd::Zero(N), want_eta = Eigen::VectorXd::Zero(N);
    if (j == 0) {
      want_xi = V;
      want_eta = Y;
    } else if (j == 1) {
      want_xi = W;
      want_eta = Z;
    }
    res.vertical = std::max({res.vertical, (D.xi - want_xi).lpNorm<Eigen::Infinity>(),
                             (D.eta - want_eta).lpNorm<Eigen::Infinity>()});
  }

  const HorizontalData hd = horizontal_data(f, rp.t);
  const double t1 = tj(rp.t, 1), t2 = tj(rp.t, 2);
  auto ed = [&](int i, int a, int b, int k) { return deriv(f, i, a, b, k); };
  // e_i(phi_j), e_i(psi_j)
  auto ephi = [&](int i, int j) { return t1 * ed(i, 3, 5, j) + t2 * ed(i, 3, 6, j); };
  auto epsi = [&](int i, int j) { return t1 * ed(i, 4, 5, j) + t2 * ed(i, 4, 6, j); };
  const Eigen::VectorXd TV = t1 * V + t2 * W;
  auto J = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return tangent(-x.dot(e[2]), x.dot(e[1]));
  };
  auto om12 = [&](int i) { return f.omega(1, 2, i); };
  auto om34 = [&](int i) { return f.omega(3, 4, i); };
  const double G[3] = {0.0, hd.G1, hd.G2}, Hh[3] = {0.0, hd.H1, hd.H2};

  for (int i = 1; i <= 2; ++i) {
    const Eigen::VectorXd X = horizontal_lift(f, rp.t, i);
    const Fields D = normal_field_derivative(chart, f, rp, X, 0.0, h);

    Eigen::VectorXd wx, we;
    if (i == 1) {
      wx = tangent(ephi(1, 1) - kappa, ephi(1, 2)) + om12(1) * J(TV) + G[1] * V + Hh[1] * W +
           kappa * hd.phi1 * e[3] + (om34(1) + lambda * kappa * hd.phi2) * e[4] + d.a1 * e[5] + d.b1 * e[6];
      we = tangent(epsi(1, 1), epsi(1, 2) - lambda * kappa) + sigma * om12(1) * TV - sigma * G[1] * J(V) -
           sigma * Hh[1] * J(W) - (om34(1) - kappa * hd.psi1) * e[3] + lambda * kappa * hd.psi2 * e[4] +
           sigma * d.a2 * e[5] + sigma * d.b2 * e[6];
    } else {
      wx = tangent(ephi(2, 1), ephi(2, 2) + kappa) + om12(2) * J(TV) + G[2] * V + Hh[2] * W -
           kappa * hd.phi2 * e[3] + (om34(2) + lambda * kappa * hd.phi1) * e[4] + d.a2 * e[5] + d.b2 * e[6];
      we = tangent(epsi(2, 1) - lambda * kappa, epsi(2, 2)) + sigma * om12(2) * TV - sigma * G[2] * J(V) -
           sigma * Hh[2] * J(W) - (om34(2) + kappa * hd.psi2) * e[3] + lambda * kappa * hd.psi1 * e[4] -
           sigma * d.a1 * e[5] - sigma * d.b1 * e[6];
    }
    res.horizontal = std::max({res.horizontal, (D.xi - wx).lpNorm<Eigen::Infinity>(),
                               (D.eta - we).lpNorm<Eigen::Infinity>()});
  }
  return res;
}

RankProfile rank_profile(const ShapeOperators& ops, double rel_tol) {
  const int n = ops.n;
  Eigen::MatrixXd M(2 * n, n);
  M << ops.full_xi(), ops.full_eta();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  RankProfile rp;
  const double top = sv.size() ? sv(0) : 0.0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * top) ++rp.rank;
  rp.nullity = svd.matrixV().rightCols(n - rp.rank);
  double leak = 0.0;
  if (rp.nullity.cols() > 0) leak = rp.nullity.topRows(4).cwiseAbs().maxCoeff();
  rp.generic = rp.rank == 4 && leak < 1e-8;
  return rp;
}

RankProfile rank_profile(const SurfaceChart& chart, const RuledPoint& rp, double rel_tol) {
  return rank_profile(shape_operators(chart, rp), rel_tol);
}

double outer_coupling(const AdaptedFrame& f) {
  double m = 0.0;
  for (int j = 9; j <= f.N(); ++j)
    for (int k = 1; k <= 2; ++k) m = std::max({m, std::abs(f.omega(5, j, k)), std::abs(f.omega(6, j, k))});
  return m;
}

}  // namespace isodeform
