#include "isodeform/holocurve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isodeform/errors.hpp"

namespace isodeform {

SurfaceChart holo_chart(const HoloCurveSpec& spec) {
  if (spec.m < 4) throw SeedError("holo_chart: need complex dimension m >= 4 (n >= 6)");
  if (spec.components.ncomp() != spec.m) throw SeedError("holo_chart: curve must have m components");
  const int N = 2 * spec.m;
  const HoloSeries dz = spec.components.derivative();
  HoloSeries gamma(N, dz.order(), dz.base_point());
  const cplx mi{0.0, -1.0};
  for (int k = 0; k < spec.m; ++k)
    for (int j = 0; j <= dz.order(); ++j) {
      gamma.coeff(2 * k, j) = dz.coeff(k, j);
      gamma.coeff(2 * k + 1, j) = mi * dz.coeff(k, j);
    }
  SurfaceChart chart = chart_from_gauss_map(gamma, spec.radius, "holomorphic-curve");
  const auto z0 = spec.components.evaluate(spec.components.base_point());
  for (int k = 0; k < spec.m; ++k) {
    chart.offset[2 * k] = z0[k].real();
    chart.offset[2 * k + 1] = z0[k].imag();
  }
  const int rank = substantiality_rank(chart);
  if (rank < N)
    throw DegeneracyError("holo_chart: curve spans only " + std::to_string(rank) + " of " +
                              std::to_string(N) + " real dimensions at the base point",
                          rank);
  return chart;
}

std::vector<double> tau_ratios(const SurfaceChart& chart, cplx z, int s_max) {
  std::vector<double> tau;
  double prev = 1.0;
  for (int s = 1; s <= s_max; ++s) {
    const double k = curvature_ellipse(chart, z, s).kappa;
    tau.push_back(k / prev);
    prev = k;
  }
  return tau;
}

ConnectionCheck holo_connection_check(const AdaptedFrame& f) {
  ConnectionCheck out;
  const int N = f.N();
  std::vector<double> kappa{1.0};
  for (int s = 1; 2 * s < N; ++s) {
    const auto kj = f.kappa_jet(s);
    if (!kj) break;
    kappa.push_back(kj->value());
  }
  for (int s = 1; 2 * s + 2 <= N && s < static_cast<int>(kappa.size()); ++s) {
    const double tau = kappa[s] / kappa[s - 1];
    const int a = 2 * s - 1, b = 2 * s;
    for (int k = 1; k <= 2; ++k) {
      const double w1 = k == 1 ? 1.0 : 0.0, w2 = k == 1 ? 0.0 : 1.0;
      out.con1 = std::max({out.con1, std::abs(f.omega(a, a + 2, k) - tau * w1),
                           std::abs(f.omega(b, b + 2, k) - tau * w1),
                           std::abs(f.omega(a, b + 2, k) - tau * w2),
                           std::abs(f.omega(b, a + 2, k) + tau * w2)});
    }
    const auto kj = f.kappa_jet(s);
    const FormJet logk = log(*kj).truncate<1>();
    const double dlog1 = f.along(1, logk), dlog2 = f.along(2, logk);
    // (*w)(e1) = -w(e2), (*w)(e2) = w(e1)
    const auto star = hodge({dlog1, dlog2});
    for (int k = 1; k <= 2; ++k) {
      const double want = (s + 1) * f.omega(1, 2, k) + star[k - 1];
      out.con2 = std::max(out.con2, std::abs(f.omega(2 * s + 1, 2 * s + 2, k) - want));
    }
  }
  return out;
}

ConnectionCheck holo_connection_check(const SurfaceChart& chart, cplx z) {
  return holo_connection_check(adapted_frame(chart, z));
}

ShapeOperators holo_shape_operators(const AdaptedFrame& f, const std::vector<double>& t) {
  if (f.N() < 8) throw ShapeError("holo_shape_operators: needs ambient dimension at least 8");
  if (static_cast<int>(t.size()) != f.N() - 4) throw ShapeError("holo_shape_operators: wrong ruling length");
  const auto k1 = f.kappa_jet(1), k2 = f.kappa_jet(2), k3 = f.kappa_jet(3);
  if (!k1 || !k2 || !k3) throw DegeneracyError("holo_shape_operators: third normal plane unavailable", 6);
  const double tau1 = k1->value();
  const FormJet tau2j = (*k2 / *k1).truncate<1>();
  const double tau2 = tau2j.value(), tau3 = k3->value() / k2->value();
  const double e1t = f.along(1, tau2j), e2t = f.along(2, tau2j);
  const double t1 = t[0], t2 = t[1], t3 = t[2], t4 = t[3];
  const double q = 1.0 + (t1 * t1 + t2 * t2) * tau2 * tau2;
  const double h1 = -(t1 * e1t - t2 * e2t + t3 * tau2 * tau3) / q;
  const double h2 = -(t1 * e2t + t2 * e1t + t4 * tau2 * tau3) / q;
  const double r = -tau2 / std::sqrt(q);
  ShapeOperators S = assemble_shape_operators(f.N() - 2, tau1, h1, h2, r, 0.0, 0.0, r);
  S.Omega = std::sqrt(q);
  return S;
}

ShapeOperators holo_shape_operators(const SurfaceChart& chart, const RuledPoint& rp) {
  return holo_shape_operators(adapted_frame(chart, rp.z), rp.t);
}

std::vector<double> fiber_rotation(const std::vector<double>& t, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  std::vector<double> out = t;
  for (std::size_t j = 0; j + 1 < t.size(); j += 2) {
    out[j] = c * t[j] - s * t[j + 1];
    out[j + 1] = s * t[j] + c * t[j + 1];
  }
  return out;
}

Alignment rigid_align(const Eigen::MatrixXd& fixed, const Eigen::MatrixXd& moving) {
  if (fixed.rows() != moving.rows() || fixed.cols() != moving.cols())
    throw AlignmentError("rigid_align: point clouds differ in shape");
  const Eigen::Index K = fixed.rows(), d = fixed.cols();
  if (K < 12) throw AlignmentError("rigid_align: need at least 12 points");
  const Eigen::RowVectorXd ca = fixed.colwise().mean(), cb = moving.colwise().mean();
  const Eigen::MatrixXd A = fixed.rowwise() - ca, B = moving.rowwise() - cb;
  Eigen::JacobiSVD<Eigen::MatrixXd> spread(B);
  const auto& sv = spread.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-9 * sv(0)) ++rank;
  if (rank < d - 1) throw AlignmentError("rigid_align: cloud is rank deficient; rotation not determined");

  const Eigen::MatrixXd H = B.transpose() * A;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd U = svd.matrixU(), V = svd.matrixV();
  Eigen::VectorXd diag = Eigen::VectorXd::Ones(d);
  if ((V * U.transpose()).determinant() < 0) diag(d - 1) = -1.0;
  Alignment out;
  out.rotation = V * diag.asDiagonal() * U.transpose();
  const double orth = (out.rotation.transpose() * out.rotation - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (orth > 1e-10) throw AlignmentError("rigid_align: recovered rotation is not orthogonal");
  out.translation = ca.transpose() - out.rotation * cb.transpose();
  const Eigen::MatrixXd moved = (moving * out.rotation.transpose()).rowwise() + out.translation.transpose();
  out.rms = std::sqrt((moved - fixed).rowwise().squaredNorm().mean());
  for (Eigen::Index i = 0; i < K; ++i)
    for (Eigen::Index j = i + 1; j < K; ++j)
      out.diameter = std::max(out.diameter, (fixed.row(i) - fixed.row(j)).norm());
  return out;
}

double equivariance_residual(const SurfaceChart& chart, const std::vector<RuledPoint>& cloud, double theta) {
  if (cloud.size() < 12) throw AlignmentError("equivariance_residual: need at least 12 ruled points");
  const DeformedChart d = associated_surface(chart, theta);
  const Eigen::Index K = static_cast<Eigen::Index>(cloud.size());
  Eigen::MatrixXd A(K, chart.N), B(K, chart.N);
  for (Eigen::Index i = 0; i < K; ++i) {
    const RuledPoint& q = cloud[static_cast<std::size_t>(i)];
    const DeformedPoint dp = deformed_immersion(chart, d, q);
    const AmbientVec fb = eval_F(chart, RuledPoint{q.z, fiber_rotation(q.t, -theta)});
    for (int c = 0; c < chart.N; ++c) {
      A(i, c) = dp.F[c];
      B(i, c) = fb[c];
    }
  }
  return rigid_align(A, B).normalized();
}

double nonkaehler_witness(const SurfaceChart& chart, const std::vector<RuledPoint>& samples) {
  double w = 0.0;
  for (const auto& q : samples) {
    const ShapeOperators S = holo_shape_operators(chart, q);
    w = std::max(w, std::abs(S.h1) + std::abs(S.h2));
  }
  return w;
}

}  // namespace isodeform
