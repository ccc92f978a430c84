#include "isodeform/surfgeo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "isodeform/errors.hpp"

namespace isodeform {

namespace {

constexpr cplx kI{0.0, 1.0};

// Real partial derivatives d_u^a d_v^b g at one point, from the complex
// derivatives of the primitive.
class DerivTable {
 public:
  DerivTable(const SurfaceChart& chart, cplx z, int max_order)
      : N_(chart.N), G_(primitive_derivatives(chart, z, max_order)) {}

  int N() const { return N_; }
  int max_order() const { return static_cast<int>(G_.size()) - 1; }

  double partial(int a, int b, int comp) const {
    cplx ib = 1.0;
    for (int k = 0; k < b % 4; ++k) ib *= kI;
    return (ib * G_.at(static_cast<std::size_t>(a + b))[comp]).real();
  }

 private:
  int N_;
  std::vector<std::vector<cplx>> G_;
};

template <class S>
struct CandidateMaker;

template <>
struct CandidateMaker<double> {
  static constexpr int kExtraOrder = 0;
  static Vec<double> make(const DerivTable& D, int a, int b) {
    Vec<double> v(D.N());
    for (int c = 0; c < D.N(); ++c) v[c] = D.partial(a, b, c);
    return v;
  }
};

template <int P>
struct CandidateMaker<Jet2<P>> {
  static constexpr int kExtraOrder = P;
  static Vec<Jet2<P>> make(const DerivTable& D, int a, int b) {
    Vec<Jet2<P>> v(D.N());
    for (int c = 0; c < D.N(); ++c)
      for (int d = 0; d <= P; ++d)
        for (int j = 0; j <= d; ++j) {
          const int i = d - j;
          double fi = 1.0, fj = 1.0;
          for (int k = 2; k <= i; ++k) fi *= k;
          for (int k = 2; k <= j; ++k) fj *= k;
          v[c].coeff(i, j) = D.partial(a + i, b + j, c) / (fi * fj);
        }
    return v;
  }
};

// Candidate k of the osculating flag: d_u g, d_v g, d_uu g, d_uv g, d_uuu g, d_uuv g, ...
std::pair<int, int> candidate_orders(int k) {
  const int order = k / 2 + 1;
  const int b = k % 2;
  return {order - b, b};
}

int max_candidate_order(int N) { return N / 2 + 1; }

template <class S>
struct FrameCore {
  std::vector<Vec<S>> e;
  S rho{};
  std::vector<std::optional<S>> norms;  // residual norm per slot, osculating slots only
  S kappa_norm{};                       // |alpha(e1, e1)| rho^2
  S mu_norm{};                          // |alpha(e1, e2)| rho^2
  FramePlan plan;
};

template <class S>
FrameCore<S> build_frame(const DerivTable& D, const FramePlan* ref, const FrameOptions& opts) {
  using Maker = CandidateMaker<S>;
  const int N = D.N();
  auto cand = [&](int k) {
    const auto [a, b] = candidate_orders(k);
    return Maker::make(D, a, b);
  };

  FrameCore<S> out;
  out.plan.slots.resize(N);
  out.norms.resize(N);
  FlagBuilder<S> flag;

  // Tangent plane.
  for (int k = 0; k < 2; ++k) {
    const Vec<S> c = cand(k);
    auto n = flag.push(c, opts.eps_rank, value_norm(c));
    if (!n) throw DegeneracyError("adapted_frame: chart is not immersed at this point", k);
    out.plan.slots[k] = {FramePlan::Source::osculating, k, -1, 1.0};
    out.norms[k] = *n;
  }
  out.rho = *out.norms[0];

  // First normal plane, with the tangent frame turned onto the ellipse axes when
  // the curvature ellipse is not a circle.
  const Vec<S> c2 = cand(2), c3 = cand(3);
  Vec<S> A = flag.residual(c2);
  Vec<S> B = flag.residual(c3);
  bool rotate = false;
  if (ref) {
    rotate = ref->tangent_rotated;
  } else {
    const auto Av = values_of(A), Bv = values_of(B);
    double aa = 0, bb = 0, ab = 0;
    for (int i = 0; i < N; ++i) {
      aa += Av[i] * Av[i];
      bb += Bv[i] * Bv[i];
      ab += Av[i] * Bv[i];
    }
    const double tr = 0.5 * (aa + bb);
    const double disc = std::sqrt(0.25 * (aa - bb) * (aa - bb) + ab * ab);
    const double k2 = tr + disc, m2 = std::max(tr - disc, 0.0);
    if (k2 > 0.0) {
      const double defect = (std::sqrt(k2) - std::sqrt(m2)) / std::sqrt(k2);
      rotate = defect > opts.isotropy_tol;
    }
  }
  if (rotate) {
    using std::atan2;
    using std::cos;
    using std::sin;
    const S aa = dot(A, A), bb = dot(B, B), ab = dot(A, B);
    const S psi = atan2(S(2.0) * ab, aa - bb) * S(0.25);
    const S cp = cos(psi), sp = sin(psi);
    const S c2p = cos(S(2.0) * psi), s2p = sin(S(2.0) * psi);
    const auto& t = flag.basis();
    Vec<S> e1 = scaled(t[0], cp), e2 = scaled(t[1], cp);
    axpy(sp, t[1], e1);
    axpy(S(-1.0) * sp, t[0], e2);
    Vec<S> A2 = scaled(A, c2p), B2 = scaled(B, c2p);
    axpy(s2p, B, A2);
    axpy(S(-1.0) * s2p, A, B2);
    FlagBuilder<S> turned;
    turned.push_unit(std::move(e1));
    turned.push_unit(std::move(e2));
    flag = std::move(turned);
    A = std::move(A2);
    B = std::move(B2);
    out.plan.tangent_rotated = true;
  }
  {
    auto nk = flag.push(A, opts.eps_rank, value_norm(c2));
    if (!nk) throw DegeneracyError("adapted_frame: first normal space is degenerate", 2);
    auto nm = flag.push(B, opts.eps_rank, value_norm(c3));
    if (!nm) throw DegeneracyError("adapted_frame: first normal space is degenerate", 3);
    out.plan.slots[2] = {FramePlan::Source::osculating, 2, -1, 1.0};
    out.plan.slots[3] = {FramePlan::Source::osculating, 3, -1, 1.0};
    out.norms[2] = *nk;
    out.norms[3] = *nm;
    out.kappa_norm = *nk;
    out.mu_norm = *nm;
  }

  // Higher normal planes; the last block may be completed from the ambient axes
  // when the osculating candidates degenerate there.
  const int final_start = (N % 2 == 0) ? N - 2 : N - 1;
  for (int slot = 4, s = 2; slot < N; ++s) {
    const int block_end = std::min(slot + 2, N);
    std::vector<int> pool{2 * s, 2 * s + 1};
    for (; slot < block_end; ++slot) {
      const bool is_final = slot >= final_start;
      if (ref) {
        const auto& rs = ref->slots.at(static_cast<std::size_t>(slot));
        if (rs.source == FramePlan::Source::osculating) {
          auto n = flag.push(cand(rs.candidate), 0.0, 1.0);
          if (!n) throw DegeneracyError("adapted_frame: reference plan not reproducible", slot);
          out.norms[slot] = *n;
        } else {
          Vec<S> axis(N, S(0.0));
          axis[rs.basis_axis] = S(1.0);
          auto n = flag.push(axis, 0.0, 1.0);
          if (!n) throw DegeneracyError("adapted_frame: reference plan not reproducible", slot);
          if (rs.sign < 0) flag.flip_last();
        }
        out.plan.slots[slot] = rs;
        continue;
      }
      bool done = false;
      for (auto it = pool.begin(); it != pool.end(); ++it) {
        const Vec<S> c = cand(*it);
        auto n = flag.push(c, opts.eps_rank, value_norm(c));
        if (n) {
          out.plan.slots[slot] = {FramePlan::Source::osculating, *it, -1, 1.0};
          out.norms[slot] = *n;
          pool.erase(it);
          done = true;
          break;
        }
        if (!is_final) {
          throw DegeneracyError("adapted_frame: normal space N_" + std::to_string(s) +
                                    " is degenerate at this point",
                                slot);
        }
      }
      if (done) continue;
      // Completion: project the ambient axis with the largest residual.
      int best = -1;
      double best_norm = -1.0;
      for (int ax = 0; ax < N; ++ax) {
        Vec<S> axis(N, S(0.0));
        axis[ax] = S(1.0);
        const double r = flag.residual_value_norm(axis);
        if (r > best_norm) {
          best_norm = r;
          best = ax;
        }
      }
      Vec<S> axis(N, S(0.0));
      axis[best] = S(1.0);
      flag.push(axis, 0.0, 1.0);
      double sign = 1.0;
      if (slot == N - 1) {
        Eigen::MatrixXd M(N, N);
        for (int i = 0; i < N; ++i)
          for (int c = 0; c < N; ++c) M(c, i) = value_of(flag.basis()[i][c]);
        if (M.determinant() < 0) {
          flag.flip_last();
          sign = -1.0;
        }
      }
      out.plan.slots[slot] = {FramePlan::Source::completion, -1, best, sign};
    }
  }
  out.e = flag.basis();
  return out;
}

double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

HigherForm higher_form(const SurfaceChart& chart, cplx z, int s, const FrameOptions& opts) {
  if (s < 1) throw DomainError("higher_form: order s must be at least 1");
  if (2 * s + 1 > chart.N)
    throw DegeneracyError("higher_form: osculating space of order " + std::to_string(s) +
                              " already fills the ambient space",
                          2 * s);
  const DerivTable D(chart, z, s + 1);
  FlagBuilder<double> flag;
  for (int k = 0; k < 2 * s; ++k) {
    const auto [a, b] = candidate_orders(k);
    const auto c = CandidateMaker<double>::make(D, a, b);
    if (!flag.push(c, opts.eps_rank, vec_norm(c)))
      throw DegeneracyError("higher_form: osculating space of order " + std::to_string(s) +
                                " is degenerate",
                            k);
  }
  double rho = vec_norm(CandidateMaker<double>::make(D, 1, 0));
  const double scale = std::pow(rho, s + 1);
  HigherForm out;
  out.s = s;
  out.e1_power = flag.residual(CandidateMaker<double>::make(D, s + 1, 0));
  out.e2_mixed = flag.residual(CandidateMaker<double>::make(D, s, 1));
  for (auto& x : out.e1_power) x /= scale;
  for (auto& x : out.e2_mixed) x /= scale;
  return out;
}

CurvatureEllipse curvature_ellipse(const SurfaceChart& chart, cplx z, int s, const FrameOptions& opts) {
  const HigherForm f = higher_form(chart, z, s, opts);
  // The ellipse is the image of the unit circle under psi -> cos((s+1)psi) A + sin((s+1)psi) B.
  double aa = 0, bb = 0, ab = 0;
  for (std::size_t i = 0; i < f.e1_power.size(); ++i) {
    aa += f.e1_power[i] * f.e1_power[i];
    bb += f.e2_mixed[i] * f.e2_mixed[i];
    ab += f.e1_power[i] * f.e2_mixed[i];
  }
  const double tr = 0.5 * (aa + bb);
  const double disc = std::sqrt(0.25 * (aa - bb) * (aa - bb) + ab * ab);
  CurvatureEllipse e;
  e.order = s;
  e.kappa = std::sqrt(tr + disc);
  e.mu = std::sqrt(std::max(tr - disc, 0.0));
  const DerivTable D(chart, z, s + 1);
  const double rho = vec_norm(CandidateMaker<double>::make(D, 1, 0));
  if (!(e.kappa >= opts.eps_rank * vec_norm(CandidateMaker<double>::make(D, s + 1, 0)) /
                       std::pow(rho, s + 1)) ||
      e.kappa == 0.0)
    throw DegeneracyError("curvature_ellipse: ellipse of order " + std::to_string(s) +
                              " collapses to a point",
                          2 * s);
  e.circle_defect = (e.kappa - e.mu) / e.kappa;
  return e;
}

ValueFrame frame_values(const SurfaceChart& chart, cplx z, const FramePlan* reference,
                        const FrameOptions& opts) {
  const DerivTable D(chart, z, max_candidate_order(chart.N));
  auto core = build_frame<double>(D, reference, opts);
  ValueFrame out;
  out.z = z;
  out.e = std::move(core.e);
  out.rho = core.rho;
  out.plan = std::move(core.plan);
  return out;
}

int AdaptedFrame::normal_blocks() const { return (N_ - 2 + 1) / 2 - 1; }

const FormJet& AdaptedFrame::omega_jet(int i, int j, int k) const {
  const auto idx = (static_cast<std::size_t>(i - 1) * N_ + (j - 1)) * 2 + (k - 1);
  return omega_.at(idx);
}

double AdaptedFrame::along(int l, const FormJet& f) const {
  return T_[l - 1][0].value() * f.d_u() + T_[l - 1][1].value() * f.d_v();
}

std::optional<FrameJet> AdaptedFrame::kappa_jet(int s) const {
  if (s < 1 || static_cast<std::size_t>(s) > kappas_.size()) return std::nullopt;
  return kappas_[s - 1];
}

AdaptedFrame adapted_frame(const SurfaceChart& chart, cplx z, const FramePlan* reference,
                           const FrameOptions& opts) {
  const DerivTable D(chart, z, max_candidate_order(chart.N) + FrameJet::kOrder);
  auto core = build_frame<FrameJet>(D, reference, opts);
  const int N = chart.N;

  AdaptedFrame f;
  f.z_ = z;
  f.N_ = N;
  f.e_ = std::move(core.e);
  f.rho_ = core.rho;
  f.plan_ = core.plan;

  const auto gu = CandidateMaker<FrameJet>::make(D, 1, 0);
  const auto gv = CandidateMaker<FrameJet>::make(D, 0, 1);
  const FrameJet E = dot(gu, gu), F = dot(gu, gv), G = dot(gv, gv);
  const FrameJet inv_det = FrameJet(1.0) / (E * G - F * F);
  for (int k = 0; k < 2; ++k) {
    const FrameJet pu = dot(f.e_[k], gu), pv = dot(f.e_[k], gv);
    f.T_[k][0] = (G * pu - F * pv) * inv_det;
    f.T_[k][1] = (E * pv - F * pu) * inv_det;
  }

  std::vector<Vec<FormJet>> e1(N), eu(N), evv(N);
  for (int i = 0; i < N; ++i) {
    e1[i] = truncate_all<1>(f.e_[i]);
    eu[i] = du_all(f.e_[i]);
    evv[i] = dv_all(f.e_[i]);
  }
  f.omega_.assign(static_cast<std::size_t>(N) * N * 2, FormJet{});
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const FormJet cu = dot(eu[i], e1[j]);
      const FormJet cv = dot(evv[i], e1[j]);
      for (int k = 0; k < 2; ++k) {
        f.omega_[(static_cast<std::size_t>(i) * N + j) * 2 + k] =
            f.T_[k][0].truncate<1>() * cu + f.T_[k][1].truncate<1>() * cv;
      }
    }

  // kappa_s = |alpha^{s+1}(e1, ..., e1)| = residual norm / rho^{s+1}.
  FrameJet rho_pow = core.rho * core.rho;
  for (int s = 1; 2 * s < N; ++s) {
    const auto& slot = f.plan_.slots[2 * s];
    if (s == 1) {
      f.kappas_.push_back(core.kappa_norm / rho_pow);
    } else if (slot.source == FramePlan::Source::osculating && slot.candidate == 2 * s &&
               core.norms[2 * s]) {
      f.kappas_.push_back(*core.norms[2 * s] / rho_pow);
    } else {
      f.kappas_.push_back(std::nullopt);
    }
    rho_pow = rho_pow * core.rho;
  }
  const double r2 = core.rho.value() * core.rho.value();
  f.kappa_ = core.kappa_norm.value() / r2;
  f.mu_ = core.mu_norm.value() / r2;
  return f;
}

double DualFields::conn_residual() const {
  return std::max({std::abs(lambda * c1 - a2), std::abs(lambda * c2 + a1),
                   std::abs(lambda * d1 - b2), std::abs(lambda * d2 + b1)});
}

DualFields dual_fields(const AdaptedFrame& frame) {
  if (frame.N() < 6) throw ShapeError("dual_fields: needs ambient dimension at least 6");
  DualFields d;
  d.a1 = frame.omega(3, 5, 1);
  d.a2 = frame.omega(3, 5, 2);
  d.b1 = frame.omega(3, 6, 1);
  d.b2 = frame.omega(3, 6, 2);
  d.c1 = frame.omega(4, 5, 1);
  d.c2 = frame.omega(4, 5, 2);
  d.d1 = frame.omega(4, 6, 1);
  d.d2 = frame.omega(4, 6, 2);
  d.lambda = frame.lambda();
  return d;
}

std::array<double, 2> hodge(const std::array<double, 2>& w) { return {-w[1], w[0]}; }

}  // namespace isodeform
