#pragma once

#include <array>
#include <optional>
#include <vector>

#include "isodeform/jet.hpp"
#include "isodeform/ortho.hpp"
#include "isodeform/weierstrass.hpp"

namespace isodeform {

struct FrameOptions {
  double eps_rank = kDefaultRankEps;
  // Below this circle defect the coordinate direction d_u is kept as e1; above it
  // e1 is rotated onto the major axis of the first curvature ellipse.
  double isotropy_tol = 1e-6;
};

/// Records how each frame vector was produced so that frames at nearby points
/// can be built the same way (finite-difference oracles rely on this).
struct FramePlan {
  enum class Source { osculating, completion };
  struct Slot {
    Source source = Source::osculating;
    int candidate = -1;   // osculating: index into d_u g, d_v g, d_uu g, d_uv g, ...
    int basis_axis = -1;  // completion: ambient axis that was projected
    double sign = 1.0;
  };
  std::vector<Slot> slots;
  bool tangent_rotated = false;
};

/// alpha^{s+1}(e1, ..., e1) and alpha^{s+1}(e2, e1, ..., e1) for the coordinate frame
/// e1 = g_u / rho, e2 = g_v / rho.
struct HigherForm {
  int s = 1;
  std::vector<double> e1_power;
  std::vector<double> e2_mixed;
};

HigherForm higher_form(const SurfaceChart& chart, cplx z, int s, const FrameOptions& opts = {});

struct CurvatureEllipse {
  int order = 1;
  double kappa = 0.0;  // major semi-axis
  double mu = 0.0;     // minor semi-axis
  double circle_defect = 0.0;
  double lambda() const { return mu / kappa; }
};

CurvatureEllipse curvature_ellipse(const SurfaceChart& chart, cplx z, int s,
                                   const FrameOptions& opts = {});

/// Orthonormal frame values only (no derivatives). Used by the oracles.
struct ValueFrame {
  cplx z;
  std::vector<std::vector<double>> e;  // e[0] = e1, ...
  double rho = 0.0;
  FramePlan plan;
  std::vector<double> ev(int i) const { return e.at(static_cast<std::size_t>(i - 1)); }
};

ValueFrame frame_values(const SurfaceChart& chart, cplx z, const FramePlan* reference = nullptr,
                        const FrameOptions& opts = {});

using FrameJet = Jet2<2>;
using FormJet = Jet2<1>;

/// Adapted frame {e1, ..., eN} carried as second-order jets in (u, v), with the
/// connection forms omega_ij(e_k) = <D_{e_k} e_i, e_j> as first-order jets.
/// All indices in the accessors are 1-based.
class AdaptedFrame {
 public:
  cplx z() const { return z_; }
  int N() const { return N_; }
  /// Number of normal planes above N1 counted like m = [(n - 1) / 2] plus the odd tail.
  int normal_blocks() const;

  std::vector<double> ev(int i) const { return values_of(e_.at(static_cast<std::size_t>(i - 1))); }
  const Vec<FrameJet>& e_jet(int i) const { return e_.at(static_cast<std::size_t>(i - 1)); }

  double rho() const { return rho_.value(); }
  const FrameJet& rho_jet() const { return rho_; }

  double omega(int i, int j, int k) const { return omega_jet(i, j, k).value(); }
  const FormJet& omega_jet(int i, int j, int k) const;
  /// e_l(f) for a first-order jet f.
  double along(int l, const FormJet& f) const;
  /// Tangent coordinates: e_k = T(k, 0) d_u + T(k, 1) d_v.
  const FrameJet& tangent_coord(int k, int c) const { return T_[k - 1][c]; }

  /// Radius kappa_s of the s-th curvature ellipse along the frame direction
  /// (|alpha^{s+1}(e1, ..., e1)|), when that slot came from the osculating flag.
  std::optional<FrameJet> kappa_jet(int s) const;
  double kappa() const { return kappa_; }
  double mu() const { return mu_; }
  double lambda() const { return mu_ / kappa_; }
  const FramePlan& plan() const { return plan_; }

 private:
  friend AdaptedFrame adapted_frame(const SurfaceChart&, cplx, const FramePlan*, const FrameOptions&);

  cplx z_{};
  int N_ = 0;
  std::vector<Vec<FrameJet>> e_;
  FrameJet rho_;
  std::array<std::array<FrameJet, 2>, 2> T_{};
  std::vector<FormJet> omega_;  // [(i * N + j) * 2 + k], 0-based
  std::vector<std::optional<FrameJet>> kappas_;
  double kappa_ = 0.0;
  double mu_ = 0.0;
  FramePlan plan_;
};

AdaptedFrame adapted_frame(const SurfaceChart& chart, cplx z, const FramePlan* reference = nullptr,
                           const FrameOptions& opts = {});

/// Coefficients of the dual fields of omega_35, omega_36, omega_45, omega_46 on {e1, e2}.
struct DualFields {
  double a1 = 0, a2 = 0;  // V
  double b1 = 0, b2 = 0;  // W
  double c1 = 0, c2 = 0;  // Y
  double d1 = 0, d2 = 0;  // Z
  double lambda = 1.0;

  /// max |lambda c1 - a2|, |lambda c2 + a1|, |lambda d1 - b2|, |lambda d2 + b1|
  double conn_residual() const;
};

DualFields dual_fields(const AdaptedFrame& frame);

/// Hodge star on 1-forms of the surface: (*w)(e) = -w(Je) with Je1 = e2, Je2 = -e1.
/// Input and output are the values (w(e1), w(e2)).
std::array<double, 2> hodge(const std::array<double, 2>& w);

}  // namespace isodeform
