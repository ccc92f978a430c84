#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "isodeform/errors.hpp"
#include "isodeform/jet.hpp"

namespace isodeform {

inline constexpr double kDefaultRankEps = 1e-8;

/// Incremental Gram-Schmidt over doubles or jets. Each residual is taken with
/// two projection passes so that orthogonality holds to rounding.
template <class S>
class FlagBuilder {
 public:
  const std::vector<Vec<S>>& basis() const { return basis_; }
  std::size_t size() const { return basis_.size(); }

  Vec<S> residual(Vec<S> v) const {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis_) {
        const S c = dot(v, q);
        axpy(S(-c), q, v);
      }
    return v;
  }

  /// Norm of the residual at the base point, no side effects.
  double residual_value_norm(const Vec<S>& v) const {
    const auto r = values_of(residual(v));
    double s = 0.0;
    for (double x : r) s += x * x;
    return std::sqrt(s);
  }

  /// Appends the normalized residual of v unless its base-point norm is below
  /// eps * scale. Returns the residual norm (as S) on success.
  std::optional<S> push(const Vec<S>& v, double eps, double scale) {
    Vec<S> r = residual(v);
    const S n2 = dot(r, r);
    const double nv = std::sqrt(std::max(value_of(n2), 0.0));
    if (!(nv >= eps * scale) || nv == 0.0) return std::nullopt;
    using std::sqrt;
    const S n = sqrt(n2);
    const S inv = S(1.0) / n;
    basis_.push_back(scaled(r, inv));
    return n;
  }

  void push_unit(Vec<S> unit) { basis_.push_back(std::move(unit)); }

  void flip_last() {
    for (auto& x : basis_.back()) x = x * S(-1.0);
  }

 private:
  std::vector<Vec<S>> basis_;
};

template <class S>
double value_norm(const Vec<S>& v) {
  double s = 0.0;
  for (const auto& x : v) s += value_of(x) * value_of(x);
  return std::sqrt(s);
}

template <class S>
struct Orthonormalized {
  std::vector<Vec<S>> vectors;
  std::vector<S> norms;  // residual norm of each input before normalization
};

/// Gram-Schmidt of `vs` in order. Raises DegeneracyError naming the first input
/// whose residual falls below eps_rank times the largest input norm.
template <class S>
Orthonormalized<S> jet_orthonormalize(const std::vector<Vec<S>>& vs,
                                      double eps_rank = kDefaultRankEps) {
  double scale = 0.0;
  for (const auto& v : vs) scale = std::max(scale, value_norm(v));
  FlagBuilder<S> flag;
  Orthonormalized<S> out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto n = flag.push(vs[i], eps_rank, scale);
    if (!n) {
      throw DegeneracyError("jet_orthonormalize: vector " + std::to_string(i) +
                                " is numerically dependent on its predecessors",
                            static_cast<int>(i));
    }
    out.norms.push_back(*n);
  }
  out.vectors = flag.basis();
  return out;
}

}  // namespace isodeform
