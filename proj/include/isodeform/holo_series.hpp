#pragma once

#include <complex>
#include <vector>

namespace isodeform {

using cplx = std::complex<double>;

inline constexpr int kDefaultOrder = 32;

/// Vector-valued truncated power series in (z - z0) with complex coefficients.
///
/// Component k is sum_{j=0..order} coeff(k, j) (z - z0)^j. Products drop every
/// term above `order`, so all arithmetic is exact for polynomial data whose
/// degree stays within the truncation.
class HoloSeries {
 public:
  HoloSeries() = default;
  HoloSeries(int ncomp, int order, cplx base = {});

  /// Each entry of `polys` lists the coefficients c0, c1, ... of one component.
  static HoloSeries from_polynomials(const std::vector<std::vector<cplx>>& polys, int order,
                                     cplx base = {});
  static HoloSeries constant(const std::vector<cplx>& values, int order, cplx base = {});
  /// The identity series z (one component).
  static HoloSeries variable(int order, cplx base = {});

  int ncomp() const noexcept { return ncomp_; }
  int order() const noexcept { return order_; }
  cplx base_point() const noexcept { return base_; }

  cplx coeff(int comp, int k) const { return coeffs_[index(comp, k)]; }
  cplx& coeff(int comp, int k) { return coeffs_[index(comp, k)]; }

  HoloSeries component(int comp) const;
  HoloSeries components(int first, int count) const;

  /// d-th complex derivative of every component at z.
  std::vector<cplx> evaluate(cplx z, int deriv = 0) const;
  /// Derivatives 0..max_deriv at z; result[d][comp].
  std::vector<std::vector<cplx>> evaluate_all(cplx z, int max_deriv) const;

  /// Termwise derivative; the top coefficient becomes zero.
  HoloSeries derivative() const;

  /// Largest coefficient modulus over all components.
  double max_abs() const;
  /// Index of the highest nonzero coefficient over all components, -1 for zero.
  int degree() const;

  HoloSeries& operator+=(const HoloSeries& rhs);
  HoloSeries& operator-=(const HoloSeries& rhs);
  HoloSeries& operator*=(cplx s);

  friend HoloSeries operator+(HoloSeries a, const HoloSeries& b) { return a += b; }
  friend HoloSeries operator-(HoloSeries a, const HoloSeries& b) { return a -= b; }
  friend HoloSeries operator*(HoloSeries a, cplx s) { return a *= s; }
  friend HoloSeries operator*(cplx s, HoloSeries a) { return a *= s; }

 private:
  std::size_t index(int comp, int k) const;

  int ncomp_ = 0;
  int order_ = 0;
  cplx base_{};
  std::vector<cplx> coeffs_;  // component-major
};

/// Truncated product. One side may be scalar (one component) and broadcasts.
HoloSeries multiply(const HoloSeries& a, const HoloSeries& b);

/// Complex-bilinear inner product sum_k a_k b_k, no conjugation.
HoloSeries sym_inner(const HoloSeries& a, const HoloSeries& b);

/// Termwise primitive P with P(z0) = c in every component.
HoloSeries antiderivative(const HoloSeries& a, cplx c = {});

/// Stack the components of `parts` in order.
HoloSeries concat(const std::vector<HoloSeries>& parts);

/// Coefficientwise majorant of sym_inner: sum_k |a_k| * |a_k| with moduli of
/// coefficients multiplied. Bounds every coefficient of sym_inner(a, a).
std::vector<double> sym_square_majorant(const HoloSeries& a);

}  // namespace isodeform
