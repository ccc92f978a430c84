#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <span>
#include <vector>

namespace isodeform {

/// Truncated Taylor jet of a real function of two variables (u, v).
///
/// Stores the Taylor coefficients f_{ab} = (d_u^a d_v^b f) / (a! b!) for a + b <= Order,
/// graded so that index(a, b) = d (d + 1) / 2 + b with d = a + b. Arithmetic is the
/// truncated polynomial algebra, which makes the chain, product and quotient rules
/// exact at the stored order.
template <int Order>
class Jet2 {
  static_assert(Order >= 0 && Order <= 6);

 public:
  static constexpr int kOrder = Order;
  static constexpr int kSize = (Order + 1) * (Order + 2) / 2;

  static constexpr int index(int a, int b) {
    const int d = a + b;
    return d * (d + 1) / 2 + b;
  }

  constexpr Jet2() = default;
  constexpr Jet2(double value) { c_[0] = value; }  // NOLINT: implicit on purpose

  /// The coordinate function u around u0 (resp. v around v0).
  static Jet2 variable_u(double u0) {
    Jet2 j(u0);
    if constexpr (Order >= 1) j.c_[index(1, 0)] = 1.0;
    return j;
  }
  static Jet2 variable_v(double v0) {
    Jet2 j(v0);
    if constexpr (Order >= 1) j.c_[index(0, 1)] = 1.0;
    return j;
  }

  double value() const { return c_[0]; }
  double coeff(int a, int b) const { return c_[index(a, b)]; }
  double& coeff(int a, int b) { return c_[index(a, b)]; }

  /// The partial derivative d_u^a d_v^b at the base point.
  double partial(int a, int b) const { return c_[index(a, b)] * factorial(a) * factorial(b); }
  double d_u() const { return partial(1, 0); }
  double d_v() const { return partial(0, 1); }

  /// Jet of d_u f, one order lower.
  Jet2<(Order > 0 ? Order - 1 : 0)> du() const {
    static_assert(Order >= 1);
    Jet2<Order - 1> out;
    for (int d = 0; d < Order; ++d)
      for (int b = 0; b <= d; ++b) {
        const int a = d - b;
        out.coeff(a, b) = (a + 1) * coeff(a + 1, b);
      }
    return out;
  }
  Jet2<(Order > 0 ? Order - 1 : 0)> dv() const {
    static_assert(Order >= 1);
    Jet2<Order - 1> out;
    for (int d = 0; d < Order; ++d)
      for (int b = 0; b <= d; ++b) {
        const int a = d - b;
        out.coeff(a, b) = (b + 1) * coeff(a, b + 1);
      }
    return out;
  }

  template <int Lower>
  Jet2<Lower> truncate() const {
    static_assert(Lower <= Order);
    Jet2<Lower> out;
    for (int i = 0; i < Jet2<Lower>::kSize; ++i) out.data()[i] = c_[i];
    return out;
  }

  std::array<double, kSize>& data() { return c_; }
  const std::array<double, kSize>& data() const { return c_; }

  Jet2& operator+=(const Jet2& o) {
    for (int i = 0; i < kSize; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    for (int i = 0; i < kSize; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet2& operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Jet2& operator*=(const Jet2& o) { return *this = *this * o; }
  Jet2& operator/=(const Jet2& o) { return *this = *this * reciprocal(o); }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator-(Jet2 a) { return a *= -1.0; }
  friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
  friend Jet2 operator/(Jet2 a, double s) { return a *= 1.0 / s; }
  friend Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }
  friend Jet2 operator/(double a, const Jet2& b) { return reciprocal(b) * a; }

  friend Jet2 operator*(const Jet2& f, const Jet2& g) {
    Jet2 h;
    for (int d1 = 0; d1 <= Order; ++d1)
      for (int b1 = 0; b1 <= d1; ++b1) {
        const double x = f.coeff(d1 - b1, b1);
        if (x == 0.0) continue;
        for (int d2 = 0; d1 + d2 <= Order; ++d2)
          for (int b2 = 0; b2 <= d2; ++b2)
            h.coeff(d1 - b1 + d2 - b2, b1 + b2) += x * g.coeff(d2 - b2, b2);
      }
    return h;
  }

  friend Jet2 reciprocal(const Jet2& f) {
    const double f0 = f.value();
    assert(f0 != 0.0);
    Jet2 h(1.0 / f0);
    // h_m = -(1/f0) sum_{0 < k <= m} f_k h_{m-k}, in graded order.
    for (int d = 1; d <= Order; ++d)
      for (int b = 0; b <= d; ++b) {
        const int a = d - b;
        double acc = 0.0;
        for (int ka = 0; ka <= a; ++ka)
          for (int kb = 0; kb <= b; ++kb) {
            if (ka == 0 && kb == 0) continue;
            acc += f.coeff(ka, kb) * h.coeff(a - ka, b - kb);
          }
        h.coeff(a, b) = -acc / f0;
      }
    return h;
  }

  friend Jet2 sqrt(const Jet2& f) {
    const double f0 = f.value();
    assert(f0 > 0.0);
    Jet2 s(std::sqrt(f0));
    for (int d = 1; d <= Order; ++d)
      for (int b = 0; b <= d; ++b) {
        const int a = d - b;
        double acc = f.coeff(a, b);
        for (int ka = 0; ka <= a; ++ka)
          for (int kb = 0; kb <= b; ++kb) {
            if ((ka == 0 && kb == 0) || (ka == a && kb == b)) continue;
            acc -= s.coeff(ka, kb) * s.coeff(a - ka, b - kb);
          }
        s.coeff(a, b) = acc / (2.0 * s.value());
      }
    return s;
  }

  /// h(f) for a univariate h given its derivatives h(f0), h'(f0), ..., h^(Order)(f0).
  friend Jet2 compose(const Jet2& f, std::span<const double> derivs) {
    Jet2 delta = f;
    delta.c_[0] = 0.0;
    Jet2 out(derivs[0]);
    Jet2 power(1.0);
    double fact = 1.0;
    for (int k = 1; k <= Order; ++k) {
      power = power * delta;
      fact *= k;
      out += power * (derivs[k] / fact);
    }
    return out;
  }

  friend Jet2 sin(const Jet2& f) {
    std::array<double, Order + 1> d{};
    const double s = std::sin(f.value()), c = std::cos(f.value());
    for (int k = 0; k <= Order; ++k) d[k] = (k % 4 == 0) ? s : (k % 4 == 1) ? c : (k % 4 == 2) ? -s : -c;
    return compose(f, d);
  }
  friend Jet2 cos(const Jet2& f) {
    std::array<double, Order + 1> d{};
    const double s = std::sin(f.value()), c = std::cos(f.value());
    for (int k = 0; k <= Order; ++k) d[k] = (k % 4 == 0) ? c : (k % 4 == 1) ? -s : (k % 4 == 2) ? -c : s;
    return compose(f, d);
  }
  friend Jet2 log(const Jet2& f) {
    std::array<double, Order + 1> d{};
    d[0] = std::log(f.value());
    double p = 1.0 / f.value();
    for (int k = 1; k <= Order; ++k) {
      d[k] = p;
      p *= -static_cast<double>(k) / f.value();
    }
    return compose(f, d);
  }

  /// Angle of (x, y), continuous around the base point.
  friend Jet2 atan2(const Jet2& y, const Jet2& x) {
    const double x0 = x.value(), y0 = y.value();
    // tan(angle - angle0) = (x0 y - y0 x) / (x0 x + y0 y), which vanishes at the base point.
    const Jet2 q = (x0 * y - y0 * x) / (x0 * x + y0 * y);
    // atan^{(k)}(0) = 0, 1, 0, -2, 0, 24, 0
    constexpr std::array<double, 7> atan0{0.0, 1.0, 0.0, -2.0, 0.0, 24.0, 0.0};
    Jet2 out = compose(q, std::span<const double>(atan0.data(), Order + 1));
    out.c_[0] = std::atan2(y0, x0);
    return out;
  }

 private:
  static constexpr double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  }

  std::array<double, kSize> c_{};
};

inline double value_of(double x) { return x; }
template <int P>
double value_of(const Jet2<P>& j) {
  return j.value();
}

template <class S>
using Vec = std::vector<S>;

template <class S>
S dot(const Vec<S>& a, const Vec<S>& b) {
  assert(a.size() == b.size());
  S acc(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class S>
void axpy(const S& alpha, const Vec<S>& x, Vec<S>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

template <class S>
Vec<S> scaled(const Vec<S>& x, const S& s) {
  Vec<S> out(x);
  for (auto& v : out) v = v * s;
  return out;
}

/// Values at the base point of a vector of jets (identity for doubles).
template <class S>
std::vector<double> values_of(const Vec<S>& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = value_of(x[i]);
  return out;
}

template <int Lower, int P>
Vec<Jet2<Lower>> truncate_all(const Vec<Jet2<P>>& x) {
  Vec<Jet2<Lower>> out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(v.template truncate<Lower>());
  return out;
}

template <int P>
Vec<Jet2<P - 1>> du_all(const Vec<Jet2<P>>& x) {
  Vec<Jet2<P - 1>> out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(v.du());
  return out;
}

template <int P>
Vec<Jet2<P - 1>> dv_all(const Vec<Jet2<P>>& x) {
  Vec<Jet2<P - 1>> out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(v.dv());
  return out;
}

}  // namespace isodeform
