#include "isodeform/holo_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isodeform/errors.hpp"

namespace isodeform {

namespace {

void require_compatible(const HoloSeries& a, const HoloSeries& b, const char* op) {
  if (a.order() != b.order() || a.base_point() != b.base_point()) {
    throw ShapeError(std::string(op) + ": series differ in order or base point");
  }
}

}  // namespace

HoloSeries::HoloSeries(int ncomp, int order, cplx base)
    : ncomp_(ncomp), order_(order), base_(base) {
  if (ncomp < 0 || order < 0) throw ShapeError("HoloSeries: negative size");
  coeffs_.assign(static_cast<std::size_t>(ncomp) * (order + 1), cplx{});
}

std::size_t HoloSeries::index(int comp, int k) const {
  return static_cast<std::size_t>(comp) * (order_ + 1) + k;
}

HoloSeries HoloSeries::from_polynomials(const std::vector<std::vector<cplx>>& polys, int order,
                                        cplx base) {
  HoloSeries s(static_cast<int>(polys.size()), order, base);
  for (int c = 0; c < s.ncomp(); ++c) {
    const auto& p = polys[c];
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (static_cast<int>(k) > order) {
        if (p[k] != cplx{}) throw ShapeError("from_polynomials: degree exceeds truncation order");
        continue;
      }
      s.coeff(c, static_cast<int>(k)) = p[k];
    }
  }
  return s;
}

HoloSeries HoloSeries::constant(const std::vector<cplx>& values, int order, cplx base) {
  HoloSeries s(static_cast<int>(values.size()), order, base);
  for (int c = 0; c < s.ncomp(); ++c) s.coeff(c, 0) = values[c];
  return s;
}

HoloSeries HoloSeries::variable(int order, cplx base) {
  HoloSeries s(1, order, base);
  s.coeff(0, 0) = base;
  if (order >= 1) s.coeff(0, 1) = 1.0;
  return s;
}

HoloSeries HoloSeries::component(int comp) const { return components(comp, 1); }

HoloSeries HoloSeries::components(int first, int count) const {
  if (first < 0 || count < 0 || first + count > ncomp_) throw ShapeError("component out of range");
  HoloSeries s(count, order_, base_);
  for (int c = 0; c < count; ++c)
    for (int k = 0; k <= order_; ++k) s.coeff(c, k) = coeff(first + c, k);
  return s;
}

std::vector<cplx> HoloSeries::evaluate(cplx z, int deriv) const {
  std::vector<cplx> out(ncomp_);
  if (deriv > order_) return out;
  const cplx w = z - base_;
  for (int c = 0; c < ncomp_; ++c) {
    cplx acc{};
    for (int k = order_; k >= deriv; --k) {
      double falling = 1.0;
      for (int j = 0; j < deriv; ++j) falling *= static_cast<double>(k - j);
      acc = acc * w + falling * coeff(c, k);
    }
    out[c] = acc;
  }
  return out;
}

std::vector<std::vector<cplx>> HoloSeries::evaluate_all(cplx z, int max_deriv) const {
  std::vector<std::vector<cplx>> out;
  out.reserve(max_deriv + 1);
  for (int d = 0; d <= max_deriv; ++d) out.push_back(evaluate(z, d));
  return out;
}

HoloSeries HoloSeries::derivative() const {
  HoloSeries s(ncomp_, order_, base_);
  for (int c = 0; c < ncomp_; ++c)
    for (int k = 1; k <= order_; ++k) s.coeff(c, k - 1) = static_cast<double>(k) * coeff(c, k);
  return s;
}

double HoloSeries::max_abs() const {
  double m = 0.0;
  for (const auto& v : coeffs_) m = std::max(m, std::abs(v));
  return m;
}

int HoloSeries::degree() const {
  int d = -1;
  for (int c = 0; c < ncomp_; ++c)
    for (int k = order_; k > d; --k)
      if (coeff(c, k) != cplx{}) {
        d = k;
        break;
      }
  return d;
}

HoloSeries& HoloSeries::operator+=(const HoloSeries& rhs) {
  require_compatible(*this, rhs, "operator+");
  if (ncomp_ != rhs.ncomp_) throw ShapeError("operator+: component counts differ");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

HoloSeries& HoloSeries::operator-=(const HoloSeries& rhs) {
  require_compatible(*this, rhs, "operator-");
  if (ncomp_ != rhs.ncomp_) throw ShapeError("operator-: component counts differ");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

HoloSeries& HoloSeries::operator*=(cplx s) {
  for (auto& v : coeffs_) v *= s;
  return *this;
}

HoloSeries multiply(const HoloSeries& a, const HoloSeries& b) {
  require_compatible(a, b, "multiply");
  int n = a.ncomp();
  if (a.ncomp() != b.ncomp()) {
    if (a.ncomp() == 1) {
      n = b.ncomp();
    } else if (b.ncomp() != 1) {
      throw ShapeError("multiply: component counts differ and neither side is scalar");
    }
  }
  const int K = a.order();
  HoloSeries out(n, K, a.base_point());
  for (int c = 0; c < n; ++c) {
    const int ca = a.ncomp() == 1 ? 0 : c;
    const int cb = b.ncomp() == 1 ? 0 : c;
    for (int i = 0; i <= K; ++i) {
      const cplx ai = a.coeff(ca, i);
      if (ai == cplx{}) continue;
      for (int j = 0; i + j <= K; ++j) out.coeff(c, i + j) += ai * b.coeff(cb, j);
    }
  }
  return out;
}

HoloSeries sym_inner(const HoloSeries& a, const HoloSeries& b) {
  if (a.ncomp() != b.ncomp()) throw ShapeError("sym_inner: component counts differ");
  require_compatible(a, b, "sym_inner");
  const int K = a.order();
  HoloSeries out(1, K, a.base_point());
  for (int c = 0; c < a.ncomp(); ++c)
    for (int i = 0; i <= K; ++i) {
      const cplx ai = a.coeff(c, i);
      if (ai == cplx{}) continue;
      for (int j = 0; i + j <= K; ++j) out.coeff(0, i + j) += ai * b.coeff(c, j);
    }
  return out;
}

HoloSeries antiderivative(const HoloSeries& a, cplx c) {
  HoloSeries out(a.ncomp(), a.order(), a.base_point());
  for (int k = 0; k < a.ncomp(); ++k) {
    out.coeff(k, 0) = c;
    for (int j = 0; j < a.order(); ++j)
      out.coeff(k, j + 1) = a.coeff(k, j) / static_cast<double>(j + 1);
  }
  return out;
}

HoloSeries concat(const std::vector<HoloSeries>& parts) {
  if (parts.empty()) return {};
  int total = 0;
  for (const auto& p : parts) {
    require_compatible(parts.front(), p, "concat");
    total += p.ncomp();
  }
  HoloSeries out(total, parts.front().order(), parts.front().base_point());
  int row = 0;
  for (const auto& p : parts)
    for (int c = 0; c < p.ncomp(); ++c, ++row)
      for (int k = 0; k <= p.order(); ++k) out.coeff(row, k) = p.coeff(c, k);
  return out;
}

std::vector<double> sym_square_majorant(const HoloSeries& a) {
  const int K = a.order();
  std::vector<double> out(K + 1, 0.0);
  for (int c = 0; c < a.ncomp(); ++c)
    for (int i = 0; i <= K; ++i) {
      const double ai = std::abs(a.coeff(c, i));
      if (ai == 0.0) continue;
      for (int j = 0; i + j <= K; ++j) out[i + j] += ai * std::abs(a.coeff(c, j));
    }
  return out;
}

}  // namespace isodeform
