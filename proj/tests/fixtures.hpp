#pragma once

#include "isodeform/holocurve.hpp"

namespace fixture {

using namespace isodeform;

inline SeedSpec seed_a_spec() {
  SeedSpec s;
  s.ambient_dim = 6;
  s.alpha0 = HoloSeries::from_polynomials({{1.0}, {0.0, 1.0}}, kDefaultOrder);
  return s;
}

inline SeedSpec seed_b_spec() {
  SeedSpec s;
  s.ambient_dim = 8;
  s.alpha0 = HoloSeries::from_polynomials({{1.0}, {0.0, 1.0}, {0.0, 0.0, 0.5}, {0.0, 0.0, 0.0, 1.0 / 6}}, kDefaultOrder);
  return s;
}

inline HoloCurveSpec holo_c_spec() {
  HoloCurveSpec h;
  h.m = 4;
  h.components = HoloSeries::from_polynomials(
      {{0.0, 1.0}, {0.0, 0.0, 0.5}, {0.0, 0.0, 0.0, 1.0 / 6}, {0.0, 0.0, 0.0, 0.0, 1.0 / 24}}, kDefaultOrder);
  return h;
}

inline const SurfaceChart& seed_a() {
  static const SurfaceChart c = build_surface(seed_a_spec());
  return c;
}

inline const SurfaceChart& seed_b() {
  static const SurfaceChart c = build_surface(seed_b_spec());
  return c;
}

inline const SurfaceChart& holo_c() {
  static const SurfaceChart c = holo_chart(holo_c_spec());
  return c;
}

/// Chart with phi' not null: minimal but not 1-isotropic.
inline const SurfaceChart& non_isotropic() {
  static const SurfaceChart c = chart_from_isotropic_data(
      HoloSeries::from_polynomials({{0.0, 1.0}, {0.0, 0.0, 0.5}, {0.0, 1.0}, {0.0}}, kDefaultOrder),
      HoloSeries::constant({1.0}, kDefaultOrder), 1.0, "contrast");
  return c;
}

inline const cplx kGeneric{0.1, 0.05};

}  // namespace fixture
