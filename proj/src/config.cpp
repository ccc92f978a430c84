#include "isodeform/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "isodeform/errors.hpp"

namespace isodeform {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& origin, const std::string& ptr, const std::string& msg) {
  throw ConfigError(origin + ": field " + ptr + ": " + msg);
}

struct Reader {
  std::string origin;

  const json& need(const json& obj, const std::string& key, const std::string& ptr) const {
    if (!obj.is_object()) field_error(origin, ptr, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) field_error(origin, ptr + "/" + key, "missing");
    return *it;
  }

  double number(const json& v, const std::string& ptr) const {
    if (!v.is_number()) field_error(origin, ptr, "expected a number");
    return v.get<double>();
  }

  int integer(const json& v, const std::string& ptr) const {
    if (!v.is_number_integer()) field_error(origin, ptr, "expected an integer");
    return v.get<int>();
  }

  cplx complex(const json& v, const std::string& ptr) const {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      field_error(origin, ptr, "expected a complex number [re, im]");
    return {v[0].get<double>(), v[1].get<double>()};
  }

  HoloSeries series(const json& v, int order, cplx base, const std::string& ptr) const {
    if (!v.is_array() || v.empty()) field_error(origin, ptr, "expected a nonempty list of components");
    std::vector<std::vector<cplx>> polys;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const std::string p = ptr + "/" + std::to_string(k);
      if (!v[k].is_array()) field_error(origin, p, "expected a list of coefficients");
      if (static_cast<int>(v[k].size()) > order + 1)
        field_error(origin, p, "more coefficients than the truncation order allows");
      std::vector<cplx> c;
      for (std::size_t j = 0; j < v[k].size(); ++j) c.push_back(complex(v[k][j], p + "/" + std::to_string(j)));
      polys.push_back(std::move(c));
    }
    return HoloSeries::from_polynomials(polys, order, base);
  }

  template <class T>
  void optional(const json& obj, const std::string& key, T& out, const std::string& ptr) const {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if constexpr (std::is_same_v<T, int>)
      out = integer(*it, ptr + "/" + key);
    else if constexpr (std::is_same_v<T, unsigned long long>) {
      if (!it->is_number_unsigned()) field_error(origin, ptr + "/" + key, "expected a nonnegative integer");
      out = it->template get<unsigned long long>();
    } else
      out = number(*it, ptr + "/" + key);
  }
};

int line_of(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  const Reader rd{origin};
  if (!doc.is_object()) field_error(origin, "/", "top level must be an object");

  RunConfig cfg;
  cfg.source = doc;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) field_error(origin, "/name", "expected a string");
    cfg.name = it->get<std::string>();
  }

  const json& surf = rd.need(doc, "surface", "");
  const std::string sp = "/surface";
  rd.optional(surf, "order", cfg.order, sp);
  if (cfg.order < 8) field_error(origin, sp + "/order", "truncation order must be at least 8");
  if (auto it = surf.find("base_point"); it != surf.end()) cfg.base_point = rd.complex(*it, sp + "/base_point");
  rd.optional(surf, "radius", cfg.radius, sp);
  if (!(cfg.radius > 0)) field_error(origin, sp + "/radius", "must be positive");

  const json& kind = rd.need(surf, "kind", sp);
  const std::string k = kind.is_string() ? kind.get<std::string>() : "";
  if (k == "seed") {
    cfg.kind = SurfaceKind::seed;
    rd.optional(surf, "ambient_dim", cfg.seed.ambient_dim, sp);
    rd.optional(surf, "lift_repeats", cfg.seed.lift_repeats, sp);
    cfg.seed.alpha0 = rd.series(rd.need(surf, "alpha0", sp), cfg.order, cfg.base_point, sp + "/alpha0");
    if (auto it = surf.find("scales"); it != surf.end()) {
      if (!it->is_array()) field_error(origin, sp + "/scales", "expected a list of series");
      for (std::size_t j = 0; j < it->size(); ++j)
        cfg.seed.scales.push_back(
            rd.series((*it)[j], cfg.order, cfg.base_point, sp + "/scales/" + std::to_string(j)));
    }
    cfg.seed.base_point = cfg.base_point;
    cfg.seed.radius = cfg.radius;
  } else if (k == "iso") {
    cfg.kind = SurfaceKind::iso;
    cfg.phi = rd.series(rd.need(surf, "phi", sp), cfg.order, cfg.base_point, sp + "/phi");
  } else if (k == "holo") {
    cfg.kind = SurfaceKind::holo;
    cfg.holo.components = rd.series(rd.need(surf, "components", sp), cfg.order, cfg.base_point, sp + "/components");
    cfg.holo.m = cfg.holo.components.ncomp();
    cfg.holo.radius = cfg.radius;
  } else {
    field_error(origin, sp + "/kind", "expected one of seed, iso, holo");
  }

  if (auto it = doc.find("samples"); it != doc.end()) {
    const std::string p = "/samples";
    auto& s = cfg.samples;
    rd.optional(*it, "grid_radius", s.grid_radius, p);
    rd.optional(*it, "grid_count", s.grid_count, p);
    rd.optional(*it, "ricci_count", s.ricci_count, p);
    rd.optional(*it, "ruled_count", s.ruled_count, p);
    rd.optional(*it, "t_scale", s.t_scale, p);
    rd.optional(*it, "cloud_count", s.cloud_count, p);
    rd.optional(*it, "rng_seed", s.rng_seed, p);
    if (!(s.grid_radius > 0)) field_error(origin, p + "/grid_radius", "must be positive");
    if (s.grid_count < 2) field_error(origin, p + "/grid_count", "must be at least 2");
    if (s.ricci_count < 2) field_error(origin, p + "/ricci_count", "must be at least 2");
    if (s.ruled_count < 1) field_error(origin, p + "/ruled_count", "must be positive");
    if (s.cloud_count < 12) field_error(origin, p + "/cloud_count", "alignment needs at least 12 points");
    if (!(s.t_scale >= 0)) field_error(origin, p + "/t_scale", "must be nonnegative");
  }
  if (cfg.samples.grid_radius > 0.9 * cfg.radius)
    throw DomainError(origin + ": sample radius " + std::to_string(cfg.samples.grid_radius) +
                      " exceeds 0.9 of the chart radius " + std::to_string(cfg.radius));

  if (auto it = doc.find("theta_grid"); it != doc.end()) {
    if (!it->is_array()) field_error(origin, "/theta_grid", "expected a list of angles");
    for (std::size_t j = 0; j < it->size(); ++j) {
      const double th = rd.number((*it)[j], "/theta_grid/" + std::to_string(j));
      if (th < 0 || th >= std::numbers::pi) field_error(origin, "/theta_grid/" + std::to_string(j), "angle outside [0, pi)");
      cfg.theta_grid.push_back(th);
    }
  } else {
    cfg.theta_grid = default_theta_grid();
  }

  if (auto it = doc.find("tolerances"); it != doc.end()) {
    if (!it->is_object()) field_error(origin, "/tolerances", "expected an object");
    for (const auto& [key, v] : it->items()) {
      const double tol = rd.number(v, "/tolerances/" + key);
      if (!(tol > 0)) field_error(origin, "/tolerances/" + key, "tolerances must be positive");
      cfg.tolerances[key] = tol;
    }
  }

  if (auto it = doc.find("suites"); it != doc.end()) {
    if (!it->is_array()) field_error(origin, "/suites", "expected a list");
    cfg.suites.clear();
    for (std::size_t j = 0; j < it->size(); ++j) {
      const auto& v = (*it)[j];
      const std::string name = v.is_string() ? v.get<std::string>() : "";
      if (name != "surface" && name != "ruled" && name != "family" && name != "holo")
        field_error(origin, "/suites/" + std::to_string(j), "unknown suite");
      cfg.suites.push_back(name);
    }
  }

  if (auto it = doc.find("output"); it != doc.end()) {
    if (auto r = it->find("report"); r != it->end() && r->is_string()) cfg.report_path = r->get<std::string>();
    if (auto c = it->find("csv"); c != it->end() && c->is_string()) cfg.csv_path = c->get<std::string>();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

SurfaceChart build_chart(const RunConfig& cfg) {
  switch (cfg.kind) {
    case SurfaceKind::seed:
      return build_surface(cfg.seed);
    case SurfaceKind::iso: {
      const HoloSeries one = HoloSeries::constant({cplx{1.0}}, cfg.order, cfg.base_point);
      return chart_from_isotropic_data(cfg.phi, one, cfg.radius, cfg.name);
    }
    case SurfaceKind::holo:
      return holo_chart(cfg.holo);
  }
  throw ConfigError("build_chart: unknown surface kind");
}

std::vector<cplx> sample_grid(const RunConfig& cfg, int count) {
  const double a = cfg.samples.grid_radius / std::numbers::sqrt2;
  const double h = 2.0 * a / count;
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(count * count));
  for (int j = 0; j < count; ++j)
    for (int i = 0; i < count; ++i)
      pts.push_back(cfg.base_point + cplx(-a + (i + 0.5713) * h, -a + (j + 0.6371) * h));
  return pts;
}

std::vector<RuledPoint> sample_ruled(const RunConfig& cfg, const SurfaceChart& chart, int count,
                                     unsigned long long stream) {
  std::mt19937_64 rng(cfg.samples.rng_seed + 0x9E3779B97F4A7C15ULL * stream);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int nt = chart.N - 4;
  std::vector<RuledPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double r = cfg.samples.grid_radius * std::sqrt(unit(rng));
    const double phase = 2.0 * std::numbers::pi * unit(rng);
    RuledPoint rp{cfg.base_point + std::polar(r, phase), std::vector<double>(static_cast<std::size_t>(nt))};
    for (auto& t : rp.t) t = cfg.samples.t_scale * (2.0 * unit(rng) - 1.0);
    out.push_back(std::move(rp));
  }
  return out;
}

}  // namespace isodeform
