#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "isodeform/holocurve.hpp"

namespace isodeform {

enum class SurfaceKind { seed, iso, holo };

struct SampleSpec {
  double grid_radius = 0.3;   // sample disc around the base point
  int grid_count = 7;         // grid_count x grid_count surface grid
  int ricci_count = 5;        // ricci_count x ricci_count grid for the Ricci suite
  int ruled_count = 50;       // random ruled points
  double t_scale = 0.4;       // ruling coordinates drawn from [-t_scale, t_scale]
  int cloud_count = 25;       // points per equivariance cloud
  unsigned long long rng_seed = 20240611ULL;
};

struct RunConfig {
  std::string name = "unnamed";
  SurfaceKind kind = SurfaceKind::seed;
  SeedSpec seed;                  // kind == seed
  HoloSeries phi;                 // kind == iso
  HoloCurveSpec holo;             // kind == holo
  int order = kDefaultOrder;
  cplx base_point{};
  double radius = 1.0;
  SampleSpec samples;
  std::vector<double> theta_grid;
  std::map<std::string, double> tolerances;  // overrides only
  std::vector<std::string> suites{"surface", "ruled", "family", "holo"};
  std::string report_path;
  std::string csv_path;
  nlohmann::json source;          // echo of the parsed document
};

/// Parses a config document. ConfigError messages carry the line (for syntax errors)
/// or the JSON pointer of the offending field. DomainError when the sample disc does
/// not fit inside 0.9 of the chart radius.
RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");
RunConfig load_config(const std::string& path);

SurfaceChart build_chart(const RunConfig& cfg);

/// Grid of count x count points in the sample disc, shifted off the coordinate axes.
std::vector<cplx> sample_grid(const RunConfig& cfg, int count);

/// Reproducible random ruled points (z uniform in the sample disc, t uniform in the box).
std::vector<RuledPoint> sample_ruled(const RunConfig& cfg, const SurfaceChart& chart, int count,
                                     unsigned long long stream = 0);

}  // namespace isodeform
