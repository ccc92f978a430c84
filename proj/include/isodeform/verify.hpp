#pragma once

#include <string>
#include <vector>

#include "isodeform/config.hpp"
#include "isodeform/parallel.hpp"

namespace isodeform {

struct Check {
  std::string suite;
  std::string name;
  std::string anchor;      // the identity being checked, as a formula
  double max = 0.0;
  double mean = 0.0;
  double tol = 0.0;
  bool lower_bound = false;  // pass when max >= tol (contrast and witness checks)
  long samples = 0;
  long degenerate = 0;       // sample points where the frame could not be built
  std::string first_degenerate;
  bool pass = false;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool pass() const;
};

struct VerificationReport {
  std::string config_name;
  nlohmann::json config_echo;
  std::vector<SuiteResult> suites;
  double seconds = 0.0;
  std::string timestamp;
  int threads = 1;
  bool pass() const;
};

/// Default tolerance of a check ("suite.name"), before overrides and scaling.
double default_tolerance(const std::string& key);

/// `suite` is one of surface, ruled, family, holo or all. "all" adds holo only for
/// holomorphic-curve charts; requesting holo on any other chart runs it as a contrast.
VerificationReport run(const RunConfig& cfg, const std::string& suite = "all", double tol_scale = 1.0,
                       Exec exec = Exec::parallel);

SuiteResult run_suite(const std::string& suite, const RunConfig& cfg, const SurfaceChart& chart,
                      double tol_scale = 1.0, Exec exec = Exec::parallel);

}  // namespace isodeform
