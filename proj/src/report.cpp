#include "isodeform/report.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace isodeform {

namespace {

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

nlohmann::json report_json(const VerificationReport& rep) {
  nlohmann::json j;
  j["config"] = rep.config_echo;
  j["name"] = rep.config_name;
  j["pass"] = rep.pass();
  j["meta"] = {{"timestamp", rep.timestamp}, {"seconds", rep.seconds}, {"threads", rep.threads}};
  nlohmann::json suites = nlohmann::json::object();
  for (const auto& s : rep.suites) {
    nlohmann::json checks = nlohmann::json::object();
    for (const auto& c : s.checks) {
      nlohmann::json cj{{"anchor", c.anchor},   {"max", number(c.max)},        {"mean", number(c.mean)},
                        {"tol", c.tol},         {"bound", c.lower_bound ? "lower" : "upper"},
                        {"samples", c.samples}, {"degenerate", c.degenerate}, {"pass", c.pass}};
      if (!c.first_degenerate.empty()) cj["first_degenerate"] = c.first_degenerate;
      checks[c.name] = cj;
    }
    suites[s.name] = {{"checks", checks}, {"pass", s.pass()}};
    j["meta"]["suite_seconds"][s.name] = s.seconds;
  }
  j["suites"] = suites;
  return j;
}

void write_csv(std::ostream& os, const VerificationReport& rep) {
  os << "suite,check,max,mean,tol,bound,samples,degenerate,pass,anchor\n";
  os << std::setprecision(6) << std::scientific;
  for (const auto& s : rep.suites)
    for (const auto& c : s.checks)
      os << s.name << ',' << c.name << ',' << c.max << ',' << c.mean << ',' << c.tol << ','
         << (c.lower_bound ? "lower" : "upper") << ',' << c.samples << ',' << c.degenerate << ','
         << (c.pass ? "pass" : "FAIL") << ',' << csv_field(c.anchor) << '\n';
}

void write_summary(std::ostream& os, const VerificationReport& rep) {
  os << std::setprecision(3) << std::scientific;
  for (const auto& s : rep.suites) {
    os << "[" << s.name << "] " << (s.pass() ? "pass" : "FAIL") << '\n';
    for (const auto& c : s.checks) {
      os << "  " << std::left << std::setw(24) << c.name << std::right << (c.pass ? " pass " : " FAIL ")
         << "max " << c.max << (c.lower_bound ? " >= " : " <= ") << c.tol << "  n=" << c.samples;
      if (c.degenerate) os << "  degenerate=" << c.degenerate << " (" << c.first_degenerate << ")";
      else if (!c.first_degenerate.empty()) os << "  (" << c.first_degenerate << ")";
      os << '\n';
    }
  }
  os << (rep.pass() ? "ALL PASS" : "FAILED") << '\n';
}

}  // namespace isodeform
