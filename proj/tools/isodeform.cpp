#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "isodeform/errors.hpp"
#include "isodeform/mesh.hpp"
#include "isodeform/report.hpp"

using namespace isodeform;

namespace {

int cmd_build(const std::string& path) {
  const RunConfig cfg = load_config(path);
  const SurfaceChart chart = build_chart(cfg);
  nlohmann::json j;
  j["name"] = cfg.name;
  j["ambient_dim"] = chart.N;
  j["order"] = chart.order();
  j["radius"] = chart.radius;
  j["isotropy_defect"] = isotropy_defect(chart);
  j["conformality_defect"] = conformality_defect(chart);
  j["substantiality_rank"] = substantiality_rank(chart);
  j["warnings"] = chart.warnings;
  const auto e = curvature_ellipse(chart, chart.base_point, 1);
  j["base_point"] = {{"kappa", e.kappa}, {"mu", e.mu}, {"circle_defect", e.circle_defect}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_verify(const std::string& path, const std::string& suite, double tol_scale, bool serial,
               std::string report_path, std::string csv_path) {
  const RunConfig cfg = load_config(path);
  const VerificationReport rep = run(cfg, suite, tol_scale, serial ? Exec::serial : Exec::parallel);
  if (report_path.empty()) report_path = cfg.report_path;
  if (csv_path.empty()) csv_path = cfg.csv_path;
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw ConfigError("cannot write " + report_path);
    out << report_json(rep).dump(2) << '\n';
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw ConfigError("cannot write " + csv_path);
    write_csv(out, rep);
  }
  write_summary(std::cout, rep);
  return rep.pass() ? 0 : 1;
}

int cmd_export(const std::string& path, const std::string& slice_text, const std::string& out_path) {
  const RunConfig cfg = load_config(path);
  const SurfaceChart chart = build_chart(cfg);
  const SliceSpec slice = parse_slice(slice_text, chart.N);
  const Mesh mesh = slice_mesh(cfg, chart, slice);
  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot write " + out_path);
  write_obj(out, mesh);
  const auto& s = mesh.edge_stats;
  std::cout << std::setprecision(12) << "vertices " << mesh.vertices.size() << " faces " << mesh.faces.size()
            << "\nedge arc length: min " << s.min << " max " << s.max << " mean " << s.mean << " total " << s.total
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ruled minimal submanifolds over isotropic surfaces: construction and verification"};
  app.require_subcommand(1);

  std::string config, suite = "all", slice, out, report, csv;
  double tol_scale = 1.0;
  bool serial = false;

  auto* build = app.add_subcommand("build", "Build the chart and print its invariants");
  build->add_option("--config", config, "JSON config")->required()->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--config", config, "JSON config")->required()->check(CLI::ExistingFile);
  verify->add_option("--suite", suite, "surface|ruled|family|holo|all")
      ->check(CLI::IsMember({"surface", "ruled", "family", "holo", "all"}));
  verify->add_option("--tol-scale", tol_scale, "Multiply every upper tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--report", report, "JSON report path (overrides config)");
  verify->add_option("--csv", csv, "CSV table path (overrides config)");
  verify->add_flag("--serial", serial, "Use the serial reference path");

  auto* exp = app.add_subcommand("export", "Write an OBJ mesh of a slice");
  exp->add_option("--config", config, "JSON config")->required()->check(CLI::ExistingFile);
  exp->add_option("--slice", slice, "theta=<r>;t=<a,b,..>;coords=<i,j,k>;grid=<n>")->required();
  exp->add_option("--out", out, "OBJ output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) return cmd_build(config);
    if (*verify) return cmd_verify(config, suite, tol_scale, serial, report, csv);
    if (*exp) return cmd_export(config, slice, out);
  } catch (const DegeneracyError& e) {
    std::cerr << "degeneracy: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
