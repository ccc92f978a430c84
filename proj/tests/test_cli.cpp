#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "isodeform/errors.hpp"
#include "isodeform/mesh.hpp"
#include "isodeform/report.hpp"
#include "oracles.hpp"

using namespace isodeform;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({
  "name": "mini",
  "surface": {"kind": "seed", "ambient_dim": 6, "alpha0": [[[1, 0]], [[0, 0], [1, 0]]]}
})";

std::string with(const std::string& extra) {
  return R"({"surface": {"kind": "seed", "ambient_dim": 6, "alpha0": [[[1, 0]], [[0, 0], [1, 0]]]})" + extra + "}";
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "cfg");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

nlohmann::json without_meta(const VerificationReport& r) {
  auto j = report_json(r);
  j.erase("meta");
  return j;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("isodeform_test_" + name);
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ISODEFORM_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

// Config ------------------------------------------------------------------

TEST(Config, MinimalDefaults) {
  const auto cfg = parse_config(kMinimal);
  EXPECT_EQ(cfg.name, "mini");
  EXPECT_EQ(cfg.kind, SurfaceKind::seed);
  EXPECT_EQ(cfg.order, kDefaultOrder);
  EXPECT_EQ(cfg.theta_grid.size(), 12u);
  EXPECT_EQ(cfg.suites.size(), 4u);
  EXPECT_EQ(cfg.seed.alpha0.ncomp(), 2);
  EXPECT_EQ(build_chart(cfg).N, 6);
}

TEST(Config, PresetsLoad) {
  for (const char* name : {"seed-a", "seed-a-full", "seed-b", "holo-c", "contrast-noniso"}) {
    const auto cfg = load_config(oracle::preset(name));
    EXPECT_EQ(cfg.name, name);
    EXPECT_NO_THROW(build_chart(cfg));
  }
  EXPECT_EQ(load_config(oracle::preset("holo-c")).kind, SurfaceKind::holo);
  EXPECT_EQ(load_config(oracle::preset("contrast-noniso")).kind, SurfaceKind::iso);
}

TEST(Config, SyntaxErrorNamesLine) {
  const std::string msg = error_of("{\n  \"name\": \"x\",\n  oops\n}");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(Config, FieldErrorsNamePointer) {
  EXPECT_NE(error_of(with(R"(, "samples": {"grid_count": "x"})")).find("/samples/grid_count"), std::string::npos);
  EXPECT_NE(error_of(with(R"(, "suites": ["surface", "bogus"])")).find("/suites/1"), std::string::npos);
  EXPECT_NE(error_of(with(R"(, "tolerances": {"ruled.comp": -1})")).find("/tolerances/ruled.comp"),
            std::string::npos);
  EXPECT_NE(error_of(with(R"(, "theta_grid": [0, 4])")).find("/theta_grid/1"), std::string::npos);
  EXPECT_NE(error_of(with(R"(, "samples": {"cloud_count": 5})")).find("/samples/cloud_count"), std::string::npos);
  EXPECT_NE(error_of(R"({"name": "x"})").find("/surface"), std::string::npos);
  EXPECT_NE(error_of(R"({"surface": {"kind": "torus"}})").find("/surface/kind"), std::string::npos);
  EXPECT_NE(error_of(R"({"surface": {"kind": "seed", "alpha0": [[[1, 0]], [[0, 0], "q"]]}})")
                .find("/surface/alpha0/1/1"),
            std::string::npos);
}

TEST(Config, SampleDiscMustFit) {
  EXPECT_THROW(parse_config(with(R"(, "samples": {"grid_radius": 0.95})")), DomainError);
  EXPECT_NO_THROW(parse_config(with(R"(, "samples": {"grid_radius": 0.85})")));
}

TEST(Config, UnknownToleranceRejectedAtRun) {
  const auto cfg = parse_config(with(R"(, "tolerances": {"ruled.nonsense": 1e-3})"));
  EXPECT_THROW(run(cfg, "surface"), ConfigError);
  EXPECT_THROW(run(parse_config(kMinimal), "surface", 0.0), ConfigError);
  EXPECT_THROW(run(parse_config(kMinimal), "everything"), ConfigError);
}

TEST(Sampling, GridAvoidsAxesAndStaysInDisc) {
  const auto cfg = parse_config(kMinimal);
  const auto g = sample_grid(cfg, 7);
  ASSERT_EQ(g.size(), 49u);
  for (cplx z : g) {
    EXPECT_LE(std::abs(z), cfg.samples.grid_radius + 1e-12);
    EXPECT_GT(std::abs(z.real()), 1e-3);
    EXPECT_GT(std::abs(z.imag()), 1e-3);
  }
}

TEST(Sampling, RuledPointsReproducible) {
  const auto cfg = parse_config(kMinimal);
  const auto chart = build_chart(cfg);
  const auto a = sample_ruled(cfg, chart, 10, 1), b = sample_ruled(cfg, chart, 10, 1), c = sample_ruled(cfg, chart, 10, 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].z, b[i].z);
    EXPECT_EQ(a[i].t, b[i].t);
    EXPECT_LE(std::abs(a[i].z), cfg.samples.grid_radius);
    for (double t : a[i].t) EXPECT_LE(std::abs(t), cfg.samples.t_scale);
  }
  EXPECT_NE(a[0].z, c[0].z);
}

// Verification ------------------------------------------------------------

TEST(Verify, SeedAFullPasses) {
  const auto rep = run(load_config(oracle::preset("seed-a-full")));
  for (const auto& s : rep.suites)
    for (const auto& c : s.checks) EXPECT_TRUE(c.pass) << s.name << "." << c.name << " max " << c.max;
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.suites.size(), 3u);
}

TEST(Verify, AllAddsHoloOnlyForCurves) {
  const auto holo = run(load_config(oracle::preset("holo-c")), "all");
  ASSERT_EQ(holo.suites.size(), 4u);
  EXPECT_EQ(holo.suites.back().name, "holo");
  EXPECT_TRUE(holo.pass());
}

TEST(Verify, HoloSuiteOnSeedBFails) {
  const auto rep = run(load_config(oracle::preset("seed-b")), "holo");
  EXPECT_FALSE(rep.pass());
}

TEST(Verify, DeterministicAndThreadIndependent) {
  const auto cfg = load_config(oracle::preset("seed-b"));
  const auto a = run(cfg, "ruled"), b = run(cfg, "ruled"), c = run(cfg, "ruled", 1.0, Exec::serial);
  EXPECT_EQ(without_meta(a), without_meta(b));
  EXPECT_EQ(without_meta(a), without_meta(c));
}

TEST(Verify, ContrastPresetFails) {
  const auto rep = run(load_config(oracle::preset("contrast-noniso")));
  EXPECT_FALSE(rep.pass());
  bool isotropy_failed = false, ruled_failed = false;
  for (const auto& s : rep.suites)
    for (const auto& c : s.checks) {
      if (s.name == "surface" && c.name.find("isotropy") != std::string::npos && !c.pass) isotropy_failed = true;
      if (s.name == "ruled" && !c.pass) ruled_failed = true;
    }
  EXPECT_TRUE(isotropy_failed);
  EXPECT_TRUE(ruled_failed);
}

TEST(Verify, TolScaleTightensUpperBoundsOnly) {
  const auto cfg = load_config(oracle::preset("seed-a"));
  const auto rep = run(cfg, "family", 1e-9);
  EXPECT_FALSE(rep.pass());
  for (const auto& c : rep.suites[0].checks)
    if (c.lower_bound) EXPECT_EQ(c.tol, default_tolerance("family." + c.name));
}

TEST(Verify, ToleranceOverride) {
  auto cfg = load_config(oracle::preset("seed-a"));
  cfg.tolerances["surface.circle_s1"] = 1e-30;
  const auto rep = run(cfg, "surface");
  for (const auto& c : rep.suites[0].checks)
    if (c.name == "circle_s1") EXPECT_EQ(c.tol, 1e-30);
}

TEST(Report, CsvAndJsonShape) {
  const auto rep = run(load_config(oracle::preset("seed-a")), "surface");
  std::ostringstream csv;
  write_csv(csv, rep);
  const std::string text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "suite,check,max,mean,tol,bound,samples,degenerate,pass,anchor");
  const auto j = report_json(rep);
  EXPECT_TRUE(j.contains("meta"));
  EXPECT_TRUE(j["meta"].contains("timestamp"));
  std::ostringstream sum;
  write_summary(sum, rep);
  EXPECT_NE(sum.str().find("ALL PASS"), std::string::npos);
}

// Mesh export -------------------------------------------------------------

TEST(Mesh, GridTopology) {
  const auto cfg = load_config(oracle::preset("seed-a"));
  const auto chart = build_chart(cfg);
  const auto m = slice_mesh(cfg, chart, parse_slice("theta=0.5;grid=20", chart.N));
  EXPECT_EQ(m.vertices.size(), 400u);
  EXPECT_EQ(m.faces.size(), 722u);
  EXPECT_EQ(m.edge_stats.edges, 19 * 20 * 2 + 19 * 19);
  for (const auto& f : m.faces)
    for (int v : f) {
      EXPECT_GE(v, 1);
      EXPECT_LE(v, 400);
    }
}

TEST(Mesh, EdgeStatsAreIsometryInvariant) {
  const auto cfg = load_config(oracle::preset("seed-b"));
  const auto chart = build_chart(cfg);
  const auto a = slice_mesh(cfg, chart, parse_slice("theta=0;t=0.2,-0.1,0.3,0.05;grid=8", chart.N));
  const auto b = slice_mesh(cfg, chart, parse_slice("theta=1.5707963267948966;t=0.2,-0.1,0.3,0.05;grid=8", chart.N));
  EXPECT_NEAR(a.edge_stats.total, b.edge_stats.total, 1e-10 * a.edge_stats.total);
  EXPECT_NEAR(a.edge_stats.min, b.edge_stats.min, 1e-12);
  EXPECT_NEAR(a.edge_stats.max, b.edge_stats.max, 1e-12);
}

TEST(Mesh, SerialMatchesParallel) {
  const auto cfg = load_config(oracle::preset("seed-a"));
  const auto chart = build_chart(cfg);
  const auto s = parse_slice("theta=1;t=0.1,0.2;grid=6", chart.N);
  const auto a = slice_mesh(cfg, chart, s, Exec::serial), b = slice_mesh(cfg, chart, s, Exec::parallel);
  for (std::size_t i = 0; i < a.vertices.size(); ++i) EXPECT_EQ(a.vertices[i], b.vertices[i]);
  EXPECT_EQ(a.edge_stats.total, b.edge_stats.total);
}

TEST(Mesh, SliceErrors) {
  EXPECT_THROW(coordinate_projection({1, 2, 7}, 6), ProjectionError);
  EXPECT_THROW(parse_slice("theta", 6), ConfigError);
  EXPECT_THROW(parse_slice("grid=1", 6), ConfigError);
  EXPECT_THROW(parse_slice("colour=red", 6), ConfigError);
  EXPECT_THROW(parse_slice("t=0.1,abc", 6), ConfigError);
  const auto cfg = load_config(oracle::preset("seed-a"));
  const auto chart = build_chart(cfg);
  EXPECT_THROW(slice_mesh(cfg, chart, parse_slice("coords=1,1,2", 6)), ProjectionError);
  EXPECT_THROW(slice_mesh(cfg, chart, parse_slice("t=0.1", 6)), ConfigError);
}

TEST(Mesh, ObjFormat) {
  Mesh m;
  m.vertices = {Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0)};
  m.faces = {{1, 2, 3}};
  std::ostringstream os;
  write_obj(os, m);
  EXPECT_EQ(os.str(), "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
}

// Parallel helper ---------------------------------------------------------

TEST(Parallel, LowestIndexExceptionWins) {
  for (Exec e : {Exec::serial, Exec::parallel}) {
    try {
      for_each_index(
          100,
          [](long i) {
            if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
          },
          e);
      FAIL();
    } catch (const std::runtime_error& err) {
      EXPECT_STREQ(err.what(), "17");
    }
  }
}

// Command line ------------------------------------------------------------

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli");
  const std::string rep = (dir / "r.json").string(), csv = (dir / "r.csv").string();
  EXPECT_EQ(run_cli("verify --config " + oracle::preset("seed-a") + " --suite surface --report " + rep + " --csv " + csv), 0);
  EXPECT_TRUE(fs::exists(rep));
  EXPECT_TRUE(fs::exists(csv));
  EXPECT_EQ(run_cli("verify --config " + oracle::preset("contrast-noniso") + " --report " + rep + " --csv " + csv), 1);
  EXPECT_EQ(run_cli("build --config " + oracle::preset("holo-c")), 0);
  const std::string obj = (dir / "m.obj").string();
  EXPECT_EQ(run_cli("export --config " + oracle::preset("seed-a") + " --slice 'theta=0.3;grid=5' --out " + obj), 0);
  EXPECT_TRUE(fs::exists(obj));
  EXPECT_EQ(run_cli("export --config " + oracle::preset("seed-a") + " --slice 'coords=1,1,2' --out " + obj), 2);
  EXPECT_NE(run_cli("verify --config /nonexistent.json"), 0);
  EXPECT_NE(run_cli("verify --config " + oracle::preset("seed-a") + " --suite bogus"), 0);
  fs::remove_all(dir);
}
