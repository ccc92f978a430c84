// Serial reference path against the OpenMP path for the heavier kernels.
// Arg 0 = serial, 1 = parallel. Thread count follows ISODEFORM_THREADS.

#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "isodeform/mesh.hpp"
#include "isodeform/verify.hpp"

using namespace isodeform;

namespace {

struct Loaded {
  RunConfig cfg;
  SurfaceChart chart;
};

const Loaded& preset(const std::string& name) {
  static std::map<std::string, Loaded> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    Loaded l{load_config(std::string(ISODEFORM_PRESET_DIR) + "/" + name + ".json"), {}};
    l.chart = build_chart(l.cfg);
    it = cache.emplace(name, std::move(l)).first;
  }
  return it->second;
}

Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void suite(benchmark::State& st, const std::string& name, const std::string& s) {
  const auto& p = preset(name);
  for (auto _ : st) {
    auto r = run_suite(s, p.cfg, p.chart, 1.0, mode(st));
    benchmark::DoNotOptimize(r);
  }
  st.SetLabel(st.range(0) ? "parallel" : "serial");
}

void BM_SeedBRuled(benchmark::State& st) { suite(st, "seed-b", "ruled"); }
void BM_SeedBFamily(benchmark::State& st) { suite(st, "seed-b", "family"); }
void BM_HoloCHolo(benchmark::State& st) { suite(st, "holo-c", "holo"); }

void BM_SliceMesh(benchmark::State& st) {
  const auto& p = preset("seed-b");
  const auto spec = parse_slice("theta=0.5;t=0.1,0.2,0,0;coords=1,2,3;grid=40", p.chart.N);
  for (auto _ : st) {
    auto m = slice_mesh(p.cfg, p.chart, spec, mode(st));
    benchmark::DoNotOptimize(m);
  }
  st.SetLabel(st.range(0) ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_SeedBRuled)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeedBFamily)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HoloCHolo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SliceMesh)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
