#include "gsp4/branching.hpp"
#include "gsp4/eisenstein.hpp"
#include "gsp4/moduli.hpp"
#include "gsp4/parahoric.hpp"
#include "gsp4/whittaker.hpp"

#include <benchmark/benchmark.h>

using namespace gsp4;

static void BM_CsValueSymbolic(benchmark::State& st) {
  auto h = HeckeParams::symbolic(2, 2, 1);
  const int e = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(cs_value_gsp4(h, {e, e, -e}));
}
BENCHMARK(BM_CsValueSymbolic)->Arg(1)->Arg(3)->Arg(6);

static void BM_HeckeMatrix(benchmark::State& st) {
  auto h = HeckeParams::symbolic(2, 2, 1);
  for (auto _ : st) benchmark::DoNotOptimize(hecke_matrix("U2Iw", h));
}
BENCHMARK(BM_HeckeMatrix);

static void BM_EisensteinF(benchmark::State& st) {
  auto phi = GlobalSchwartz::spherical(3).with_p(schwartz_crit(3));
  const int N = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(eisenstein_F(4, phi, N));
  st.SetComplexityN(N);
}
BENCHMARK(BM_EisensteinF)->RangeMultiplier(2)->Range(50, 400)->Complexity();

static void BM_Branching(benchmark::State& st) {
  const int r = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(projection_coefficient(r, r, 0, 0, BranchSlot::First));
}
BENCHMARK(BM_Branching)->DenseRange(1, 4);

static void BM_CorrespondencePoint(benchmark::State& st) {
  const long p = st.range(0);
  auto pts = random_points(p, 1, 7);
  for (auto _ : st) benchmark::DoNotOptimize(corr_lhs(pts[0]) == corr_rhs(pts[0]));
}
BENCHMARK(BM_CorrespondencePoint)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
