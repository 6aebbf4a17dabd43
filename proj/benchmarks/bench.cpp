#include <benchmark/benchmark.h>

#include <rotorchan/bessel.hpp>
#include <rotorchan/classical.hpp>
#include <rotorchan/husimi.hpp>
#include <rotorchan/koopman.hpp>
#include <rotorchan/quantum.hpp>
#include <rotorchan/reshape.hpp>

using namespace rotorchan;

static void bm_bessel_array(benchmark::State& state) {
  const int nmax = int(state.range(0));
  for (auto _ : state) {
    auto values = bessel_j_array(nmax, 2.35);
    benchmark::DoNotOptimize(values.data());
  }
}
BENCHMARK(bm_bessel_array)->Arg(64)->Arg(256);

static void bm_build_koopman(benchmark::State& state) {
  const int cutoff = int(state.range(0));
  MapParams mp{2.0, 2.0, 0.5};
  for (auto _ : state) {
    KoopmanChannel k = build_koopman_channel(cutoff, mp, Axis::R1);
    benchmark::DoNotOptimize(k.matrix.nonZeros());
  }
}
BENCHMARK(bm_build_koopman)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void bm_channel_apply(benchmark::State& state) {
  const int n = int(state.range(0));
  ChannelApplier ch(n, 2.0, 0.1);
  Vector x = Vector::Random(ch.dim());
  Vector y(ch.dim());
  for (auto _ : state) {
    ch.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(bm_channel_apply)->Arg(60)->Arg(150)->Unit(benchmark::kMicrosecond);

static void bm_build_channel_dense(benchmark::State& state) {
  const int n = int(state.range(0));
  for (auto _ : state) {
    Matrix m = build_channel_fast(n, 2.0, 0.1);
    benchmark::DoNotOptimize(m.data());
  }
}
BENCHMARK(bm_build_channel_dense)->Arg(40)->Unit(benchmark::kMillisecond);

static void bm_realign(benchmark::State& state) {
  const int n = int(state.range(0));
  Matrix u = build_coupled_unitary(n, MapParams{2.0, 2.0, 0.1});
  for (auto _ : state) {
    Matrix r = realign_r1(u);
    benchmark::DoNotOptimize(r.data());
  }
}
BENCHMARK(bm_realign)->Arg(32)->Unit(benchmark::kMillisecond);

static void bm_husimi_mode(benchmark::State& state) {
  const int n = 40;
  Vector mode = vec(Matrix::Identity(n, n));
  for (auto _ : state) {
    PhaseSpaceField f = husimi_mode(mode, int(state.range(0)));
    benchmark::DoNotOptimize(f.values.data());
  }
}
BENCHMARK(bm_husimi_mode)->Arg(100)->Unit(benchmark::kMillisecond);

static void bm_ftse_grid(benchmark::State& state) {
  for (auto _ : state) {
    PhaseSpaceField f = ftse_grid(int(state.range(0)), 8, 6.0, 1e-15, 1);
    benchmark::DoNotOptimize(f.values.data());
  }
}
BENCHMARK(bm_ftse_grid)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
