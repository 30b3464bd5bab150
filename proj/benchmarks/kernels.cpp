#include <benchmark/benchmark.h>

#include "hreg/graphs.hpp"
#include "hreg/hyperreg.hpp"
#include "hreg/random.hpp"
#include "hreg/regcheck.hpp"

using namespace hreg;

namespace {

BipartiteGraph random_graph(Rng& rng, VertexClass a, VertexClass b) {
  std::vector<Edge> e;
  for (std::uint32_t l = 0; l < a.size; ++l)
    for (std::uint32_t x = 0; x < b.size; ++x)
      if (rng.chance(1, 2)) e.push_back({l, x});
  return BipartiteGraph(a, b, e);
}

Triad random_triad(Rng& rng, std::uint32_t n) {
  const VertexClass a{0, n}, b{1, n}, c{2, n};
  return Triad(random_graph(rng, a, b), random_graph(rng, a, c), random_graph(rng, b, c));
}

ThreeGraph random_h(Rng& rng, std::uint32_t n) {
  std::vector<Triple> ts;
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      for (std::uint32_t z = 0; z < n; ++z)
        if (rng.chance(1, 2)) ts.push_back({x, y, z});
  return ThreeGraph({VertexClass{0, n}, VertexClass{1, n}, VertexClass{2, n}}, ts);
}

void BM_TriangleCount(benchmark::State& state) {
  Rng rng(1);
  const Triad t = random_triad(rng, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(triangle_count(t));
}
BENCHMARK(BM_TriangleCount)->RangeMultiplier(4)->Range(16, 1024);

void BM_Codegree(benchmark::State& state) {
  Rng rng(2);
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  const Triad t = random_triad(rng, n);
  std::uint32_t a = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(codegree(t, a, (a * 7) % n));
    a = (a + 1) % n;
  }
}
BENCHMARK(BM_Codegree)->RangeMultiplier(4)->Range(64, 4096);

void BM_OctahedronNaive(benchmark::State& state) {
  Rng rng(3);
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  const Triad t = random_triad(rng, n);
  const ThreeGraph h = random_h(rng, n);
  const auto emb = TriadEmbedding::identity(t);
  for (auto _ : state) benchmark::DoNotOptimize(octahedron_sum_naive(h, t, emb));
}
BENCHMARK(BM_OctahedronNaive)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_OctahedronFast(benchmark::State& state) {
  Rng rng(3);
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  const Triad t = random_triad(rng, n);
  const ThreeGraph h = random_h(rng, n);
  const auto emb = TriadEmbedding::identity(t);
  for (auto _ : state) benchmark::DoNotOptimize(octahedron_sum_fast(h, t, emb));
}
BENCHMARK(BM_OctahedronFast)->DenseRange(2, 6, 2)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveEps(benchmark::State& state) {
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  CheckParams params;
  params.mode = CheckMode::Exhaustive;
  Rng rng(4);
  const BipartiteGraph g = random_graph(rng, {0, n}, {1, n});
  const Rational eps = make_rational(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(check_eps_regular(g, eps, params));
}
BENCHMARK(BM_ExhaustiveEps)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveDelta(benchmark::State& state) {
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  CheckParams params;
  params.mode = CheckMode::Exhaustive;
  Rng rng(5);
  const BipartiteGraph g = random_graph(rng, {0, n}, {1, n});
  const Rational delta = make_rational(1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(check_delta_regular(g, delta, params));
}
BENCHMARK(BM_ExhaustiveDelta)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
