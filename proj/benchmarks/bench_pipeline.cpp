// Copyright 2026 The stripmesh Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "stripmesh/detokenizer.hpp"
#include "stripmesh/metrics.hpp"
#include "stripmesh/quantizer.hpp"
#include "stripmesh/shapes.hpp"
#include "stripmesh/stripper.hpp"
#include "stripmesh/tokenizer.hpp"

namespace {

using namespace stripmesh;

QuantizedMesh sphere(int level) {
  return quantize_mesh(shapes::icosphere(level));
}

void BM_Quantize(benchmark::State& state) {
  const Mesh m = shapes::icosphere(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quantize_mesh(m));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(m.faces.size()));
}
BENCHMARK(BM_Quantize)->DenseRange(2, 5);

void BM_ExtractStrips(benchmark::State& state) {
  const QuantizedMesh q = sphere(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(extract_strips(q, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(q.faces.size()));
}
BENCHMARK(BM_ExtractStrips)->DenseRange(2, 5);

void BM_ExtractQuadStrips(benchmark::State& state) {
  const QuantizedMesh q = quantize_mesh(shapes::quad_sphere(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(extract_strips(q, 2));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(q.faces.size()));
}
BENCHMARK(BM_ExtractQuadStrips)->Arg(8)->Arg(32);

void BM_Serialize(benchmark::State& state) {
  const StripSet s = extract_strips(sphere(5), 1);
  for (auto _ : state) benchmark::DoNotOptimize(serialize(s, false));
}
BENCHMARK(BM_Serialize);

void BM_Decode(benchmark::State& state) {
  const TokenSequence t = serialize(extract_strips(sphere(5), 1), false);
  for (auto _ : state) benchmark::DoNotOptimize(decode(t, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(t.tokens.size()));
}
BENCHMARK(BM_Decode);

void BM_SampleSurface(benchmark::State& state) {
  const Mesh m = shapes::icosphere(4);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_surface(m, static_cast<std::size_t>(state.range(0)), 1));
}
BENCHMARK(BM_SampleSurface)->Arg(10000)->Arg(100000);

void BM_GeometryMetrics(benchmark::State& state) {
  const Mesh m = shapes::icosphere(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const SampleSet a = sample_surface(m, n, 1);
  const SampleSet b = sample_surface(m, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(geometry_metrics(a, b));
}
BENCHMARK(BM_GeometryMetrics)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
