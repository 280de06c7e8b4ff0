// Copyright 2026 The configprod Authors
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

// Serial against OpenMP kernels on conservatization levels of the box
// category for m = n = 2.

#include <benchmark/benchmark.h>

#include "configprod/boxtensor.hpp"
#include "configprod/configcat.hpp"
#include "configprod/conservatize.hpp"
#include "configprod/homotopy.hpp"

namespace {

using namespace configprod;

struct Fixture {
  ConfigCat a = config_discrete(2), z = config_discrete(4);
  BoxfinCategory bf = boxfin_category(minimal_box_bounds(2, 2));
  BoxPreCategory w = box_pre_category(a.cat, a.cat, bf);
  Functor phi = comparison_functor(w, a, a, bf, z).functor;
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_LambdaComponents(benchmark::State& state) {
  const auto& f = fixture();
  const auto r = static_cast<std::uint32_t>(state.range(0));
  const bool parallel = state.range(1) != 0;
  auto ll = lambda_level(f.w.cat, {r, Variant::kFlat, r + 2});
  for (auto _ : state) benchmark::DoNotOptimize(lambda_components(ll, false, parallel).count);
  state.counters["objects"] = static_cast<double>(ll.num_objects());
}

void BM_VertexComparison(benchmark::State& state) {
  const auto& f = fixture();
  const auto r = static_cast<std::uint32_t>(state.range(0));
  const bool parallel = state.range(1) != 0;
  auto ll = lambda_level(f.w.cat, {r, Variant::kFlat, r + 2});
  for (auto _ : state) benchmark::DoNotOptimize(vertex_comparison(ll, f.z.cat, f.phi, parallel).components.count);
}

}  // namespace

BENCHMARK(BM_LambdaComponents)->ArgsProduct({{0, 1, 2}, {0, 1}})->ArgNames({"r", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VertexComparison)->ArgsProduct({{0, 1, 2}, {0, 1}})->ArgNames({"r", "parallel"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
