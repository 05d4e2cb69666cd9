// Copyright 2026 The adlabel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>
#include <fmt/format.h>

#include "adlabel/agreement/label_matrix.h"
#include "adlabel/agreement/metrics.h"
#include "adlabel/common/rng.h"

namespace adlabel::agreement {
namespace {

LabelMatrix Random(std::size_t annotators, std::size_t items) {
  std::vector<std::string> a;
  std::vector<std::string> p;
  for (std::size_t i = 0; i < annotators; ++i)
    a.push_back(fmt::format("a{}", i));
  for (std::size_t j = 0; j < items; ++j) p.push_back(fmt::format("p{}", j));
  LabelMatrix m(a, p);
  StableRng rng(annotators * 1000 + items);
  for (std::size_t i = 0; i < annotators; ++i) {
    for (std::size_t j = 0; j < items; ++j) {
      if (rng.UniformUnit() < 0.1) continue;
      m.set(i, j,
            rng.UniformBelow(2) ? Label::kSponsored : Label::kNonSponsored);
    }
  }
  return m;
}

void BM_KrippendorffAlpha(benchmark::State& state) {
  const LabelMatrix m = Random(static_cast<std::size_t>(state.range(0)),
                               static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(KrippendorffAlpha(m));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_KrippendorffAlpha)->Args({8, 200})->Args({50, 10'000});

void BM_PairwiseAgreement(benchmark::State& state) {
  const LabelMatrix m = Random(static_cast<std::size_t>(state.range(0)), 200);
  for (auto _ : state) benchmark::DoNotOptimize(PairwiseAgreement(m));
}
BENCHMARK(BM_PairwiseAgreement)->Arg(8)->Arg(32);

}  // namespace
}  // namespace adlabel::agreement
