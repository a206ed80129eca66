// Copyright 2026 The beew Authors
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

#include "beew/bivariate.hpp"
#include "beew/fit.hpp"
#include "beew/gof.hpp"
#include "beew/rng.hpp"

namespace {

beew::BeewParams bench_params(const char* fam) {
  if (std::string_view(fam) == "weib")
    return beew::BeewParams(1.2, 0.8, 1.0, 0.5, beew::HFamily::make("weib", {2.0}));
  return beew::BeewParams(1.5, 0.5, 1.2, 0.9, beew::HFamily::make("exp"));
}

void BM_EewLogpdf(benchmark::State& state) {
  const beew::EewParams p(1.3, 0.8, beew::HFamily::make("weib", {1.7}));
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(beew::eew_logpdf(p, x));
    x = x < 5.0 ? x + 1e-4 : 0.01;
  }
}
BENCHMARK(BM_EewLogpdf);

void BM_JointLogpdf(benchmark::State& state) {
  const beew::BeewParams p = bench_params("weib");
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(beew::joint_logpdf(p, x, 5.0 - x, 0.0));
    x = x < 4.9 ? x + 1e-4 : 0.01;
  }
}
BENCHMARK(BM_JointLogpdf);

void BM_Sampler(benchmark::State& state) {
  const beew::BeewParams p = bench_params("exp");
  beew::Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(beew::beew_sample(p, rng, 1000));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Sampler);

void BM_KolmogorovTail(benchmark::State& state) {
  double lam = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(beew::kolmogorov_tail(lam));
    lam = lam < 3.0 ? lam + 1e-3 : 0.05;
  }
}
BENCHMARK(BM_KolmogorovTail);

void BM_EmFit(benchmark::State& state) {
  const beew::BeewParams truth = bench_params("exp");
  beew::Rng rng(7);
  const auto rows = beew::beew_sample(truth, rng, 500);
  const beew::ClassifiedSample s = beew::classify(rows, 0.0);
  beew::FitOptions opts;
  opts.standard_errors = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(beew::em_fit(s, beew::FamilyId::kExp, opts));
  }
}
BENCHMARK(BM_EmFit)->Unit(benchmark::kMillisecond);

void BM_ObservedInformation(benchmark::State& state) {
  const beew::BeewParams truth = bench_params("exp");
  beew::Rng rng(7);
  const auto rows = beew::beew_sample(truth, rng, 500);
  const beew::ClassifiedSample s = beew::classify(rows, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(beew::observed_information(truth, s));
  }
}
BENCHMARK(BM_ObservedInformation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
