// Copyright 2026 The aiuflow Authors
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

#include "aiuflow/adapt.hpp"
#include "aiuflow/engine.hpp"
#include "aiuflow/render.hpp"
#include "aiuflow/spec_io.hpp"
#include "aiuflow/validate.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace aiuflow;

static void BM_ParseSpec(benchmark::State& state) {
  auto text = serialize_spec(fixtures::hotel());
  for (auto _ : state) benchmark::DoNotOptimize(parse_spec(text));
}
BENCHMARK(BM_ParseSpec);

static void BM_Validate(benchmark::State& state) {
  auto spec = fixtures::hotel();
  for (auto _ : state) benchmark::DoNotOptimize(validate_spec(spec));
}
BENCHMARK(BM_Validate);

static void BM_PlanService(benchmark::State& state) {
  auto spec = fixtures::hotel();
  auto d = fixtures::handheld();
  for (auto _ : state) benchmark::DoNotOptimize(plan_service(spec, d, default_thresholds()));
}
BENCHMARK(BM_PlanService);

static void BM_SelectColumns(benchmark::State& state) {
  gen::Rng rng(1);
  auto t = gen::table(rng, static_cast<int>(state.range(0)), 200);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(select_overview_columns(t, 80));
    } catch (const Error&) {
    }
  }
}
BENCHMARK(BM_SelectColumns)->Arg(4)->Arg(10)->Arg(40);

static void BM_RenderTablePages(benchmark::State& state) {
  auto spec = fixtures::hotel();
  auto d = fixtures::handheld();
  auto plan = plan_service(spec, d, default_thresholds());
  const auto& node = fixtures::node(spec, "Interact_Hotels");
  for (auto _ : state) {
    for (const auto& p : render_pages(node, plan.per_node.at(node.id), d)) {
      benchmark::DoNotOptimize(emit_text(p));
    }
  }
}
BENCHMARK(BM_RenderTablePages);

static void BM_Walkthrough(benchmark::State& state) {
  auto spec = fixtures::shared_spec("hotel");
  const Outcome period = outcome::FilledFields{
      {{"check_in", "2026-05-01"}, {"check_out", "2026-05-04"}, {"guests", "2"}}};
  const Outcome customer =
      outcome::FilledFields{{{"full_name", "Ada"}, {"email", "a@b.c"}, {"age", "36"}}};
  for (auto _ : state) {
    auto s = start_session(spec, fixtures::handheld(), default_thresholds());
    s = submit(s, "Select_City", outcome::ChoiceSelected{"rome"});
    s = submit(s, "Fill_Period", period);
    s = submit(s, "Interact_Hotels", outcome::TupleSelected{4});
    s = submit(s, "Select_Action", outcome::ChoiceSelected{"reserve"});
    s = submit(s, "Fill_Customer_Data", customer);
    s = submit(s, "Select_Payment_Type", outcome::ChoiceSelected{"card"});
    benchmark::DoNotOptimize(submit(s, "Confirm", outcome::Ok{}));
  }
}
BENCHMARK(BM_Walkthrough);

BENCHMARK_MAIN();
