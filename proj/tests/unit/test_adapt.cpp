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

#include "doctest.h"

#include <algorithm>

#include "aiuflow/adapt.hpp"
#include "aiuflow/errors.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace aiuflow;
using Kind = AdaptationDecision::Kind;

namespace {

std::vector<std::size_t> indices_of(const TableContent& t, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& name : names) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (t.columns[c].name == name) out.push_back(c);
    }
  }
  return out;
}

// Membership of each column, listed from most to least important.
std::vector<bool> priority_key(const TableContent& t, const std::vector<std::string>& names) {
  std::vector<std::size_t> order(t.columns.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return t.columns[a].priority < t.columns[b].priority;
  });
  std::vector<bool> key;
  for (auto c : order) {
    key.push_back(std::find(names.begin(), names.end(), t.columns[c].name) != names.end());
  }
  return key;
}

AiuInstance text_aiu(std::string body) {
  AiuInstance a;
  a.id = "text";
  a.kind = AiuKind::BrowseText;
  a.description = {"Terms", "Short terms"};
  a.text_body = std::move(body);
  return a;
}

}  // namespace

TEST_SUITE("adapt") {
  TEST_CASE("hotel table on the handheld") {
    auto spec = fixtures::hotel();
    auto d = plan_aiu(fixtures::aiu(spec, "Interact_Hotels"), fixtures::handheld(),
                      default_thresholds());
    CHECK(d.kind() == Kind::TwoStepTable);
    const auto& two = std::get<decision::TwoStepTable>(d.presentation);
    CHECK(two.overview_columns == std::vector<std::string>{"hotel-name", "hotel-price"});
    CHECK(two.detail_command == "details");
    REQUIRE(d.pages);
    CHECK(*d.pages == 3);
  }

  TEST_CASE("desktop plan is all direct") {
    auto plan = plan_service(fixtures::hotel(), fixtures::desktop(), default_thresholds());
    for (const auto& [id, d] : plan.per_node) {
      CAPTURE(id);
      CHECK(d.kind() == Kind::Direct);
    }
    CHECK(plan.per_fork.at("search_fork").kind == ForkLayoutKind::Merged);
    CHECK(plan.per_fork.at("search_fork").order ==
          std::vector<std::string>{"Select_City", "Fill_Period"});
    CHECK(plan.device == "desktop-browser");
  }

  TEST_CASE("tiny device sequences the forks") {
    auto plan = plan_service(fixtures::hotel(), fixtures::tiny(), default_thresholds());
    CHECK(plan.per_fork.at("search_fork").kind == ForkLayoutKind::Sequenced);
    CHECK(plan.per_fork.at("reserve_fork").kind == ForkLayoutKind::Sequenced);
  }

  TEST_CASE("fork layout rules") {
    auto t = default_thresholds();
    DeviceProfile d;
    d.rn = 10;
    d.cn = 40;
    SUBCASE("stacked branches that fit are merged") {
      auto layout = plan_fork({{"a", {4, 20, 0}}, {"b", {5, 30, 0}}}, d, t);
      CHECK(layout.kind == ForkLayoutKind::Merged);
      CHECK(layout.order == std::vector<std::string>{"a", "b"});
    }
    SUBCASE("the separator row counts") {
      CHECK(plan_fork({{"a", {5, 20, 0}}, {"b", {5, 20, 0}}}, d, t).kind ==
            ForkLayoutKind::Sequenced);
    }
    SUBCASE("vertical scrolling within threshold still merges") {
      d.pvs = true;
      CHECK(plan_fork({{"a", {5, 20, 0}}, {"b", {5, 20, 0}}}, d, t).kind ==
            ForkLayoutKind::Merged);
    }
    SUBCASE("too wide is sequenced") {
      d.pvs = true;
      d.cohs = true;
      CHECK(plan_fork({{"a", {2, 41, 0}}, {"b", {2, 20, 0}}}, d, t).kind ==
            ForkLayoutKind::Sequenced);
    }
    SUBCASE("a single branch is merged") {
      CHECK(plan_fork({{"a", {99, 99, 0}}}, d, t).kind == ForkLayoutKind::Merged);
    }
  }

  TEST_CASE("text decisions") {
    DeviceProfile d;
    d.rn = 6;
    d.cn = 20;
    auto t = default_thresholds();
    CHECK(plan_aiu(text_aiu("short"), d, t).kind() == Kind::Direct);
    CHECK(plan_aiu(text_aiu(std::string(200, 'x')), d, t).kind() == Kind::Reject);
    CHECK(plan_aiu(text_aiu(std::string(2001, 'x')), d, t).kind() == Kind::SummaryOnly);
    d.pvs = true;
    auto paged = plan_aiu(text_aiu(std::string(200, 'x')), d, t);
    CHECK(paged.kind() == Kind::PaginateVertical);
    CHECK(*paged.pages == oracle::pages_by_counting(10, 6));
  }

  TEST_CASE("wide tables scroll when a horizontal mechanism is within threshold") {
    gen::Rng rng(1);
    auto a = gen::table_aiu(rng, TableContent{{{"a", "A", 0, 25}, {"b", "B", 1, 25}}, {{"1", "2"}}});
    DeviceProfile d;
    d.rn = 10;
    d.cn = 30;
    d.phs = true;
    auto decision = plan_aiu(a, d, default_thresholds());
    CHECK(decision.presentation == decltype(decision.presentation){decision::Direct{true}});
    auto commands = page_commands(a, decision);
    CHECK(std::count_if(commands.begin(), commands.end(),
                        [](const CommandButton& c) { return c.id.rfind("scroll-", 0) == 0; }) == 2);
  }

  TEST_CASE("a too-narrow leading column cannot be planned") {
    TableContent t{{{"a", "A", 0, 50}, {"b", "B", 1, 3}}, {{"1", "2"}}};
    CHECK_THROWS_WITH_AS(select_overview_columns(t, 30), doctest::Contains("no column fits"),
                         Error);
    ServiceSpec spec = fixtures::hotel();
    for (auto& n : spec.nodes) {
      if (n.id == "Interact_Hotels") n.aiu->table->columns[0].width_hint = 40;
    }
    try {
      plan_service(spec, fixtures::handheld(), default_thresholds());
      FAIL("planned");
    } catch (const Error& e) {
      CHECK(e.code() == "PlanError");
      CHECK(std::string(e.what()).rfind("Interact_Hotels: ", 0) == 0);
    }
  }

  TEST_CASE("overview columns equal the brute-force optimum") {
    gen::Rng rng(42);
    int compared = 0;
    for (int i = 0; i < 800; ++i) {
      auto t = gen::table(rng, 10, 5);
      int budget = gen::uniform(rng, 1, 120);
      auto expected = oracle::best_columns(t, budget);
      CAPTURE(budget);
      if (!expected) {
        CHECK_THROWS_AS(select_overview_columns(t, budget), Error);
        continue;
      }
      auto got = select_overview_columns(t, budget);
      CHECK(got == *expected);
      CHECK(columns_width(t, indices_of(t, got)) <= budget);
      ++compared;
    }
    CHECK(compared >= 500);
  }

  TEST_CASE("a larger budget never selects a worse set") {
    gen::Rng rng(43);
    for (int i = 0; i < 300; ++i) {
      auto t = gen::table(rng, 8, 3);
      int budget = gen::uniform(rng, 30, 80);
      if (!oracle::best_columns(t, budget)) continue;
      auto small = select_overview_columns(t, budget);
      auto large = select_overview_columns(t, budget + gen::uniform(rng, 1, 40));
      CHECK(priority_key(t, large) >= priority_key(t, small));
    }
  }

  TEST_CASE("planned layouts respect the device width") {
    gen::Rng rng(44);
    auto t = default_thresholds();
    for (int i = 0; i < 1000; ++i) {
      auto a = gen::table_aiu(rng, gen::table(rng, 8, 30));
      auto d = gen::device(rng);
      AdaptationDecision decision;
      try {
        decision = plan_aiu(a, d, t);
      } catch (const Error& e) {
        CHECK(e.code() == "NoColumnFits");
        continue;
      }
      auto m = measure_aiu(a);
      std::visit(
          [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, decision::Direct>) {
              if (!p.horizontal_scroll) CHECK(m.cn <= d.cn);
              if (p.horizontal_scroll) CHECK(horizontal_acceptable(degradation(m, d), t));
            } else if constexpr (std::is_same_v<P, decision::TwoStepTable>) {
              CHECK(columns_width(*a.table, indices_of(*a.table, p.overview_columns)) <= d.cn);
            }
          },
          decision.presentation);
      if (decision.pages) CHECK(*decision.pages == oracle::pages_by_counting(m.rn, d.rn));
    }
  }

  TEST_CASE("degenerate device") {
    DeviceProfile d;
    d.rn = 1;
    d.cn = 1;
    auto plan = plan_service(fixtures::spec("minimal"), d, default_thresholds());
    for (const auto& [id, decision] : plan.per_node) {
      CAPTURE(id);
      CHECK(decision.kind() == Kind::Reject);
    }
  }

  TEST_CASE("planning is deterministic") {
    auto spec = fixtures::hotel();
    for (const auto& d : {fixtures::handheld(), fixtures::desktop(), fixtures::tiny()}) {
      auto a = plan_service(spec, d, default_thresholds());
      auto b = plan_service(spec, d, default_thresholds());
      CHECK(a == b);
      CHECK(serialize_plan(a) == serialize_plan(b));
    }
  }

  TEST_CASE("page commands") {
    auto spec = fixtures::hotel();
    AdaptationDecision two{decision::TwoStepTable{{"hotel-name"}}, 3};
    auto commands = page_commands(fixtures::aiu(spec, "Interact_Hotels"), two);
    CHECK(commands.back() == CommandButton{"quit", "Quit"});
    CHECK(std::find(commands.begin(), commands.end(), CommandButton{"details", "details"}) !=
          commands.end());
    auto confirm = page_commands(fixtures::aiu(spec, "Confirm"), AdaptationDecision{});
    CHECK(confirm == std::vector<CommandButton>{{"ok", "OK"}, {"quit", "Quit"}});
  }

  TEST_CASE("plan document") {
    auto plan = plan_service(fixtures::hotel(), fixtures::handheld(), default_thresholds());
    auto text = serialize_plan(plan);
    CHECK(text.find("\"kind\": \"TwoStepTable\"") != std::string::npos);
    CHECK(text.find("\"overviewColumns\"") != std::string::npos);
    CHECK(text.find("\"layout\": \"Merged\"") != std::string::npos);
  }
}
