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

#include <functional>

#include "aiuflow/engine.hpp"
#include "aiuflow/errors.hpp"
#include "aiuflow/spec_io.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace aiuflow;

namespace {

using Active = std::set<std::string>;

const outcome::FilledFields kPeriod{
    {{"check_in", "2026-05-01"}, {"check_out", "2026-05-04"}, {"guests", "2"}}};
const outcome::FilledFields kCustomer{
    {{"full_name", "Ada Lovelace"}, {"email", "ada@example.org"}, {"age", "36"}}};

Session start(const DeviceProfile& d = fixtures::handheld()) {
  return start_session(fixtures::shared_spec("hotel"), d, default_thresholds());
}

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "none";
}

// Search fork done, hotel chosen, reservation fork open.
Session at_reservation() {
  auto s = start();
  s = submit(s, "Select_City", outcome::ChoiceSelected{"rome"});
  s = submit(s, "Fill_Period", kPeriod);
  s = submit(s, "Interact_Hotels", outcome::TupleSelected{4});
  return submit(s, "Select_Action", outcome::ChoiceSelected{"reserve"});
}

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("walkthrough to the final state") {
    auto s = start();
    CHECK(s.active == Active{"Select_City", "Fill_Period"});
    s = submit(s, "Select_City", outcome::ChoiceSelected{"rome"});
    CHECK(s.active == Active{"Fill_Period"});
    CHECK(s.completed_branches.at("search_join").size() == 1);
    s = submit(s, "Fill_Period", kPeriod);
    CHECK(s.active == Active{"Interact_Hotels"});
    CHECK(s.completed_branches.empty());
    s = submit(s, "Interact_Hotels", outcome::TupleSelected{4});
    CHECK(s.active == Active{"Select_Action"});
    s = submit(s, "Select_Action", outcome::ChoiceSelected{"reserve"});
    CHECK(s.active == Active{"Fill_Customer_Data", "Select_Payment_Type"});
    s = submit(s, "Select_Payment_Type", outcome::ChoiceSelected{"card"});
    s = submit(s, "Fill_Customer_Data", kCustomer);
    CHECK(s.active == Active{"Confirm"});
    s = submit(s, "Confirm", outcome::Ok{});
    CHECK(s.status == SessionStatus::Finished);
    CHECK(s.active.empty());

    const auto& table = *fixtures::aiu(*s.spec, "Interact_Hotels").table;
    CHECK(s.env.at("city") == Value{std::string("rome")});
    CHECK(s.env.at("check_in") == Value{Date{2026, 5, 1}});
    CHECK(s.env.at("guests") == Value{std::int64_t{2}});
    CHECK(s.env.at("hotel_row") == Value{std::int64_t{4}});
    CHECK(s.env.at("hotel_name") == Value{table.rows[4][0]});
    CHECK(s.env.at("action") == Value{std::string("reserve")});
    CHECK(s.env.at("customer_age") == Value{std::int64_t{36}});
    CHECK(s.env.at("payment") == Value{std::string("Credit card")});
    CHECK(s.env.size() == s.spec->variables.size());
    CHECK(s.history.size() == 7);
  }

  TEST_CASE("fork branch order does not change the joined state") {
    auto a = start();
    a = submit(a, "Select_City", outcome::ChoiceSelected{"milan"});
    a = submit(a, "Fill_Period", kPeriod);
    auto b = start();
    b = submit(b, "Fill_Period", kPeriod);
    b = submit(b, "Select_City", outcome::ChoiceSelected{"milan"});
    CHECK(a.active == b.active);
    CHECK(a.env == b.env);
    CHECK(a.completed_branches == b.completed_branches);

    auto c = at_reservation();
    auto d = c;
    c = submit(submit(c, "Fill_Customer_Data", kCustomer), "Select_Payment_Type",
               outcome::ChoiceSelected{"cash"});
    d = submit(submit(d, "Select_Payment_Type", outcome::ChoiceSelected{"cash"}),
               "Fill_Customer_Data", kCustomer);
    CHECK(c.active == d.active);
    CHECK(c.env == d.env);
  }

  TEST_CASE("the guard sends minors back to the reservation fork") {
    auto s = at_reservation();
    auto young = kCustomer;
    young.values["age"] = "15";
    s = submit(s, "Fill_Customer_Data", young);
    s = submit(s, "Select_Payment_Type", outcome::ChoiceSelected{"card"});
    CHECK(s.active == Active{"Fill_Customer_Data", "Select_Payment_Type"});
    CHECK(s.completed_branches.empty());
  }

  TEST_CASE("a new search re-enters the search fork") {
    auto s = start();
    s = submit(s, "Select_City", outcome::ChoiceSelected{"rome"});
    s = submit(s, "Fill_Period", kPeriod);
    s = submit(s, "Interact_Hotels", outcome::TupleSelected{0});
    s = submit(s, "Select_Action", outcome::ChoiceSelected{"new_search"});
    CHECK(s.active == Active{"Select_City", "Fill_Period"});
    CHECK(s.env.at("city") == Value{std::string("rome")});
    s = submit(s, "Select_City", outcome::ChoiceSelected{"venice"});
    s = submit(s, "Fill_Period", kPeriod);
    CHECK(s.env.at("city") == Value{std::string("venice")});
    CHECK(s.active == Active{"Interact_Hotels"});
  }

  TEST_CASE("quit inside a fork branch restarts the branch set") {
    auto s = start();
    s = submit(s, "Select_City", outcome::ChoiceSelected{"rome"});
    s = submit(s, "Fill_Period", outcome::Quit{});
    CHECK(s.active == Active{"Select_City", "Fill_Period"});
    CHECK(s.completed_branches.empty());
  }

  TEST_CASE("quit without an explicit edge goes back") {
    auto s = start();
    s = submit(s, "Select_City", outcome::ChoiceSelected{"rome"});
    s = submit(s, "Fill_Period", kPeriod);
    // Last completed activity sits in the search fork: back to the fork.
    auto back = submit(s, "Interact_Hotels", outcome::Quit{});
    CHECK(back.active == Active{"Select_City", "Fill_Period"});

    s = submit(s, "Interact_Hotels", outcome::TupleSelected{1});
    s = submit(s, "Select_Action", outcome::ChoiceSelected{"reserve"});
    s = submit(s, "Select_Payment_Type", outcome::ChoiceSelected{"card"});
    s = submit(s, "Fill_Customer_Data", kCustomer);
    REQUIRE(s.active == Active{"Confirm"});
    auto quit = submit(s, "Confirm", outcome::Quit{});
    CHECK(quit.active == Active{"Fill_Customer_Data", "Select_Payment_Type"});
  }

  TEST_CASE("quit with no earlier activity restarts the service") {
    auto spec = std::make_shared<const ServiceSpec>(fixtures::spec("minimal"));
    auto s = start_session(spec, fixtures::desktop(), default_thresholds());
    REQUIRE(s.active.size() == 1);
    auto node = *s.active.begin();
    auto again = submit(s, node, outcome::Quit{});
    CHECK(again.active == s.active);
    CHECK(again.history.size() == 1);
  }

  TEST_CASE("browsing commands keep the node active") {
    auto spec = fixtures::shared_spec("all-kinds");
    auto s = start_session(spec, fixtures::desktop(), default_thresholds());
    REQUIRE(s.active == Active{"Show_Map"});
    auto zoomed = submit(s, "Show_Map", outcome::Command{"zoom-in"});
    CHECK(zoomed.active == Active{"Show_Map"});
    CHECK(zoomed.env == s.env);
    CHECK(zoomed.history.size() == 1);
  }

  TEST_CASE("rejections") {
    auto s = start();
    CHECK(error_code([&] { submit(s, "Confirm", outcome::Ok{}); }) == "NotActive");
    CHECK(error_code([&] { submit(s, "Select_City", outcome::ChoiceSelected{"paris"}); }) ==
          "IllegalOutcome");
    CHECK(error_code([&] { submit(s, "Select_City", outcome::Ok{}); }) == "IllegalOutcome");
    CHECK(error_code([&] {
            submit(s, "Fill_Period", outcome::FilledFields{{{"check_in", "2026-02-30"},
                                                            {"check_out", "2026-03-01"},
                                                            {"guests", "2"}}});
          }) == "FieldValidationError");
    CHECK(error_code([&] {
            submit(s, "Fill_Period", outcome::FilledFields{{{"check_in", "2026-02-01"}}});
          }) == "FieldValidationError");
    CHECK(error_code([&] {
            submit(s, "Fill_Period", outcome::FilledFields{{{"check_in", "2026-02-01"},
                                                            {"check_out", "2026-03-01"},
                                                            {"guests", "2"},
                                                            {"pets", "1"}}});
          }) == "FieldValidationError");
    s = submit(s, "Select_City", outcome::ChoiceSelected{"rome"});
    s = submit(s, "Fill_Period", kPeriod);
    CHECK(error_code([&] { submit(s, "Interact_Hotels", outcome::TupleSelected{39}); }) ==
          "IllegalOutcome");
    CHECK(error_code([&] { submit(s, "Interact_Hotels", outcome::Command{"sort"}); }) ==
          "IllegalOutcome");

    auto spec = std::make_shared<const ServiceSpec>(fixtures::spec("minimal"));
    auto m = start_session(spec, fixtures::desktop(), default_thresholds());
    auto done = submit(m, *m.active.begin(), outcome::Ok{});
    REQUIRE(done.status == SessionStatus::Finished);
    CHECK(error_code([&] { submit(done, "Hello", outcome::Ok{}); }) == "SessionFinished");
    CHECK(error_code([&] { current_views(done); }) == "SessionFinished");
  }

  TEST_CASE("rejected submissions leave the session untouched") {
    auto s = start();
    auto before = serialize_session(s);
    CHECK_THROWS(submit(s, "Select_City", outcome::ChoiceSelected{"paris"}));
    CHECK(serialize_session(s) == before);
  }

  TEST_CASE("invalid specs do not start") {
    auto spec = std::make_shared<const ServiceSpec>(
        load_spec_file(fixtures::data_path("specs/mutations/unreachable_node.aiu.json")));
    CHECK(error_code([&] { start_session(spec, fixtures::desktop(), default_thresholds()); }) ==
          "ValidationFailed");
  }

  TEST_CASE("quit is accepted from every reachable state") {
    gen::Rng rng(17);
    auto spec = fixtures::shared_spec("hotel");
    for (int i = 0; i < 100; ++i) {
      auto s = gen::random_walk(rng, start(), gen::uniform(rng, 0, 25));
      if (s.status == SessionStatus::Finished) continue;
      for (const auto& node : s.active) {
        CAPTURE(node);
        auto next = submit(s, node, outcome::Quit{});
        CHECK(next.status == SessionStatus::Running);
        CHECK_FALSE(next.active.empty());
      }
    }
  }

  TEST_CASE("replay reproduces the session") {
    gen::Rng rng(23);
    for (const char* name : {"hotel", "all-kinds"}) {
      auto spec = fixtures::shared_spec(name);
      for (int i = 0; i < 30; ++i) {
        auto s = start_session(spec, fixtures::handheld(), default_thresholds(), "r");
        s = gen::random_walk(rng, s, gen::uniform(rng, 1, 40));
        auto again = replay(spec, fixtures::handheld(), default_thresholds(), s.history, "r");
        CHECK(serialize_session(again) == serialize_session(s));
      }
    }
  }

  TEST_CASE("views follow the fork layout") {
    SUBCASE("desktop merges the search fork") {
      auto views = current_views(start(fixtures::desktop()));
      REQUIRE(views.size() == 1);
      CHECK(views[0].nodes == std::vector<std::string>{"Select_City", "Fill_Period"});
    }
    SUBCASE("tiny phone shows one branch at a time") {
      auto s = start(fixtures::tiny());
      auto views = current_views(s);
      REQUIRE(views.size() == 1);
      CHECK(views[0].nodes == std::vector<std::string>{"Select_City"});
      s = submit(s, "Select_City", outcome::ChoiceSelected{"rome"});
      views = current_views(s);
      REQUIRE(views.size() == 1);
      CHECK(views[0].nodes == std::vector<std::string>{"Fill_Period"});
      // Branches may still be answered out of display order.
      auto other = submit(start(fixtures::tiny()), "Fill_Period", kPeriod);
      CHECK(other.active == Active{"Select_City"});
    }
    SUBCASE("pages of a view respect the device") {
      auto s = start(fixtures::tiny());
      for (const auto& view : current_views(s)) {
        for (const auto& p : view.pages) {
          CHECK(p.rows == 6);
          CHECK(p.columns == 24);
        }
      }
    }
  }

  TEST_CASE("detail pages need an active table") {
    auto s = start();
    CHECK(error_code([&] { session_detail(s, "Interact_Hotels", 0); }) == "NotActive");
    s = submit(s, "Select_City", outcome::ChoiceSelected{"rome"});
    s = submit(s, "Fill_Period", kPeriod);
    auto page = session_detail(s, "Interact_Hotels", 3);
    CHECK(page.node_id == "Interact_Hotels");
    CHECK(error_code([&] { session_detail(s, "Interact_Hotels", 100); }) == "RowOutOfRange");
  }

  TEST_CASE("session document") {
    auto s = submit(start(), "Select_City", outcome::ChoiceSelected{"rome"});
    auto text = serialize_session(s);
    CHECK(text.find("\"status\": \"running\"") != std::string::npos);
    CHECK(text.find("\"city\": \"rome\"") != std::string::npos);
    CHECK(text.find("\"search_join\": [") != std::string::npos);
  }

  TEST_CASE("join interleavings over random branch orders") {
    gen::Rng rng(29);
    for (int i = 0; i < 50; ++i) {
      auto s = at_reservation();
      std::vector<std::pair<std::string, Outcome>> steps{
          {"Fill_Customer_Data", kCustomer},
          {"Select_Payment_Type", outcome::ChoiceSelected{"transfer"}}};
      // Optional quits before completing, in random order.
      if (gen::coin(rng)) std::swap(steps[0], steps[1]);
      if (gen::coin(rng, 0.3)) {
        s = submit(s, steps[0].first, steps[0].second);
        s = submit(s, steps[1].first, outcome::Quit{});
        CHECK(s.active == Active{"Fill_Customer_Data", "Select_Payment_Type"});
      }
      for (const auto& [node, o] : steps) s = submit(s, node, o);
      CHECK(s.active == Active{"Confirm"});
      CHECK(s.env.at("payment") == Value{std::string("Bank transfer")});
    }
  }
}
