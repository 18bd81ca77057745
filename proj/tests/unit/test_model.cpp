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

#include "aiuflow/model.hpp"
#include "generators.hpp"

using namespace aiuflow;

TEST_SUITE("model") {
  TEST_CASE("kind names round trip") {
    for (auto kind : kAllAiuKinds) {
      CHECK(aiu_kind_from_string(to_string(kind)) == kind);
    }
    CHECK_FALSE(aiu_kind_from_string("BrowseVideo"));
    CHECK_FALSE(aiu_kind_from_string("browsetable"));
  }

  TEST_CASE("legal outcomes follow the return contracts") {
    using T = OutcomeTag;
    const std::map<AiuKind, std::set<OutcomeTag>> expected = {
        {AiuKind::BrowseImage, {T::Null, T::Command}},
        {AiuKind::BrowseText, {T::Null, T::Command}},
        {AiuKind::BrowseTable, {T::Null, T::Command}},
        {AiuKind::InteractImage, {T::Null, T::Command, T::Point}},
        {AiuKind::InteractTable, {T::Null, T::Command, T::TupleSelected}},
        {AiuKind::BrowseMessage, {T::Null, T::Ok}},
        {AiuKind::FillList, {T::Null, T::FilledFields}},
        {AiuKind::SelectChoice, {T::Null, T::ChoiceSelected}},
        {AiuKind::SelectMultipleChoice, {T::Null, T::ChoicesSelected}},
    };
    for (auto kind : kAllAiuKinds) {
      CAPTURE(to_string(kind));
      CHECK(legal_outcomes(kind) == expected.at(kind));
      CHECK(legal_outcomes(kind).count(T::Null) == 1);
    }
  }

  TEST_CASE("outcome tags and keys") {
    CHECK(tag_of(outcome::Quit{}) == OutcomeTag::Null);
    CHECK(tag_of(outcome::ChoicesSelected{{"a"}}) == OutcomeTag::ChoicesSelected);
    CHECK(key_of(outcome::Command{"zoom-in"}) == "zoom-in");
    CHECK(key_of(outcome::ChoiceSelected{"rome"}) == "rome");
    CHECK(key_of(outcome::TupleSelected{3}).empty());
    for (int i = 0; i <= static_cast<int>(OutcomeTag::GuardFalse); ++i) {
      auto tag = static_cast<OutcomeTag>(i);
      CHECK(outcome_tag_from_string(to_string(tag)) == tag);
      CHECK(is_aiu_outcome(tag) == (i < static_cast<int>(OutcomeTag::Completion)));
    }
  }

  TEST_CASE("dates are validated against the calendar") {
    auto is_leap = [](int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; };
    for (int year : {1900, 2000, 2023, 2024, 2100}) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%04d-02-29", year);
      CAPTURE(year);
      CHECK(parse_value(ValueType::Date, buf).has_value() == is_leap(year));
    }
    CHECK(parse_value(ValueType::Date, "2026-04-30"));
    CHECK_FALSE(parse_value(ValueType::Date, "2026-04-31"));
    CHECK_FALSE(parse_value(ValueType::Date, "2026-13-01"));
    CHECK_FALSE(parse_value(ValueType::Date, "2026-1-01"));
    CHECK_FALSE(parse_value(ValueType::Date, "26-01-01x"));
    CHECK(format_value(*parse_value(ValueType::Date, "0999-01-09")) == "0999-01-09");
  }

  TEST_CASE("integers are whole decimal numbers") {
    CHECK(std::get<std::int64_t>(*parse_value(ValueType::Integer, "-42")) == -42);
    CHECK_FALSE(parse_value(ValueType::Integer, ""));
    CHECK_FALSE(parse_value(ValueType::Integer, "4 2"));
    CHECK_FALSE(parse_value(ValueType::Integer, "12a"));
    CHECK_FALSE(parse_value(ValueType::Integer, "99999999999999999999"));
  }

  TEST_CASE("value round trip through text") {
    gen::Rng rng(7);
    for (int i = 0; i < 300; ++i) {
      Value v;
      switch (i % 3) {
        case 0: v = gen::text(rng, gen::uniform(rng, 0, 10)); break;
        case 1: v = static_cast<std::int64_t>(gen::uniform(rng, -100000, 100000)); break;
        default: v = Date{gen::uniform(rng, 1, 9999), gen::uniform(rng, 1, 12), gen::uniform(rng, 1, 28)};
      }
      auto back = parse_value(type_of(v), format_value(v));
      REQUIRE(back);
      CHECK(*back == v);
    }
  }

  TEST_CASE("templates") {
    CHECK(template_variables("Hi ${name}, ${city}!") == std::vector<std::string>{"name", "city"});
    CHECK(template_variables("no refs $name {x}").empty());
    Env env{{"name", Value{std::string("Ada")}}, {"n", Value{std::int64_t{3}}}};
    CHECK(expand_template("Hi ${name} x${n} ${missing}", env) == "Hi Ada x3 ${missing}");
    CHECK(expand_template("${name", env) == "${name");
  }

  TEST_CASE("selector types follow the outcome payload") {
    AiuInstance table;
    table.kind = AiuKind::InteractTable;
    table.table = TableContent{{{"hotel-name", "Hotel", 0, std::nullopt}}, {}};
    CHECK(selector_type(table, OutcomeTag::TupleSelected, "row") == ValueType::Integer);
    CHECK(selector_type(table, OutcomeTag::TupleSelected, "cell.hotel-name") == ValueType::Text);
    CHECK_FALSE(selector_type(table, OutcomeTag::TupleSelected, "cell.price"));
    CHECK_FALSE(selector_type(table, OutcomeTag::Command, "row"));

    AiuInstance form;
    form.kind = AiuKind::FillList;
    form.fields = std::vector<FieldDecl>{{"day", "Day", ValueType::Date, true}};
    CHECK(selector_type(form, OutcomeTag::FilledFields, "field.day") == ValueType::Date);
    CHECK_FALSE(selector_type(form, OutcomeTag::FilledFields, "field.night"));
  }

  TEST_CASE("kind families partition the catalogue") {
    for (auto kind : kAllAiuKinds) {
      int families = is_image_kind(kind) + is_text_kind(kind) + is_table_kind(kind) +
                     is_list_kind(kind);
      CHECK(families == 1);
    }
    CHECK(has_browsing_commands(AiuKind::BrowseText));
    CHECK_FALSE(has_browsing_commands(AiuKind::BrowseMessage));
    CHECK_FALSE(has_browsing_commands(AiuKind::FillList));
  }
}
