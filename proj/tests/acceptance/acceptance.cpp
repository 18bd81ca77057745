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

// Acceptance suite: one line per criterion, non-zero exit on any failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "aiuflow/adapt.hpp"
#include "aiuflow/engine.hpp"
#include "aiuflow/errors.hpp"
#include "aiuflow/render.hpp"
#include "aiuflow/spec_io.hpp"
#include "aiuflow/validate.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace aiuflow;

namespace {

// Collects the first few failure details of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) details_ += (details_.empty() ? "" : "; ") + what;
  }
  int failures() const { return failures_; }
  const std::string& details() const { return details_; }

 private:
  int failures_ = 0;
  std::string details_;
};

template <typename T>
std::string str(const T& v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

std::string join(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out + "]";
}

void worked_example(Check& c) {
  auto spec = fixtures::hotel();
  const auto& aiu = fixtures::aiu(spec, "Interact_Hotels");
  auto d = fixtures::handheld();
  auto m = measure_aiu(aiu);
  c.expect(m.rn == 40, "table rn " + str(m.rn) + " != 40");
  c.expect(m.cn == 105, "table cn " + str(m.cn) + " != 105");
  auto r = degradation(m, d);
  c.expect(r.vertical_row_scrolls == 40, "row scrolls != 40");
  c.expect(r.vertical_page_scrolls == 3, "page scrolls != 3");
  auto decision = plan_aiu(aiu, d, default_thresholds());
  const auto* two = std::get_if<decision::TwoStepTable>(&decision.presentation);
  c.expect(two != nullptr, "decision is " + std::string(to_string(decision.kind())));
  if (two) {
    c.expect(two->overview_columns == std::vector<std::string>{"hotel-name", "hotel-price"},
             "overview " + join(two->overview_columns));
    c.expect(two->detail_command == "details", "detail command " + two->detail_command);
  }
}

void walkthrough(Check& c) {
  auto spec = fixtures::shared_spec("hotel");
  c.expect(validate_spec(*spec).empty(), "hotel does not validate clean");
  const Outcome period = outcome::FilledFields{
      {{"check_in", "2026-05-01"}, {"check_out", "2026-05-04"}, {"guests", "2"}}};
  const Outcome customer = outcome::FilledFields{
      {{"full_name", "Ada Lovelace"}, {"email", "ada@example.org"}, {"age", "36"}}};
  auto run = [&](bool city_first, bool customer_first) {
    auto s = start_session(spec, fixtures::handheld(), default_thresholds());
    if (city_first) {
      s = submit(s, "Select_City", outcome::ChoiceSelected{"rome"});
      s = submit(s, "Fill_Period", period);
    } else {
      s = submit(s, "Fill_Period", period);
      s = submit(s, "Select_City", outcome::ChoiceSelected{"rome"});
    }
    s = submit(s, "Interact_Hotels", outcome::TupleSelected{4});
    s = submit(s, "Select_Action", outcome::ChoiceSelected{"reserve"});
    if (customer_first) {
      s = submit(s, "Fill_Customer_Data", customer);
      s = submit(s, "Select_Payment_Type", outcome::ChoiceSelected{"card"});
    } else {
      s = submit(s, "Select_Payment_Type", outcome::ChoiceSelected{"card"});
      s = submit(s, "Fill_Customer_Data", customer);
    }
    auto joined = s;
    s = submit(s, "Confirm", outcome::Ok{});
    return std::make_pair(joined, s);
  };
  auto [joined_a, done_a] = run(true, true);
  c.expect(done_a.status == SessionStatus::Finished, "session did not finish");
  for (const auto& [name, type] : spec->variables) {
    c.expect(done_a.env.count(name) == 1, "variable " + name + " unbound at the end");
  }
  for (auto [city_first, customer_first] : {std::pair{false, true}, {true, false}, {false, false}}) {
    auto [joined_b, done_b] = run(city_first, customer_first);
    c.expect(joined_a.active == joined_b.active && joined_a.env == joined_b.env &&
                 joined_a.completed_branches == joined_b.completed_branches,
             "post-join state differs by branch order");
    c.expect(done_a.env == done_b.env && done_b.status == SessionStatus::Finished,
             "final state differs by branch order");
  }
}

void hard_bounds(Check& c) {
  gen::Rng rng(20260115);
  int pairs = 0;
  for (int attempt = 0; attempt < 10000 && pairs < 1000; ++attempt) {
    auto aiu = gen::table_aiu(rng, gen::table(rng, 10, 60));
    auto d = gen::device(rng);
    AdaptationDecision decision;
    std::vector<ConcretePage> pages;
    try {
      decision = plan_aiu(aiu, d, default_thresholds());
      Node node{"table", NodeKind::Activity, aiu, std::nullopt};
      pages = render_pages(node, decision, d);
    } catch (const Error& e) {
      // No page is emitted for these; the pair does not count.
      c.expect(e.code() == "NoColumnFits" || e.code() == "LayoutError", "error " + e.code());
      continue;
    }
    ++pairs;
    std::vector<std::size_t> seen;
    for (const auto& p : pages) {
      std::istringstream text(emit_text(p));
      int lines = 0;
      for (std::string line; std::getline(text, line);) {
        ++lines;
        c.expect(oracle::cells(line) <= d.cn, "line of " + str(oracle::cells(line)) +
                                                  " cells on a " + str(d.cn) + "-column device");
      }
      c.expect(lines <= d.rn, str(lines) + " lines on a " + str(d.rn) + "-row device");
      for (const auto& w : p.widgets) {
        if (const auto* t = std::get_if<widget::Table>(&w.body)) {
          seen.insert(seen.end(), t->row_indices.begin(), t->row_indices.end());
        }
      }
    }
    if (decision.kind() != AdaptationDecision::Kind::Reject) {
      std::vector<std::size_t> all(aiu.table->rows.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      c.expect(seen == all, "pages do not reproduce the projected rows");
    }
  }
  c.expect(pairs >= 1000, "only " + str(pairs) + " pairs rendered");
}

void column_oracle(Check& c) {
  gen::Rng rng(7);
  int compared = 0;
  for (int attempt = 0; attempt < 5000 && compared < 600; ++attempt) {
    auto t = gen::table(rng, 10, 5);
    int budget = gen::uniform(rng, 1, 120);
    auto expected = oracle::best_columns(t, budget);
    if (!expected) continue;
    ++compared;
    auto got = select_overview_columns(t, budget);
    c.expect(got == *expected, "budget " + str(budget) + ": " + join(got) + " vs " + join(*expected));
  }
  c.expect(compared >= 500, "only " + str(compared) + " tables compared");
}

void mutations(Check& c) {
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"unmatched_fork", "UnmatchedFork"},
      {"unhandled_outcome", "UnhandledOutcome"},
      {"unreachable_node", "UnreachableNode"},
      {"unbound_variable", "UnboundVariable"},
      {"duplicate_id", "DuplicateId"},
      {"non_self_browsing_command", "NonSelfBrowsingCommand"},
      {"missing_start", "MissingStart"},
      {"dangling_transition", "DanglingTransition"},
      {"missing_final", "MissingFinal"},
      {"no_path_to_final", "NoPathToFinal"},
  };
  for (const auto& [file, code] : expected) {
    auto source = read_text_file(fixtures::data_path("specs/mutations/" + file + ".aiu.json"));
    std::vector<std::string> codes;
    for (const auto& d : diagnose_source(source)) codes.push_back(d.code);
    c.expect(codes == std::vector<std::string>{code}, file + " gave " + join(codes));
  }
}

void replay_determinism(Check& c) {
  gen::Rng rng(100);
  auto spec = fixtures::shared_spec("hotel");
  const std::vector<DeviceProfile> devices{fixtures::handheld(), fixtures::desktop(),
                                           fixtures::tiny()};
  for (int i = 0; i < 100; ++i) {
    const auto& d = devices[static_cast<std::size_t>(i) % devices.size()];
    auto id = "replay-" + std::to_string(i);
    auto s = start_session(spec, d, default_thresholds(), id);
    s = gen::random_walk(rng, s, gen::uniform(rng, 1, 60));
    auto again = replay(spec, d, default_thresholds(), s.history, id);
    c.expect(serialize_session(again) == serialize_session(s), id + " diverged on replay");
  }
}

void desktop_plan(Check& c) {
  auto plan = plan_service(fixtures::hotel(), fixtures::desktop(), default_thresholds());
  for (const auto& [id, d] : plan.per_node) {
    c.expect(d.kind() == AdaptationDecision::Kind::Direct,
             id + " is " + std::string(to_string(d.kind())));
  }
  c.expect(plan.per_fork.at("search_fork").kind == ForkLayoutKind::Merged,
           "search_fork is not Merged");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"worked-example: hotel table on the handheld", worked_example},
      {"walkthrough: hotel flow end to end, both fork orders", walkthrough},
      {"hard-bounds: 1000 random (table, device) pairs", hard_bounds},
      {"column-oracle: greedy equals brute force on 500+ tables", column_oracle},
      {"mutations: each fixture yields its diagnostic", mutations},
      {"replay: 100 random sessions reproduce byte-equal state", replay_determinism},
      {"desktop-plan: all Direct, search fork Merged", desktop_plan},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check check;
    auto begin = std::chrono::steady_clock::now();
    try {
      run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("threw: ") + e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - begin)
                  .count();
    bool ok = check.failures() == 0;
    failed += !ok;
    std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << ms << " ms)";
    if (!ok) std::cout << ": " << check.failures() << " violation(s): " << check.details();
    std::cout << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
