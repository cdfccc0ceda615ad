// Copyright 2026 The mprefs Authors
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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "mprefs/experiments.hpp"

namespace mprefs {
namespace {

TEST(Scan, TwoByTwoHasOneFeasibleRecord) {
  std::ostringstream out;
  const auto summary = scan(2, 2, out);
  EXPECT_EQ(summary.total, 1u);
  EXPECT_EQ(summary.feasible, 1u);
  std::istringstream in(out.str());
  const auto records = load_records(in);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records.at(0).verdict, RecognitionVerdict::kFeasible);
  EXPECT_EQ(records.at(0).profile, parse_profile("2 2\n1 2\n2 1"));
}

TEST(Scan, ThreeByThreeTotalsAndWitnesses) {
  std::ostringstream out;
  ScanOptions options;
  options.store_witnesses = true;
  const auto summary = scan(3, 3, out, options);
  EXPECT_EQ(summary.total, 10u);
  EXPECT_EQ(summary.solved, 10u);
  EXPECT_EQ(summary.feasible, 10u);
  EXPECT_EQ(summary.witness_failures, 0u);
  std::istringstream in(out.str());
  const auto records = load_records(in);
  ASSERT_EQ(records.size(), 10u);
  const auto check = verify_records(records);
  EXPECT_EQ(check.witnesses, 10u);
  EXPECT_EQ(check.witness_failures, 0u);
  const CanonicalProfiles space(3, 3);
  for (const auto& [index, rec] : records) EXPECT_EQ(rec.profile, space.at(index));
}

TEST(Scan, ResumptionSkipsCompletedIndices) {
  std::ostringstream first;
  ScanOptions options;
  options.begin = 0;
  options.end = 9;
  scan(3, 4, first, options);
  std::istringstream in(first.str());
  ScanOptions resume;
  for (const auto& [index, rec] : load_records(in)) resume.completed.insert(index);
  resume.end = 20;
  std::ostringstream second;
  const auto summary = scan(3, 4, second, resume);
  EXPECT_EQ(summary.total, 20u);
  EXPECT_EQ(summary.skipped, 9u);
  EXPECT_EQ(summary.solved, 11u);
  std::istringstream merged(first.str() + second.str());
  const auto records = load_records(merged);
  EXPECT_EQ(records.size(), 20u);
  std::istringstream only_second(second.str());
  for (const auto& [index, rec] : load_records(only_second)) EXPECT_GE(index, 9u);
}

TEST(Scan, ThreadedShardsMatchSequential) {
  ScanOptions seq;
  seq.end = 40;
  ScanOptions par = seq;
  par.threads = 3;
  std::ostringstream a, b;
  scan(3, 4, a, seq);
  scan(3, 4, b, par);
  std::istringstream ia(a.str()), ib(b.str());
  const auto ra = load_records(ia), rb = load_records(ib);
  ASSERT_EQ(ra.size(), rb.size());
  for (const auto& [index, rec] : ra) {
    EXPECT_EQ(rb.at(index).verdict, rec.verdict);
    EXPECT_EQ(rb.at(index).nodes, rec.nodes);
  }
}

TEST(Records, RoundTripAndMalformedLines) {
  ScanRecord r;
  r.index = 42;
  r.verdict = RecognitionVerdict::kFeasible;
  r.method = "search";
  r.nodes = 7;
  r.profile = parse_profile("2 3\n1 2 3\n3 1 2");
  r.witness = parse_embedding("2 2 3\n0 0\n1/2 3\n1 0\n2 0\n0 5\n");
  const std::string line = to_json(r).dump();
  std::istringstream in(line + "\n{not json\n{\"index\": 3}\n" + line.substr(0, 20));
  const auto records = load_records(in);
  ASSERT_EQ(records.size(), 1u);
  const auto& back = records.at(42);
  EXPECT_EQ(back.profile, r.profile);
  EXPECT_EQ(back.witness, r.witness);
  EXPECT_EQ(back.nodes, 7u);
  EXPECT_EQ(back.method, "search");
}

TEST(Records, TamperedWitnessIsDetected) {
  std::ostringstream out;
  ScanOptions options;
  options.store_witnesses = true;
  scan(2, 3, out, options);
  std::istringstream in(out.str());
  auto records = load_records(in);
  ASSERT_FALSE(records.empty());
  auto& rec = records.begin()->second;
  ASSERT_TRUE(rec.witness);
  rec.witness->alternatives[0] = rec.witness->voters[0];
  rec.witness->alternatives[1] = rec.witness->voters[0];
  EXPECT_EQ(verify_records(records).witness_failures, 1u);
}

FrontierOptions small_frontier() {
  FrontierOptions o;
  o.samples = 3;
  o.exhaustive_limit = 4;
  return o;
}

TEST(Frontier, StubbedFeasibleRecognizerFailsCounterexampleCells) {
  FrontierOptions o = small_frontier();
  o.recognizer = [](const PreferenceProfile&) {
    RecognitionOutcome out;
    out.verdict = RecognitionVerdict::kFeasible;
    return out;
  };
  const auto report = frontier_check(o);
  EXPECT_FALSE(report.pass());
  int failed_counterexamples = 0;
  for (const auto& cell : report.cells) {
    if (cell.expected == "infeasible") {
      EXPECT_FALSE(cell.pass) << cell.name;
      ++failed_counterexamples;
    }
  }
  EXPECT_EQ(failed_counterexamples, 3);
}

TEST(Frontier, MissingExpectationIsRecomputed) {
  auto p = fixtures::three_voters_six_alternatives().orders();
  std::swap(p[0][0], p[0][1]);
  const PreferenceProfile mutated(6, p);
  FrontierOptions o = small_frontier();
  o.fixtures = {{"mutated", {mutated}, std::nullopt}};
  const auto report = frontier_check(o);
  const auto& cell = report.cells.back();
  EXPECT_EQ(cell.name, "mutated");
  EXPECT_EQ(cell.expected, std::string(to_string(recognize_2d(mutated).verdict)));
  EXPECT_TRUE(cell.pass);
  EXPECT_TRUE(report.pass());
}

TEST(Frontier, ReportSerializesEveryCell) {
  FrontierOptions o = small_frontier();
  o.fixtures = {{"n3-m6 counterexample", {fixtures::three_voters_six_alternatives()},
                 RecognitionVerdict::kInfeasible}};
  const auto report = frontier_check(o);
  const auto j = to_json(report);
  EXPECT_EQ(j.at("cells").size(), report.cells.size());
  EXPECT_EQ(report.cells.size(), 6u + 6u + 2u + 1u);
  EXPECT_TRUE(j.at("pass").get<bool>());
}

}  // namespace
}  // namespace mprefs
