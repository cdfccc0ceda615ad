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

// Exhaustive scans over canonical profiles and the boundary table of
// 2-Manhattan embeddability.
//
// Scan records are JSON lines keyed by canonical index:
//   {"index": 17, "verdict": "feasible", "method": "search", "nodes": 9,
//    "prunes": 2, "millis": 14.2, "profile": [[1,2,3],[3,1,2],...],
//    "witness": {"voters": [["0","3"],...], "alternatives": [...]}}
// "witness" is present only for feasible records of scans run with
// store_witnesses.

#pragma once

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "mprefs/constructive.hpp"
#include "mprefs/geometry.hpp"
#include "mprefs/profile.hpp"
#include "mprefs/recognizer.hpp"

namespace mprefs {

struct ScanRecord {
  std::uint64_t index = 0;
  RecognitionVerdict verdict = RecognitionVerdict::kUndecided;
  std::string method;
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
  double millis = 0;
  PreferenceProfile profile;
  std::optional<Embedding> witness;
};

inline nlohmann::json points_to_json(const std::vector<Point>& pts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : pts) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : p) row.push_back(c.to_string());
    arr.push_back(std::move(row));
  }
  return arr;
}

inline std::vector<Point> points_from_json(const nlohmann::json& arr) {
  std::vector<Point> pts;
  for (const auto& row : arr) {
    Point p;
    for (const auto& c : row) p.push_back(Rational::parse(c.get<std::string>()));
    pts.push_back(std::move(p));
  }
  return pts;
}

inline nlohmann::json embedding_to_json(const Embedding& e) {
  return {{"dimension", e.dimension},
          {"voters", points_to_json(e.voters)},
          {"alternatives", points_to_json(e.alternatives)}};
}

inline Embedding embedding_from_json(const nlohmann::json& j) {
  Embedding e;
  e.dimension = j.at("dimension").get<int>();
  e.voters = points_from_json(j.at("voters"));
  e.alternatives = points_from_json(j.at("alternatives"));
  e.validate();
  return e;
}

inline RecognitionVerdict verdict_from_string(const std::string& s) {
  if (s == "feasible") return RecognitionVerdict::kFeasible;
  if (s == "infeasible") return RecognitionVerdict::kInfeasible;
  if (s == "undecided") return RecognitionVerdict::kUndecided;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

inline nlohmann::json to_json(const ScanRecord& r) {
  nlohmann::json j = {{"index", r.index},
                      {"verdict", std::string(to_string(r.verdict))},
                      {"method", r.method},
                      {"nodes", r.nodes},
                      {"prunes", r.prunes},
                      {"millis", r.millis},
                      {"profile", r.profile.orders()}};
  if (r.witness) j["witness"] = embedding_to_json(*r.witness);
  return j;
}

inline ScanRecord record_from_json(const nlohmann::json& j) {
  ScanRecord r;
  r.index = j.at("index").get<std::uint64_t>();
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.method = j.value("method", "");
  r.nodes = j.value("nodes", std::uint64_t{0});
  r.prunes = j.value("prunes", std::uint64_t{0});
  r.millis = j.value("millis", 0.0);
  const auto orders = j.at("profile").get<std::vector<std::vector<int>>>();
  if (orders.empty()) throw std::invalid_argument("record without profile rows");
  r.profile = PreferenceProfile(static_cast<int>(orders.front().size()), orders);
  if (j.contains("witness")) r.witness = embedding_from_json(j.at("witness"));
  return r;
}

// Records of a JSONL stream keyed by index; later lines win. Malformed
// lines (e.g. a truncated last line of an interrupted scan) are skipped.
inline std::map<std::uint64_t, ScanRecord> load_records(std::istream& in) {
  std::map<std::uint64_t, ScanRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto rec = record_from_json(nlohmann::json::parse(line));
      out.insert_or_assign(rec.index, std::move(rec));
    } catch (const std::exception&) {
      continue;
    }
  }
  return out;
}

struct ScanOptions {
  std::uint64_t begin = 0;
  std::uint64_t end = std::numeric_limits<std::uint64_t>::max();
  bool store_witnesses = false;
  unsigned threads = 1;
  RecognizerOptions recognizer;
  // Indices already present in the sink; they are not solved again.
  std::set<std::uint64_t> completed;
};

struct ScanSummary {
  std::uint64_t total = 0;  // indices in the shard
  std::uint64_t solved = 0;
  std::uint64_t skipped = 0;
  std::uint64_t feasible = 0;
  std::uint64_t infeasible = 0;
  std::uint64_t undecided = 0;
  std::uint64_t witness_failures = 0;
  double millis = 0;
};

// Runs recognize_2d over canonical profiles [begin, end) and writes one JSON
// line per solved profile to `out`. Threads share the shard by striding;
// lines are appended in completion order.
inline ScanSummary scan(int n, int m, std::ostream& out, const ScanOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  CanonicalProfiles space(n, m);
  const std::uint64_t begin = std::min(options.begin, space.size());
  const std::uint64_t end = std::min(options.end, space.size());
  ScanSummary summary;
  summary.total = end > begin ? end - begin : 0;
  std::mutex mu;
  std::atomic<std::uint64_t> next{begin};
  constexpr std::uint64_t kChunk = 16;

  auto worker = [&]() {
    while (true) {
      const std::uint64_t chunk_begin = next.fetch_add(kChunk);
      if (chunk_begin >= end) return;
      const std::uint64_t chunk_end = std::min(end, chunk_begin + kChunk);
      space.for_each(chunk_begin, chunk_end, [&](std::uint64_t index, const PreferenceProfile& p) {
        if (options.completed.count(index)) {
          std::lock_guard lock(mu);
          ++summary.skipped;
          return;
        }
        const auto outcome = recognize_2d(p, options.recognizer);
        ScanRecord rec;
        rec.index = index;
        rec.verdict = outcome.verdict;
        rec.method = outcome.method;
        rec.nodes = outcome.nodes;
        rec.prunes = outcome.prunes;
        rec.millis = outcome.millis;
        rec.profile = p;
        bool witness_ok = true;
        if (outcome.witness) {
          witness_ok = verify_embedding(p, *outcome.witness).consistent();
          if (options.store_witnesses) rec.witness = outcome.witness;
        }
        const std::string line = to_json(rec).dump();
        std::lock_guard lock(mu);
        out << line << '\n';
        ++summary.solved;
        summary.witness_failures += !witness_ok;
        switch (outcome.verdict) {
          case RecognitionVerdict::kFeasible: ++summary.feasible; break;
          case RecognitionVerdict::kInfeasible: ++summary.infeasible; break;
          case RecognitionVerdict::kUndecided: ++summary.undecided; break;
        }
      });
    }
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  out.flush();
  summary.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

struct RecordCheck {
  std::uint64_t records = 0;
  std::uint64_t witnesses = 0;
  std::uint64_t witness_failures = 0;
};

// Re-verifies every stored witness against its record's profile.
inline RecordCheck verify_records(const std::map<std::uint64_t, ScanRecord>& records) {
  RecordCheck check;
  for (const auto& [index, rec] : records) {
    ++check.records;
    if (!rec.witness) continue;
    ++check.witnesses;
    if (rec.verdict != RecognitionVerdict::kFeasible ||
        !verify_embedding(rec.profile, *rec.witness).consistent()) {
      ++check.witness_failures;
    }
  }
  return check;
}

// ---------------------------------------------------------------------------
// Boundary table.

inline PreferenceProfile random_profile(int n, int m, std::mt19937_64& rng) {
  std::vector<std::vector<int>> orders(n, std::vector<int>(m));
  for (auto& order : orders) {
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
  }
  return PreferenceProfile(m, std::move(orders));
}

// Fixture profiles from the literature on the 2-Manhattan boundary.
namespace fixtures {
inline PreferenceProfile example_two_voters() {  // two voters, five alternatives
  return parse_profile("2 5\n1 2 3 4 5\n5 4 3 1 2\n");
}
inline PreferenceProfile example_three_alternatives() {  // all six rankings of 3
  return parse_profile("6 3\n1 2 3\n1 3 2\n2 1 3\n2 3 1\n3 1 2\n3 2 1\n");
}
inline PreferenceProfile between_configuration() {
  return parse_profile("3 3\n1 2 3\n3 2 1\n3 2 1\n");
}
inline ProfileSpec exterior_configuration() {
  return parse_spec("3 4\n{1,2} 3 4\n{1,4} 3 2\n{2,4} 3 1\n");
}
inline PreferenceProfile three_voters_six_alternatives() {
  return parse_profile("3 6\n1 2 3 4 5 6\n1 4 6 3 5 2\n6 5 2 3 1 4\n");
}
inline ProfileSpec four_voters_five_alternatives() {
  return parse_spec("4 5\n{1,2} 3 4 5\n{1,2} 3 5 4\n1 4 5 3 2\n2 4 5 3 1\n");
}
inline ProfileSpec five_voters_four_alternatives() {
  return parse_spec("5 4\n1 2 3 4\n1 4 3 2\n{2,4} 3 1\n3 2 1 4\n3 4 1 2\n");
}
}  // namespace fixtures

using Recognizer = std::function<RecognitionOutcome(const PreferenceProfile&)>;

struct FrontierFixture {
  std::string name;
  std::vector<PreferenceProfile> profiles;
  // Expected verdict for every profile; when absent it is computed with the
  // reference recognizer (recognize_2d with default options).
  std::optional<RecognitionVerdict> expected;
};

struct FrontierOptions {
  Recognizer recognizer;  // defaults to recognize_2d
  std::vector<FrontierFixture> fixtures;  // defaults to the known counterexamples
  std::uint64_t samples = 20;             // random profiles per sampled cell
  std::uint64_t seed = 20220901;
  // Canonical profiles per exhaustive cell; unset scans everything.
  std::optional<std::uint64_t> exhaustive_limit;
};

struct FrontierCell {
  std::string name;
  std::string expected;
  std::uint64_t profiles = 0;
  std::uint64_t matches = 0;
  bool pass = false;
  std::string detail;
};

struct FrontierReport {
  std::vector<FrontierCell> cells;
  bool pass() const {
    return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.pass; });
  }
};

inline std::vector<FrontierFixture> default_frontier_fixtures() {
  return {
      {"n3-m6 counterexample", {fixtures::three_voters_six_alternatives()},
       RecognitionVerdict::kInfeasible},
      {"n4-m5 counterexamples", expand_spec(fixtures::four_voters_five_alternatives()),
       RecognitionVerdict::kInfeasible},
      {"n5-m4 counterexamples", expand_spec(fixtures::five_voters_four_alternatives()),
       RecognitionVerdict::kInfeasible},
  };
}

inline nlohmann::json to_json(const FrontierReport& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"cell", c.name},
                     {"expected", c.expected},
                     {"profiles", c.profiles},
                     {"matches", c.matches},
                     {"pass", c.pass},
                     {"detail", c.detail}});
  }
  return {{"pass", report.pass()}, {"cells", cells}};
}

inline FrontierReport frontier_check(FrontierOptions options = {}) {
  if (!options.recognizer) {
    options.recognizer = [](const PreferenceProfile& p) { return recognize_2d(p); };
  }
  if (options.fixtures.empty()) options.fixtures = default_frontier_fixtures();
  FrontierReport report;
  std::mt19937_64 rng(options.seed);

  // Closed-form side: the constructions must verify on random samples.
  for (int m = 1; m <= 6; ++m) {
    FrontierCell cell{"n=2 m=" + std::to_string(m) + " (n-dimensional construction)", "feasible"};
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      const auto p = random_profile(2, m, rng);
      ++cell.profiles;
      cell.matches += verify_embedding(p, embed_n_dim(p)).consistent();
    }
    cell.pass = cell.matches == cell.profiles;
    report.cells.push_back(std::move(cell));
  }
  for (int n = 1; n <= 6; ++n) {
    FrontierCell cell{"n=" + std::to_string(n) + " m=3 ((m-1)-dimensional construction)",
                      "feasible"};
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      const auto p = random_profile(n, 3, rng);
      ++cell.profiles;
      cell.matches += verify_embedding(p, embed_m_dim(p)).consistent();
    }
    cell.pass = cell.matches == cell.profiles;
    report.cells.push_back(std::move(cell));
  }

  // Exhaustive side.
  for (auto [n, m] : {std::pair{3, 5}, std::pair{4, 4}}) {
    FrontierCell cell{"n=" + std::to_string(n) + " m=" + std::to_string(m) + " exhaustive",
                      "feasible"};
    CanonicalProfiles space(n, m);
    const std::uint64_t end = std::min(space.size(), options.exhaustive_limit.value_or(space.size()));
    std::vector<std::uint64_t> bad;
    space.for_each(0, end, [&](std::uint64_t index, const PreferenceProfile& p) {
      ++cell.profiles;
      const auto out = options.recognizer(p);
      const bool ok = out.feasible() && out.witness && verify_embedding(p, *out.witness).consistent();
      if (ok) {
        ++cell.matches;
      } else if (bad.size() < 10) {
        bad.push_back(index);
      }
    });
    cell.pass = cell.matches == cell.profiles;
    if (end < space.size()) cell.detail = "first " + std::to_string(end) + " of " +
                                          std::to_string(space.size()) + " canonical profiles";
    for (auto b : bad) cell.detail += (cell.detail.empty() ? "" : "; ") + std::string("failed index ") + std::to_string(b);
    report.cells.push_back(std::move(cell));
  }

  // Counterexample side.
  for (const auto& fixture : options.fixtures) {
    FrontierCell cell{fixture.name, ""};
    for (std::size_t k = 0; k < fixture.profiles.size(); ++k) {
      const auto& p = fixture.profiles[k];
      const RecognitionVerdict expected =
          fixture.expected ? *fixture.expected : recognize_2d(p).verdict;
      if (cell.expected.empty()) {
        cell.expected = std::string(to_string(expected));
      } else if (cell.expected != to_string(expected)) {
        cell.expected = "mixed";
      }
      ++cell.profiles;
      const auto out = options.recognizer(p);
      if (out.verdict == expected) {
        ++cell.matches;
      } else {
        cell.detail += (cell.detail.empty() ? "" : "; ") + std::string("profile ") +
                       std::to_string(k + 1) + " gave " + std::string(to_string(out.verdict));
      }
    }
    cell.pass = cell.matches == cell.profiles;
    report.cells.push_back(std::move(cell));
  }
  return report;
}

}  // namespace mprefs
