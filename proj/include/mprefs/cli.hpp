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

// Command-line front end. Exit codes:
//   0 success / feasible / consistent
//   2 usage or input error
//   3 negative verdict (infeasible, inconsistent embedding, obstruction)
//   4 undecided (node budget exhausted)
//   5 internal verification failure

#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mprefs/constructive.hpp"
#include "mprefs/experiments.hpp"
#include "mprefs/geometry.hpp"
#include "mprefs/obstructions.hpp"
#include "mprefs/profile.hpp"
#include "mprefs/recognizer.hpp"
#include "mprefs/render.hpp"

namespace mprefs::cli {

inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kNegative = 3;
inline constexpr int kUndecided = 4;
inline constexpr int kInternal = 5;

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

// "v1,v3" or "1,3".
inline std::vector<int> parse_voter_list(const std::string& text) {
  std::vector<int> voters;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty() && (item[0] == 'v' || item[0] == 'V')) item.erase(0, 1);
    if (item.empty()) continue;
    voters.push_back(detail::parse_int(item, 0));
  }
  return voters;
}

inline nlohmann::json certificate_json(const BECertificate& c) {
  return {{"kind", "BE"}, {"voters", c.voters}, {"alts", {c.a, c.b, c.x}}};
}

inline nlohmann::json certificate_json(const EXCertificate& c) {
  return {{"kind", "EX"}, {"voters", c.voters}, {"alts", {c.x, c.a, c.b, c.c, c.d, c.e}}};
}

inline std::string embedding_text(const Embedding& e, bool decimal) { return to_text(e, decimal); }

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Manhattan embeddings of preference profiles"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  app.fallthrough();
  bool decimal = false;
  app.add_flag("--decimal", decimal, "Print coordinates as decimals instead of exact rationals");

  // parse-check
  auto* parse_cmd = app.add_subcommand("parse-check", "Validate a profile, spec or embedding file");
  std::string pc_profile, pc_spec, pc_embedding;
  auto* pc_p = parse_cmd->add_option("--profile", pc_profile, "Profile file");
  auto* pc_s = parse_cmd->add_option("--spec", pc_spec, "Profile spec file with {a,b} tie-groups");
  auto* pc_e = parse_cmd->add_option("--embedding", pc_embedding, "Embedding file");
  pc_p->excludes(pc_s)->excludes(pc_e);
  pc_s->excludes(pc_e);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check an embedding against a profile");
  std::string v_profile, v_embedding, v_metric = "l1";
  verify_cmd->add_option("--profile", v_profile)->required();
  verify_cmd->add_option("--embedding", v_embedding)->required();
  verify_cmd->add_option("--metric", v_metric)->check(CLI::IsMember({"l1", "l2"}));

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "Closed-form high-dimensional embedding");
  std::string e_method, e_profile, e_out;
  std::optional<std::int64_t> e_offset;
  std::optional<int> e_origin;
  embed_cmd->add_option("--method", e_method)->required()->check(CLI::IsMember({"n-dim", "m-dim"}));
  embed_cmd->add_option("--profile", e_profile)->required();
  embed_cmd->add_option("--out", e_out, "Output file (default: stdout)");
  embed_cmd->add_option("--offset", e_offset, "n-dim offset constant (>= n*m)");
  embed_cmd->add_option("--origin", e_origin, "m-dim alternative placed at the origin");

  // detect
  auto* detect_cmd = app.add_subcommand("detect", "Search voter triples for BE/EX configurations");
  std::string d_profile;
  detect_cmd->add_option("--profile", d_profile)->required();

  // recognize
  auto* rec_cmd = app.add_subcommand("recognize", "Decide 2-dimensional Manhattan embeddability");
  std::string r_profile, r_witness_out;
  std::optional<std::uint64_t> r_budget;
  bool r_no_fast = false;
  rec_cmd->add_option("--profile", r_profile)->required();
  rec_cmd->add_option("--budget", r_budget, "Node limit for the sign search");
  rec_cmd->add_flag("--no-fast-paths", r_no_fast, "Always run the full sign search");
  rec_cmd->add_option("--witness-out", r_witness_out, "Write the witness embedding here");

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "Recognize every canonical profile of a size");
  int s_voters = 0, s_alts = 0;
  unsigned s_threads = 1;
  std::string s_shard, s_out;
  bool s_store = false;
  std::optional<std::uint64_t> s_budget;
  scan_cmd->add_option("--voters", s_voters)->required()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--alts", s_alts)->required()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--shard", s_shard, "Canonical index range a:b (half-open)");
  scan_cmd->add_flag("--store-witnesses", s_store);
  scan_cmd->add_option("--out", s_out, "JSONL record file (appended; completed indices skipped)")
      ->required();
  scan_cmd->add_option("--threads", s_threads)->check(CLI::PositiveNumber);
  scan_cmd->add_option("--budget", s_budget, "Node limit per profile");

  // frontier
  auto* fr_cmd = app.add_subcommand("frontier", "Check the 2-Manhattan boundary table");
  std::string f_out;
  std::uint64_t f_samples = 20;
  std::optional<std::uint64_t> f_limit;
  fr_cmd->add_option("--out", f_out, "JSON report file")->required();
  fr_cmd->add_option("--samples", f_samples, "Random profiles per sampled cell");
  fr_cmd->add_option("--limit", f_limit, "Canonical profiles per exhaustive cell");

  // plot
  auto* plot_cmd = app.add_subcommand("plot", "Render a 2D embedding as SVG");
  std::string pl_embedding, pl_circles, pl_out;
  int pl_scale = 20;
  bool pl_no_labels = false;
  plot_cmd->add_option("--embedding", pl_embedding)->required();
  plot_cmd->add_option("--circles", pl_circles, "Voters to draw circles for, e.g. v1,v2");
  plot_cmd->add_option("--out", pl_out)->required();
  plot_cmd->add_option("--scale", pl_scale, "Pixels per unit")->check(CLI::PositiveNumber);
  plot_cmd->add_flag("--no-labels", pl_no_labels);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*parse_cmd) {
      nlohmann::json j;
      if (!pc_profile.empty()) {
        const auto p = parse_profile(read_file(pc_profile));
        j = {{"kind", "profile"}, {"voters", p.num_voters()}, {"alternatives", p.num_alternatives()}};
      } else if (!pc_spec.empty()) {
        const auto s = parse_spec(read_file(pc_spec));
        j = {{"kind", "spec"},
             {"voters", s.rows.size()},
             {"alternatives", s.num_alternatives},
             {"expansions", expand_spec(s).size()}};
      } else if (!pc_embedding.empty()) {
        const auto e = parse_embedding(read_file(pc_embedding));
        e.validate();
        j = {{"kind", "embedding"},
             {"dimension", e.dimension},
             {"voters", e.voters.size()},
             {"alternatives", e.alternatives.size()}};
      } else {
        err << "error: parse-check needs --profile, --spec or --embedding\n";
        return kUsage;
      }
      out << j.dump() << "\n";
      return kOk;
    }

    if (*verify_cmd) {
      const auto p = parse_profile(read_file(v_profile));
      const auto e = parse_embedding(read_file(v_embedding));
      const auto verdict = verify_embedding(p, e, v_metric == "l1" ? Metric::kL1 : Metric::kL2);
      nlohmann::json j = {{"consistent", verdict.consistent()}, {"metric", v_metric}};
      if (verdict.violation) {
        j["violation"] = {{"voter", verdict.violation->voter},
                          {"preferred", verdict.violation->preferred},
                          {"other", verdict.violation->other}};
      }
      out << j.dump() << "\n";
      return verdict.consistent() ? kOk : kNegative;
    }

    if (*embed_cmd) {
      const auto p = parse_profile(read_file(e_profile));
      const Embedding e = e_method == "n-dim" ? embed_n_dim(p, e_offset) : embed_m_dim(p, e_origin);
      if (!verify_embedding(p, e).consistent()) {
        err << "error: constructed embedding failed verification\n";
        return kInternal;
      }
      const std::string text = embedding_text(e, decimal);
      if (e_out.empty()) {
        out << text;
      } else {
        write_file(e_out, text);
      }
      return kOk;
    }

    if (*detect_cmd) {
      const auto p = parse_profile(read_file(d_profile));
      nlohmann::json certs = nlohmann::json::array();
      nlohmann::json triples = nlohmann::json::array();
      bool obstructed = false;
      const int n = p.num_voters();
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          for (int k = j + 1; k <= n; ++k) {
            const std::array<int, 3> t{i, j, k};
            for (int r = 0; r < 3; ++r) {
              const int v = t[r], u = t[(r + 1) % 3], w = t[(r + 2) % 3];
              for (auto [uu, ww] : {std::pair{u, w}, std::pair{w, u}}) {
                if (auto be = find_be(p, v, uu, ww)) certs.push_back(certificate_json(*be));
                if (auto ex = find_ex(p, v, uu, ww)) certs.push_back(certificate_json(*ex));
              }
            }
            const bool blocked = three_voter_obstruction(p, t).obstruction();
            obstructed |= blocked;
            triples.push_back({{"voters", t}, {"obstruction", blocked}});
          }
        }
      }
      out << nlohmann::json{{"certificates", certs}, {"triples", triples}, {"obstruction", obstructed}}
                 .dump()
          << "\n";
      return obstructed ? kNegative : kOk;
    }

    if (*rec_cmd) {
      const auto p = parse_profile(read_file(r_profile));
      RecognizerOptions options;
      options.node_budget = r_budget;
      if (r_no_fast) {
        options.obstruction_fast_path = false;
        options.constructive_fast_path = false;
      }
      const auto outcome = recognize_2d(p, options);
      nlohmann::json j = {{"verdict", std::string(to_string(outcome.verdict))},
                          {"method", outcome.method},
                          {"nodes", outcome.nodes},
                          {"prunes", outcome.prunes},
                          {"millis", outcome.millis}};
      if (outcome.witness) {
        const Embedding shown = *outcome.witness;
        if (decimal) {
          nlohmann::json pts = nlohmann::json::object();
          auto dec = [](const std::vector<Point>& v) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& p : v) arr.push_back({p[0].to_double(), p[1].to_double()});
            return arr;
          };
          j["witness"] = {{"dimension", 2}, {"voters", dec(shown.voters)},
                          {"alternatives", dec(shown.alternatives)}};
        } else {
          j["witness"] = embedding_to_json(shown);
        }
        if (!r_witness_out.empty()) write_file(r_witness_out, to_text(shown, decimal));
      }
      if (outcome.fast_certificate) {
        nlohmann::json certs = nlohmann::json::array();
        for (int k = 0; k < 3; ++k) {
          certs.push_back(certificate_json(*outcome.fast_certificate->be[k]));
          certs.push_back(certificate_json(*outcome.fast_certificate->ex[k]));
        }
        j["certificates"] = certs;
      }
      out << j.dump() << "\n";
      switch (outcome.verdict) {
        case RecognitionVerdict::kFeasible: return kOk;
        case RecognitionVerdict::kInfeasible: return kNegative;
        case RecognitionVerdict::kUndecided: return kUndecided;
      }
    }

    if (*scan_cmd) {
      ScanOptions options;
      options.threads = s_threads;
      options.store_witnesses = s_store;
      options.recognizer.node_budget = s_budget;
      if (!s_shard.empty()) {
        const auto colon = s_shard.find(':');
        if (colon == std::string::npos) throw InputError("--shard must be a:b");
        options.begin = std::stoull(s_shard.substr(0, colon));
        options.end = std::stoull(s_shard.substr(colon + 1));
      }
      {
        std::ifstream existing(s_out);
        if (existing) {
          for (const auto& [index, rec] : load_records(existing)) options.completed.insert(index);
        }
      }
      std::ofstream sink(s_out, std::ios::app);
      if (!sink) throw InputError("cannot write '" + s_out + "'");
      const auto summary = scan(s_voters, s_alts, sink, options);
      out << nlohmann::json{{"voters", s_voters},
                            {"alternatives", s_alts},
                            {"total", summary.total},
                            {"solved", summary.solved},
                            {"skipped", summary.skipped},
                            {"feasible", summary.feasible},
                            {"infeasible", summary.infeasible},
                            {"undecided", summary.undecided},
                            {"witness_failures", summary.witness_failures},
                            {"millis", summary.millis}}
                 .dump()
          << "\n";
      return summary.witness_failures ? kInternal : kOk;
    }

    if (*fr_cmd) {
      FrontierOptions options;
      options.samples = f_samples;
      options.exhaustive_limit = f_limit;
      const auto report = frontier_check(options);
      write_file(f_out, to_json(report).dump(2) + "\n");
      for (const auto& c : report.cells) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << " expected=" << c.expected << " "
            << c.matches << "/" << c.profiles << (c.detail.empty() ? "" : " (" + c.detail + ")")
            << "\n";
      }
      return report.pass() ? kOk : kInternal;
    }

    if (*plot_cmd) {
      FigureSpec spec;
      spec.embedding = parse_embedding(read_file(pl_embedding));
      spec.circle_voters = parse_voter_list(pl_circles);
      spec.pixels_per_unit = pl_scale;
      spec.labels = !pl_no_labels;
      write_file(pl_out, render_embedding(spec));
      return kOk;
    }
  } catch (const std::logic_error& e) {
    // invalid_argument / out_of_range are input problems, the rest are bugs.
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e)) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    }
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace mprefs::cli
