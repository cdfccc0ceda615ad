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

// Preference profiles: n strict rankings over alternatives 1..m.
//
// Conventions used throughout the library: voters and alternatives are
// 1-based identifiers, ranks are 0-based (rank 0 is the favourite).

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mprefs {

using Rank = int;

class ParseError : public std::runtime_error {
 public:
  ParseError(int row, const std::string& what)
      : std::runtime_error(row > 0 ? "row " + std::to_string(row) + ": " + what
                                   : what),
        row_(row) {}
  // 1-based data row (the header is row 0).
  int row() const { return row_; }

 private:
  int row_;
};

class PreferenceProfile {
 public:
  PreferenceProfile() = default;

  // `orders[i]` lists voter i+1's alternatives from most to least preferred.
  PreferenceProfile(int num_alternatives, std::vector<std::vector<int>> orders)
      : m_(num_alternatives), orders_(std::move(orders)) {
    if (m_ < 1) throw std::invalid_argument("profile needs at least one alternative");
    if (orders_.empty()) throw std::invalid_argument("profile needs at least one voter");
    ranks_.assign(orders_.size() * m_, -1);
    for (std::size_t v = 0; v < orders_.size(); ++v) {
      const auto& order = orders_[v];
      if (static_cast<int>(order.size()) != m_) {
        throw ParseError(static_cast<int>(v) + 1,
                         "expected " + std::to_string(m_) + " alternatives, got " +
                             std::to_string(order.size()));
      }
      for (int pos = 0; pos < m_; ++pos) {
        const int a = order[pos];
        if (a < 1 || a > m_) {
          throw ParseError(static_cast<int>(v) + 1,
                           "alternative " + std::to_string(a) + " out of range 1.." +
                               std::to_string(m_));
        }
        int& slot = ranks_[v * m_ + (a - 1)];
        if (slot != -1) {
          throw ParseError(static_cast<int>(v) + 1,
                           "not a permutation (alternative " + std::to_string(a) +
                               " repeated)");
        }
        slot = pos;
      }
    }
  }

  int num_voters() const { return static_cast<int>(orders_.size()); }
  int num_alternatives() const { return m_; }

  const std::vector<int>& order(int voter) const {
    check_voter(voter);
    return orders_[voter - 1];
  }
  const std::vector<std::vector<int>>& orders() const { return orders_; }

  // Number of alternatives `voter` strictly prefers to `alt`.
  Rank rank(int voter, int alt) const {
    check_voter(voter);
    check_alt(alt);
    return ranks_[(voter - 1) * m_ + (alt - 1)];
  }

  // Alternative at position `r` of `voter`'s ranking.
  int at_rank(int voter, Rank r) const {
    check_voter(voter);
    if (r < 0 || r >= m_) throw std::out_of_range("rank out of range");
    return orders_[voter - 1][r];
  }

  bool prefers(int voter, int a, int b) const { return rank(voter, a) < rank(voter, b); }

  void check_voter(int voter) const {
    if (voter < 1 || voter > num_voters()) {
      throw std::out_of_range("voter " + std::to_string(voter) + " out of range 1.." +
                              std::to_string(num_voters()));
    }
  }
  void check_alt(int alt) const {
    if (alt < 1 || alt > m_) {
      throw std::out_of_range("alternative " + std::to_string(alt) +
                              " out of range 1.." + std::to_string(m_));
    }
  }

  friend bool operator==(const PreferenceProfile& a, const PreferenceProfile& b) {
    return a.m_ == b.m_ && a.orders_ == b.orders_;
  }

 private:
  int m_ = 0;
  std::vector<std::vector<int>> orders_;
  std::vector<Rank> ranks_;  // voter-major, 0-based alternatives
};

struct MaxRankInfo {
  Rank max_rank;
  int voter;  // smallest voter index attaining max_rank
};

inline MaxRankInfo max_rank_info(const PreferenceProfile& p, int alt) {
  p.check_alt(alt);
  MaxRankInfo info{-1, 0};
  for (int v = 1; v <= p.num_voters(); ++v) {
    if (p.rank(v, alt) > info.max_rank) info = {p.rank(v, alt), v};
  }
  return info;
}

struct Restriction {
  PreferenceProfile profile;
  std::vector<int> voters;        // new voter index i+1 <- voters[i]
  std::vector<int> alternatives;  // new alternative id j+1 <- alternatives[j]
};

// Induced subprofile on the given voters and alternatives. Both selections
// are sorted and deduplicated; alternatives are relabeled to 1..k preserving
// their numeric order.
inline Restriction restrict(const PreferenceProfile& p, std::vector<int> voters,
                            std::vector<int> alts) {
  std::sort(voters.begin(), voters.end());
  voters.erase(std::unique(voters.begin(), voters.end()), voters.end());
  std::sort(alts.begin(), alts.end());
  alts.erase(std::unique(alts.begin(), alts.end()), alts.end());
  if (voters.empty() || alts.empty()) {
    throw std::invalid_argument("restriction needs at least one voter and one alternative");
  }
  for (int v : voters) p.check_voter(v);
  std::vector<int> relabel(p.num_alternatives() + 1, 0);
  for (std::size_t j = 0; j < alts.size(); ++j) {
    p.check_alt(alts[j]);
    relabel[alts[j]] = static_cast<int>(j) + 1;
  }
  std::vector<std::vector<int>> orders;
  orders.reserve(voters.size());
  for (int v : voters) {
    std::vector<int> row;
    row.reserve(alts.size());
    for (int a : p.order(v)) {
      if (relabel[a] != 0) row.push_back(relabel[a]);
    }
    orders.push_back(std::move(row));
  }
  return {PreferenceProfile(static_cast<int>(alts.size()), std::move(orders)),
          std::move(voters), std::move(alts)};
}

// ---------------------------------------------------------------------------
// Text formats.

namespace detail {

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  if (!current.empty()) lines.push_back(current);
  // Blank lines and '#' comments are skipped.
  std::vector<std::string> kept;
  for (auto& l : lines) {
    const auto first = l.find_first_not_of(" \t");
    if (first == std::string::npos || l[first] == '#') continue;
    kept.push_back(std::move(l));
  }
  return kept;
}

inline std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline int parse_int(const std::string& tok, int row) {
  if (tok.empty() || tok.find_first_not_of("+-0123456789") != std::string::npos) {
    throw ParseError(row, "expected an integer, got '" + tok + "'");
  }
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size() || v < std::numeric_limits<int>::min() ||
        v > std::numeric_limits<int>::max()) {
      throw ParseError(row, "expected an integer, got '" + tok + "'");
    }
    return static_cast<int>(v);
  } catch (const std::logic_error&) {
    throw ParseError(row, "expected an integer, got '" + tok + "'");
  }
}

inline std::pair<int, int> parse_header(const std::vector<std::string>& lines) {
  if (lines.empty()) throw ParseError(0, "missing header line \"n m\"");
  const auto head = split_tokens(lines[0]);
  if (head.size() != 2) throw ParseError(0, "header must be \"n m\"");
  const int n = parse_int(head[0], 0);
  const int m = parse_int(head[1], 0);
  if (n < 1 || m < 1) throw ParseError(0, "header needs n >= 1 and m >= 1");
  if (static_cast<int>(lines.size()) - 1 != n) {
    throw ParseError(0, "header announces " + std::to_string(n) + " voters but " +
                            std::to_string(lines.size() - 1) + " rows follow");
  }
  return {n, m};
}

}  // namespace detail

// "n m" header followed by n rows of m space-separated alternative ids.
inline PreferenceProfile parse_profile(std::string_view text) {
  const auto lines = detail::split_lines(text);
  const auto [n, m] = detail::parse_header(lines);
  std::vector<std::vector<int>> orders;
  for (int row = 1; row <= n; ++row) {
    std::vector<int> order;
    for (const auto& tok : detail::split_tokens(lines[row])) {
      order.push_back(detail::parse_int(tok, row));
    }
    orders.push_back(std::move(order));
  }
  return PreferenceProfile(m, std::move(orders));
}

inline std::string to_text(const PreferenceProfile& p) {
  std::string out = std::to_string(p.num_voters()) + " " +
                    std::to_string(p.num_alternatives()) + "\n";
  for (const auto& order : p.orders()) {
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(order[k]);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Profile patterns with unordered tie-groups, e.g. "{1,2} 3 4 5".

struct ProfileSpec {
  int num_alternatives = 0;
  // rows[v][k] is the k-th block of voter v+1; singleton blocks are strict.
  std::vector<std::vector<std::vector<int>>> rows;

  void validate() const {
    if (num_alternatives < 1 || rows.empty()) {
      throw std::invalid_argument("spec needs at least one voter and one alternative");
    }
    for (std::size_t v = 0; v < rows.size(); ++v) {
      std::vector<int> seen(num_alternatives + 1, 0);
      int count = 0;
      for (const auto& block : rows[v]) {
        if (block.empty()) throw ParseError(static_cast<int>(v) + 1, "empty tie-group");
        for (int a : block) {
          if (a < 1 || a > num_alternatives) {
            throw ParseError(static_cast<int>(v) + 1,
                             "alternative " + std::to_string(a) + " out of range");
          }
          if (seen[a]++) {
            throw ParseError(static_cast<int>(v) + 1,
                             "alternative " + std::to_string(a) + " repeated");
          }
          ++count;
        }
      }
      if (count != num_alternatives) {
        throw ParseError(static_cast<int>(v) + 1, "blocks do not cover all alternatives");
      }
    }
  }
};

inline ProfileSpec parse_spec(std::string_view text) {
  const auto lines = detail::split_lines(text);
  const auto [n, m] = detail::parse_header(lines);
  ProfileSpec spec;
  spec.num_alternatives = m;
  for (int row = 1; row <= n; ++row) {
    std::vector<std::vector<int>> blocks;
    for (const auto& tok : detail::split_tokens(lines[row])) {
      if (tok.front() == '{') {
        if (tok.back() != '}' || tok.size() < 3) {
          throw ParseError(row, "malformed tie-group '" + tok + "'");
        }
        std::vector<int> block;
        std::string inner = tok.substr(1, tok.size() - 2);
        std::istringstream in(inner);
        std::string item;
        while (std::getline(in, item, ',')) block.push_back(detail::parse_int(item, row));
        blocks.push_back(std::move(block));
      } else {
        blocks.push_back({detail::parse_int(tok, row)});
      }
    }
    spec.rows.push_back(std::move(blocks));
  }
  spec.validate();
  return spec;
}

// Every strict profile compatible with `spec`. Tie-groups are linearized
// independently; the enumeration order is the row-major odometer over the
// lexicographically ordered linearizations of each row.
inline std::vector<PreferenceProfile> expand_spec(const ProfileSpec& spec) {
  spec.validate();
  std::vector<std::vector<std::vector<int>>> row_options;
  for (const auto& blocks : spec.rows) {
    std::vector<std::vector<int>> options{{}};
    for (auto block : blocks) {
      std::sort(block.begin(), block.end());
      std::vector<std::vector<int>> next;
      do {
        for (const auto& prefix : options) {
          auto extended = prefix;
          extended.insert(extended.end(), block.begin(), block.end());
          next.push_back(std::move(extended));
        }
      } while (std::next_permutation(block.begin(), block.end()));
      std::sort(next.begin(), next.end());
      options = std::move(next);
    }
    row_options.push_back(std::move(options));
  }
  std::vector<PreferenceProfile> out;
  std::vector<std::size_t> digit(row_options.size(), 0);
  while (true) {
    std::vector<std::vector<int>> orders;
    for (std::size_t v = 0; v < row_options.size(); ++v) {
      orders.push_back(row_options[v][digit[v]]);
    }
    out.emplace_back(spec.num_alternatives, std::move(orders));
    std::size_t k = row_options.size();
    while (k > 0) {
      --k;
      if (++digit[k] < row_options[k].size()) break;
      digit[k] = 0;
      if (k == 0) return out;
    }
    if (row_options.empty()) return out;
  }
}

// ---------------------------------------------------------------------------
// Canonical enumeration: the first voter ranks 1 > 2 > ... > m, the other
// n-1 voters hold pairwise distinct non-identity rankings. Rankings are
// indexed by lexicographic permutation order (identity = 0) and the n-1
// indices form an ascending combination of {1, ..., m!-1}.

namespace detail {

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("binomial coefficient exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace detail

class CanonicalProfiles {
 public:
  CanonicalProfiles(int num_voters, int num_alternatives)
      : n_(num_voters), m_(num_alternatives) {
    if (n_ < 1 || m_ < 1) throw std::invalid_argument("need n >= 1 and m >= 1");
    if (m_ > 10) throw std::invalid_argument("canonical enumeration supports m <= 10");
    std::vector<int> perm(m_);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      permutations_.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const std::uint64_t pool = permutations_.size() - 1;
    count_ = detail::binomial(pool, static_cast<std::uint64_t>(n_ - 1));
  }

  int num_voters() const { return n_; }
  int num_alternatives() const { return m_; }
  std::uint64_t size() const { return count_; }

  // Ranking with lexicographic index `k` (0 is the identity).
  const std::vector<int>& permutation(std::size_t k) const { return permutations_.at(k); }

  // Permutation indices (ascending, each >= 1) of the profile at `index`.
  std::vector<std::size_t> combination(std::uint64_t index) const {
    if (index >= count_) throw std::out_of_range("canonical index out of range");
    const std::uint64_t pool = permutations_.size() - 1;
    std::vector<std::size_t> combo;
    std::uint64_t next = 0;  // smallest pool element still available (0-based)
    std::uint64_t rest = index;
    for (int slot = n_ - 1; slot > 0; --slot) {
      while (true) {
        const std::uint64_t block = detail::binomial(pool - next - 1, slot - 1);
        if (rest < block) break;
        rest -= block;
        ++next;
      }
      combo.push_back(static_cast<std::size_t>(next) + 1);
      ++next;
    }
    return combo;
  }

  PreferenceProfile profile_of(const std::vector<std::size_t>& combo) const {
    std::vector<std::vector<int>> orders{permutations_[0]};
    for (auto k : combo) orders.push_back(permutations_[k]);
    return PreferenceProfile(m_, std::move(orders));
  }

  PreferenceProfile at(std::uint64_t index) const { return profile_of(combination(index)); }

  // Calls fn(index, profile) for every index in [begin, end), advancing the
  // combination incrementally.
  void for_each(std::uint64_t begin, std::uint64_t end,
                const std::function<void(std::uint64_t, const PreferenceProfile&)>& fn) const {
    end = std::min(end, count_);
    if (begin >= end) return;
    auto combo = combination(begin);
    const std::size_t pool = permutations_.size() - 1;
    for (std::uint64_t index = begin; index < end; ++index) {
      fn(index, profile_of(combo));
      // Advance to the lexicographic successor.
      const std::size_t k = combo.size();
      std::size_t i = k;
      while (i > 0 && combo[i - 1] == pool - (k - i)) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
  }

 private:
  int n_;
  int m_;
  std::vector<std::vector<int>> permutations_;
  std::uint64_t count_ = 0;
};

}  // namespace mprefs
