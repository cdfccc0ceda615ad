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

// Forbidden three-voter patterns for 2-dimensional Manhattan embeddings.
//
// Any placement of three voters u, v, w in the plane puts some voter v
// either inside the bounding box of the other two ("between", BE) or in the
// staircase position where the other two interleave around it ("exterior",
// EX). A BE-configuration with v in the middle role rules out the first
// placement for v, an EX-configuration the second. When both are present
// for every choice of v, the three voters admit no 2D embedding.

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mprefs/geometry.hpp"
#include "mprefs/profile.hpp"

namespace mprefs {

struct BECertificate {
  std::array<int, 3> voters;  // (v, u, w)
  int a, b, x;

  friend bool operator==(const BECertificate&, const BECertificate&) = default;
};

struct EXCertificate {
  std::array<int, 3> voters;  // (v, u, w)
  int x, a, b, c, d, e;

  friend bool operator==(const EXCertificate&, const EXCertificate&) = default;
};

namespace detail {
inline void require_distinct(const PreferenceProfile& p, int v, int u, int w) {
  p.check_voter(v);
  p.check_voter(u);
  p.check_voter(w);
  if (v == u || v == w || u == w) throw std::invalid_argument("voters must be distinct");
}
}  // namespace detail

// u: b > x > a,  v: a > x > b,  w: b > x > a.
inline bool is_be_configuration(const PreferenceProfile& p, int v, int u, int w, int a, int b,
                                int x) {
  auto chain = [&p](int voter, int hi, int mid, int lo) {
    return p.prefers(voter, hi, mid) && p.prefers(voter, mid, lo);
  };
  return chain(u, b, x, a) && chain(v, a, x, b) && chain(w, b, x, a);
}

// u: a > x > b, c > x, d > x
// v: a > x, b > x, x > d, x > e
// w: b > x > a, c > x, e > x
inline bool is_ex_configuration(const PreferenceProfile& p, int v, int u, int w, int x, int a,
                                int b, int c, int d, int e) {
  return p.prefers(u, a, x) && p.prefers(u, x, b) && p.prefers(u, c, x) && p.prefers(u, d, x) &&
         p.prefers(v, a, x) && p.prefers(v, b, x) && p.prefers(v, x, d) && p.prefers(v, x, e) &&
         p.prefers(w, b, x) && p.prefers(w, x, a) && p.prefers(w, c, x) && p.prefers(w, e, x);
}

// Lexicographically first (a, b, x).
inline std::optional<BECertificate> find_be(const PreferenceProfile& p, int v, int u, int w) {
  detail::require_distinct(p, v, u, w);
  const int m = p.num_alternatives();
  for (int a = 1; a <= m; ++a) {
    for (int b = 1; b <= m; ++b) {
      if (b == a) continue;
      for (int x = 1; x <= m; ++x) {
        if (x == a || x == b) continue;
        if (is_be_configuration(p, v, u, w, a, b, x)) return BECertificate{{v, u, w}, a, b, x};
      }
    }
  }
  return std::nullopt;
}

// Lexicographically first (x, a, b, c, d, e); c, d, e may coincide.
inline std::optional<EXCertificate> find_ex(const PreferenceProfile& p, int v, int u, int w) {
  detail::require_distinct(p, v, u, w);
  const int m = p.num_alternatives();
  for (int x = 1; x <= m; ++x) {
    for (int a = 1; a <= m; ++a) {
      if (!(p.prefers(u, a, x) && p.prefers(v, a, x) && p.prefers(w, x, a))) continue;
      for (int b = 1; b <= m; ++b) {
        if (!(p.prefers(u, x, b) && p.prefers(v, b, x) && p.prefers(w, b, x))) continue;
        for (int c = 1; c <= m; ++c) {
          if (!(p.prefers(u, c, x) && p.prefers(w, c, x))) continue;
          for (int d = 1; d <= m; ++d) {
            if (!(p.prefers(u, d, x) && p.prefers(v, x, d))) continue;
            for (int e = 1; e <= m; ++e) {
              if (!(p.prefers(w, e, x) && p.prefers(v, x, e))) continue;
              return EXCertificate{{v, u, w}, x, a, b, c, d, e};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

struct ThreeVoterVerdict {
  // Per voter of the triple (in the caller's order), the BE and EX
  // certificates with that voter in the middle role, when found.
  std::array<std::optional<BECertificate>, 3> be;
  std::array<std::optional<EXCertificate>, 3> ex;

  bool obstruction() const {
    for (int k = 0; k < 3; ++k) {
      if (!be[k] || !ex[k]) return false;
    }
    return true;
  }
};

inline ThreeVoterVerdict three_voter_obstruction(const PreferenceProfile& p,
                                                 std::array<int, 3> triple) {
  detail::require_distinct(p, triple[0], triple[1], triple[2]);
  ThreeVoterVerdict verdict;
  for (int k = 0; k < 3; ++k) {
    const int v = triple[k];
    const int u = triple[(k + 1) % 3];
    const int w = triple[(k + 2) % 3];
    verdict.be[k] = find_be(p, v, u, w);
    if (!verdict.be[k]) verdict.be[k] = find_be(p, v, w, u);
    verdict.ex[k] = find_ex(p, v, u, w);
    if (!verdict.ex[k]) verdict.ex[k] = find_ex(p, v, w, u);
  }
  return verdict;
}

// First voter triple (i < j < k) that is obstructed, if any.
inline std::optional<ThreeVoterVerdict> find_obstructed_triple(const PreferenceProfile& p) {
  const int n = p.num_voters();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        auto verdict = three_voter_obstruction(p, {i, j, k});
        if (verdict.obstruction()) return verdict;
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Necessary conditions every consistent 2D Manhattan embedding satisfies.

struct NecessaryConditionViolation {
  enum class Rule {
    kInsideVoterBox,     // r, s: y > x, yet E(x) in BB(E(r), E(s))
    kVoterInsideBox,     // r: x > y, s: y > x, yet E(s) in BB(E(r), E(x))
    kQuadrantOrdering,   // s: x > y, E(y) in Q(E(s)), yet y not beyond x along Q
  };
  Rule rule;
  std::vector<int> voters;
  std::vector<int> alternatives;  // (x, y) as named in the rule
  std::optional<Quadrant> quadrant;
};

inline std::string_view to_string(NecessaryConditionViolation::Rule rule) {
  switch (rule) {
    case NecessaryConditionViolation::Rule::kInsideVoterBox: return "alternative-inside-voter-box";
    case NecessaryConditionViolation::Rule::kVoterInsideBox: return "voter-inside-box";
    case NecessaryConditionViolation::Rule::kQuadrantOrdering: return "quadrant-ordering";
  }
  return "?";
}

inline std::optional<NecessaryConditionViolation> quadrant_necessary_violation(
    const PreferenceProfile& p, const Embedding& e) {
  if (e.dimension != 2) throw std::invalid_argument("necessary conditions need a 2D embedding");
  e.validate();
  if (static_cast<int>(e.voters.size()) != p.num_voters() ||
      static_cast<int>(e.alternatives.size()) != p.num_alternatives()) {
    throw std::invalid_argument("embedding does not match profile size");
  }
  using Rule = NecessaryConditionViolation::Rule;
  const int n = p.num_voters();
  const int m = p.num_alternatives();
  for (int r = 1; r <= n; ++r) {
    for (int s = 1; s <= n; ++s) {
      if (r == s) continue;
      for (int x = 1; x <= m; ++x) {
        for (int y = 1; y <= m; ++y) {
          if (x == y) continue;
          if (r < s && p.prefers(r, y, x) && p.prefers(s, y, x) &&
              bounding_box_contains(e.voter(r), e.voter(s), e.alternative(x))) {
            return NecessaryConditionViolation{Rule::kInsideVoterBox, {r, s}, {x, y}, {}};
          }
          if (p.prefers(r, x, y) && p.prefers(s, y, x) &&
              bounding_box_contains(e.voter(r), e.alternative(x), e.voter(s))) {
            return NecessaryConditionViolation{Rule::kVoterInsideBox, {r, s}, {x, y}, {}};
          }
        }
      }
    }
  }
  for (int s = 1; s <= n; ++s) {
    for (int x = 1; x <= m; ++x) {
      for (int y = 1; y <= m; ++y) {
        if (x == y || !p.prefers(s, x, y)) continue;
        for (Quadrant q : kAllQuadrants) {
          if (!quadrant_contains(e.voter(s), q, e.alternative(y))) continue;
          const int sx = quadrant_direction(q, 0);
          const int sy = quadrant_direction(q, 1);
          const auto& ey = e.alternative(y);
          const auto& ex = e.alternative(x);
          const Rational lhs = Rational(sx) * ey[0] + Rational(sy) * ey[1];
          const Rational rhs = Rational(sx) * ex[0] + Rational(sy) * ex[1];
          if (!(lhs > rhs)) {
            return NecessaryConditionViolation{Rule::kQuadrantOrdering, {s}, {x, y}, q};
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace mprefs
