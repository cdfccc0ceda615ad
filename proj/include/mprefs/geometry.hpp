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

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mprefs/profile.hpp"
#include "mprefs/rational.hpp"

namespace mprefs {

using Point = std::vector<Rational>;

inline Point make_point(std::initializer_list<std::int64_t> coords) {
  Point p;
  for (auto c : coords) p.emplace_back(c);
  return p;
}

struct Embedding {
  int dimension = 0;
  std::vector<Point> voters;        // voters[i] is voter i+1
  std::vector<Point> alternatives;  // alternatives[j] is alternative j+1

  const Point& voter(int v) const { return voters.at(v - 1); }
  const Point& alternative(int a) const { return alternatives.at(a - 1); }

  void validate() const {
    if (dimension < 1) throw std::invalid_argument("embedding dimension must be >= 1");
    for (const auto* group : {&voters, &alternatives}) {
      for (const auto& p : *group) {
        if (static_cast<int>(p.size()) != dimension) {
          throw std::invalid_argument("embedding point has wrong dimension");
        }
      }
    }
  }

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

namespace detail {
inline void require_same_dimension(const Point& p, const Point& q) {
  if (p.size() != q.size() || p.empty()) {
    throw std::invalid_argument("points have mismatched dimensions (" +
                                std::to_string(p.size()) + " vs " +
                                std::to_string(q.size()) + ")");
  }
}
}  // namespace detail

inline Rational manhattan(const Point& p, const Point& q) {
  detail::require_same_dimension(p, q);
  Rational sum;
  for (std::size_t i = 0; i < p.size(); ++i) sum += abs(p[i] - q[i]);
  return sum;
}

inline Rational euclidean_sq(const Point& p, const Point& q) {
  detail::require_same_dimension(p, q);
  Rational sum;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Rational d = p[i] - q[i];
    sum += d * d;
  }
  return sum;
}

// Closed axis-parallel box spanned by two corners.
inline bool bounding_box_contains(const Point& corner1, const Point& corner2, const Point& x) {
  detail::require_same_dimension(corner1, corner2);
  detail::require_same_dimension(corner1, x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& lo = std::min(corner1[i], corner2[i]);
    const auto& hi = std::max(corner1[i], corner2[i]);
    if (x[i] < lo || hi < x[i]) return false;
  }
  return true;
}

enum class Quadrant { kNE, kSE, kNW, kSW };

inline constexpr Quadrant kAllQuadrants[] = {Quadrant::kNE, Quadrant::kSE, Quadrant::kNW,
                                             Quadrant::kSW};

inline std::string_view to_string(Quadrant q) {
  switch (q) {
    case Quadrant::kNE: return "NE";
    case Quadrant::kSE: return "SE";
    case Quadrant::kNW: return "NW";
    case Quadrant::kSW: return "SW";
  }
  return "?";
}

// +1 if the quadrant extends towards larger coordinates on `axis` (0 or 1).
inline int quadrant_direction(Quadrant q, int axis) {
  if (axis == 0) return (q == Quadrant::kNE || q == Quadrant::kSE) ? 1 : -1;
  return (q == Quadrant::kNE || q == Quadrant::kNW) ? 1 : -1;
}

// Closed quadrant of `anchor`; quadrants overlap on the anchor's axis lines.
inline bool quadrant_contains(const Point& anchor, Quadrant q, const Point& x) {
  if (anchor.size() != 2 || x.size() != 2) {
    throw std::invalid_argument("quadrants are defined for 2-dimensional points only");
  }
  for (int axis = 0; axis < 2; ++axis) {
    const Rational d = x[axis] - anchor[axis];
    if (d.sign() * quadrant_direction(q, axis) < 0) return false;
  }
  return true;
}

enum class Metric { kL1, kL2 };

inline Rational distance(const Point& p, const Point& q, Metric metric) {
  return metric == Metric::kL1 ? manhattan(p, q) : euclidean_sq(p, q);
}

struct Violation {
  int voter;
  int preferred;  // ranked higher by the voter
  int other;      // but not strictly closer than this one
};

struct Verdict {
  std::optional<Violation> violation;
  bool consistent() const { return !violation.has_value(); }
};

// Checks that every voter's ranking is the strictly increasing order of its
// distances to the alternatives. Ties count as violations. L2 compares
// squared distances, so both metrics are decided exactly.
inline Verdict verify_embedding(const PreferenceProfile& p, const Embedding& e,
                                Metric metric = Metric::kL1) {
  e.validate();
  if (static_cast<int>(e.voters.size()) != p.num_voters() ||
      static_cast<int>(e.alternatives.size()) != p.num_alternatives()) {
    throw std::invalid_argument("embedding does not match profile size");
  }
  for (int v = 1; v <= p.num_voters(); ++v) {
    const auto& order = p.order(v);
    Rational prev = distance(e.voter(v), e.alternative(order[0]), metric);
    for (std::size_t k = 1; k < order.size(); ++k) {
      Rational cur = distance(e.voter(v), e.alternative(order[k]), metric);
      if (!(prev < cur)) return {Violation{v, order[k - 1], order[k]}};
      prev = std::move(cur);
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Text format: "d n m", then n voter rows and m alternative rows of d
// rationals each ("p/q" or integers).

inline Embedding parse_embedding(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty()) throw ParseError(0, "missing header line \"d n m\"");
  const auto head = detail::split_tokens(lines[0]);
  if (head.size() != 3) throw ParseError(0, "header must be \"d n m\"");
  Embedding e;
  e.dimension = detail::parse_int(head[0], 0);
  const int n = detail::parse_int(head[1], 0);
  const int m = detail::parse_int(head[2], 0);
  if (e.dimension < 1 || n < 0 || m < 0) throw ParseError(0, "invalid header values");
  if (static_cast<int>(lines.size()) != 1 + n + m) {
    throw ParseError(0, "expected " + std::to_string(n + m) + " point rows, got " +
                            std::to_string(lines.size() - 1));
  }
  for (int row = 1; row <= n + m; ++row) {
    const auto toks = detail::split_tokens(lines[row]);
    if (static_cast<int>(toks.size()) != e.dimension) {
      throw ParseError(row, "expected " + std::to_string(e.dimension) + " coordinates");
    }
    Point p;
    for (const auto& t : toks) {
      try {
        p.push_back(Rational::parse(t));
      } catch (const std::exception& ex) {
        throw ParseError(row, ex.what());
      }
    }
    (row <= n ? e.voters : e.alternatives).push_back(std::move(p));
  }
  return e;
}

inline std::string to_text(const Embedding& e, bool decimal = false) {
  auto fmt = [decimal](const Rational& r) {
    if (!decimal || r.is_integer()) return r.to_string();
    std::ostringstream os;
    os.precision(6);
    os << std::fixed << r.to_double();
    return os.str();
  };
  std::string out = std::to_string(e.dimension) + " " + std::to_string(e.voters.size()) +
                    " " + std::to_string(e.alternatives.size()) + "\n";
  for (const auto* group : {&e.voters, &e.alternatives}) {
    for (const auto& p : *group) {
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (k) out += ' ';
        out += fmt(p[k]);
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace mprefs
