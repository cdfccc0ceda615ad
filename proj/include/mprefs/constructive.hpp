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

// Closed-form Manhattan embeddings in high dimension. Both constructions
// produce integer coordinates and make every voter-alternative distance an
// affine function of the voter's rank for that alternative.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "mprefs/geometry.hpp"
#include "mprefs/profile.hpp"

namespace mprefs {

// One axis per voter. Voter i sits at -m on axis i. Alternative j sits at
// rk_z(j) - mk_j on every axis z except the axis of a voter ranking it worst
// (smallest index), where it sits at
//   offset + 2 rk(j) + sum_k (rk_k(j) - mk_j).
// With offset >= n*m every distance equals m + offset + 2 rk_i(j).
inline Embedding embed_n_dim(const PreferenceProfile& p,
                             std::optional<std::int64_t> offset = std::nullopt) {
  const int n = p.num_voters();
  const int m = p.num_alternatives();
  const std::int64_t min_offset = static_cast<std::int64_t>(n) * m;
  const std::int64_t big_m = offset.value_or(min_offset);
  if (big_m < min_offset) {
    throw std::invalid_argument("offset must be at least n*m = " + std::to_string(min_offset));
  }
  Embedding e;
  e.dimension = n;
  for (int v = 1; v <= n; ++v) {
    Point pt(n, Rational(0));
    pt[v - 1] = Rational(-m);
    e.voters.push_back(std::move(pt));
  }
  for (int j = 1; j <= m; ++j) {
    const auto [mk, worst] = max_rank_info(p, j);
    std::int64_t deficit = 0;
    for (int k = 1; k <= n; ++k) deficit += p.rank(k, j) - mk;
    Point pt(n);
    for (int z = 1; z <= n; ++z) {
      pt[z - 1] = z == worst
                      ? Rational(big_m + 2 * static_cast<std::int64_t>(p.rank(z, j)) + deficit)
                      : Rational(static_cast<std::int64_t>(p.rank(z, j) - mk));
    }
    e.alternatives.push_back(std::move(pt));
  }
  return e;
}

// One axis per alternative other than `origin_alt` (default: the last one),
// axes ordered by alternative id. With k = m-1, the origin alternative sits
// at 0, alternative j at 2k on its own axis, and a voter's coordinate on the
// axis of j is 2k - rk(j) if j beats the origin alternative, k - rk(j)
// otherwise.
inline Embedding embed_m_dim(const PreferenceProfile& p, std::optional<int> origin_alt = {}) {
  const int m = p.num_alternatives();
  if (m < 2) throw std::invalid_argument("embed_m_dim needs at least two alternatives");
  const int origin = origin_alt.value_or(m);
  p.check_alt(origin);
  const int k = m - 1;
  std::vector<int> axis_alt;  // axis -> alternative
  for (int a = 1; a <= m; ++a) {
    if (a != origin) axis_alt.push_back(a);
  }
  Embedding e;
  e.dimension = k;
  e.alternatives.assign(m, Point(k, Rational(0)));
  for (int z = 0; z < k; ++z) e.alternatives[axis_alt[z] - 1][z] = Rational(2 * k);
  for (int v = 1; v <= p.num_voters(); ++v) {
    Point pt(k);
    const Rank origin_rank = p.rank(v, origin);
    for (int z = 0; z < k; ++z) {
      const Rank r = p.rank(v, axis_alt[z]);
      pt[z] = Rational(r < origin_rank ? 2 * k - r : k - r);
    }
    e.voters.push_back(std::move(pt));
  }
  return e;
}

}  // namespace mprefs
