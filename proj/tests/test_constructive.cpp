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

#include "mprefs/constructive.hpp"
#include "mprefs/experiments.hpp"
#include "oracles.hpp"

namespace mprefs {
namespace {

TEST(EmbedNDim, ReproducesExample32Table) {
  const auto e = embed_n_dim(fixtures::example_two_voters());
  EXPECT_EQ(e, parse_embedding("2 2 5\n-5 0\n0 -5\n-3 13\n-3 15\n14 0\n14 -2\n14 -4\n"));
}

TEST(EmbedNDim, SingleVoterTwoAlternatives) {
  const auto p = parse_profile("1 2\n1 2");
  const auto e = embed_n_dim(p);
  EXPECT_EQ(e, parse_embedding("1 1 2\n-2\n2\n4\n"));
  EXPECT_EQ(manhattan(e.voter(1), e.alternative(1)), Rational(4));
  EXPECT_EQ(manhattan(e.voter(1), e.alternative(2)), Rational(6));
}

TEST(EmbedNDim, SharedRankingKeepsOffAxesAtZero) {
  const auto p = parse_profile("3 4\n2 4 1 3\n2 4 1 3\n2 4 1 3");
  const auto e = embed_n_dim(p);
  for (int j = 1; j <= 4; ++j) {
    EXPECT_EQ(e.alternative(j)[1], Rational(0));
    EXPECT_EQ(e.alternative(j)[2], Rational(0));
    for (int i = 1; i <= 3; ++i) {
      EXPECT_EQ(manhattan(e.voter(i), e.alternative(j)), Rational(4 + 12 + 2 * p.rank(i, j)));
    }
  }
}

TEST(EmbedNDim, OffsetOverride) {
  const auto p = fixtures::example_two_voters();
  EXPECT_THROW(embed_n_dim(p, 9), std::invalid_argument);
  const auto e = embed_n_dim(p, 100);
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 5; ++j) {
      EXPECT_EQ(manhattan(e.voter(i), e.alternative(j)), Rational(5 + 100 + 2 * p.rank(i, j)));
    }
  }
}

TEST(EmbedNDim, RandomProfilesSatisfyDistanceIdentityAndBounds) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + rng() % 6, m = 1 + rng() % 7;
    const auto p = random_profile(n, m, rng);
    const auto e = embed_n_dim(p);
    ASSERT_EQ(e.dimension, n);
    EXPECT_TRUE(verify_embedding(p, e).consistent());
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= m; ++j) {
        EXPECT_EQ(manhattan(e.voter(i), e.alternative(j)),
                  Rational(m + n * m + 2 * oracle::rank_of(p.order(i), j)));
      }
    }
    for (int j = 1; j <= m; ++j) {
      const int worst = max_rank_info(p, j).voter;
      for (int z = 1; z <= n; ++z) {
        const Rational& c = e.alternative(j)[z - 1];
        EXPECT_TRUE(c.is_integer());
        if (z == worst) {
          EXPECT_GE(c.sign(), 0);
        } else {
          EXPECT_LE(Rational(-m), c);
          EXPECT_LE(c, Rational(0));
        }
      }
    }
  }
}

TEST(EmbedMDim, ReproducesExample34Points) {
  const auto e = embed_m_dim(fixtures::example_three_alternatives());
  EXPECT_EQ(e, parse_embedding("2 6 3\n4 3\n4 0\n3 4\n0 4\n1 0\n0 1\n4 0\n0 4\n0 0\n"));
}

TEST(EmbedMDim, OneVoterTwoAlternatives) {
  const auto e = embed_m_dim(parse_profile("1 2\n1 2"));
  EXPECT_EQ(e, parse_embedding("1 1 2\n2\n2\n0\n"));
}

TEST(EmbedMDim, OriginLastForEveryoneUsesFirstCase) {
  const auto p = parse_profile("3 4\n1 2 3 4\n3 1 2 4\n2 3 1 4");
  const auto e = embed_m_dim(p);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) EXPECT_EQ(e.voter(i)[j - 1], Rational(6 - p.rank(i, j)));
  }
}

TEST(EmbedMDim, RejectsSingleAlternative) {
  EXPECT_THROW(embed_m_dim(parse_profile("1 1\n1")), std::invalid_argument);
  EXPECT_THROW(embed_m_dim(parse_profile("1 2\n1 2"), 3), std::out_of_range);
}

TEST(EmbedMDim, RandomProfilesSatisfyClaimIdentity) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + rng() % 6, m = 2 + rng() % 6;
    const auto p = random_profile(n, m, rng);
    const int origin = 1 + static_cast<int>(rng() % m);
    const auto e = embed_m_dim(p, origin);
    ASSERT_EQ(e.dimension, m - 1);
    EXPECT_TRUE(verify_embedding(p, e).consistent());
    const int k = m - 1;
    for (int i = 1; i <= n; ++i) {
      const Rational to_origin = manhattan(e.voter(i), e.alternative(origin));
      int axis = 0;
      for (int j = 1; j <= m; ++j) {
        if (j == origin) continue;
        EXPECT_EQ(manhattan(e.voter(i), e.alternative(j)),
                  to_origin + Rational(2) * (Rational(k) - e.voter(i)[axis]));
        ++axis;
      }
    }
  }
}

}  // namespace
}  // namespace mprefs
