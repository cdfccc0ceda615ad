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

#include <map>
#include <regex>
#include <set>
#include <string>

#include "mprefs/constructive.hpp"
#include "mprefs/experiments.hpp"
#include "mprefs/render.hpp"

namespace mprefs {
namespace {

struct Polygon {
  int voter;
  int alternative;
  std::string radius;
  std::vector<std::pair<double, double>> points;
};

std::vector<Polygon> polygons(const std::string& svg) {
  static const std::regex re(
      "<polygon class=\"manhattan-circle\" data-voter=\"(\\d+)\" data-alternative=\"(\\d+)\" "
      "data-radius=\"([^\"]+)\"[^>]* points=\"([^\"]+)\"");
  std::vector<Polygon> out;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator();
       ++it) {
    Polygon p{std::stoi((*it)[1]), std::stoi((*it)[2]), (*it)[3], {}};
    std::istringstream pts((*it)[4].str());
    std::string pair;
    while (pts >> pair) {
      const auto comma = pair.find(',');
      p.points.emplace_back(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1)));
    }
    out.push_back(std::move(p));
  }
  return out;
}

FigureSpec example32_figure() {
  FigureSpec f;
  f.embedding = embed_n_dim(fixtures::example_two_voters());
  f.circle_voters = {1, 2};
  return f;
}

TEST(FormatFixed6, RoundsHalfAwayFromZero) {
  EXPECT_EQ(format_fixed6(Rational(0)), "0.000000");
  EXPECT_EQ(format_fixed6(Rational(1, 3)), "0.333333");
  EXPECT_EQ(format_fixed6(Rational(2, 3)), "0.666667");
  EXPECT_EQ(format_fixed6(Rational(-1, 2)), "-0.500000");
  EXPECT_EQ(format_fixed6(Rational(-1, 3000000)), "0.000000");
  EXPECT_EQ(format_fixed6(Rational(5, 2000000)), "0.000003");
  EXPECT_EQ(format_fixed6(Rational(-5, 2000000)), "-0.000003");
  EXPECT_EQ(format_fixed6(Rational(1234567)), "1234567.000000");
}

TEST(Render, DeterministicOutput) {
  const auto f = example32_figure();
  EXPECT_EQ(render_embedding(f), render_embedding(f));
  EXPECT_EQ(render_embedding(f), render_embedding(example32_figure()));
}

TEST(Render, Example32CircleFamilies) {
  const auto svg = render_embedding(example32_figure());
  const auto polys = polygons(svg);
  ASSERT_EQ(polys.size(), 10u);
  std::map<int, std::set<std::string>> radii;
  for (const auto& p : polys) radii[p.voter].insert(p.radius);
  const std::set<std::string> expected{"15", "17", "19", "21", "23"};
  EXPECT_EQ(radii[1], expected);
  EXPECT_EQ(radii[2], expected);
}

TEST(Render, VerticesAreCenterPlusMinusRadius) {
  const auto f = example32_figure();
  const auto polys = polygons(render_embedding(f));
  for (const auto& p : polys) {
    ASSERT_EQ(p.points.size(), 4u);
    const double r = std::stod(p.radius) * f.pixels_per_unit;
    const double cx = (p.points[0].first + p.points[2].first) / 2;
    const double cy = (p.points[1].second + p.points[3].second) / 2;
    EXPECT_DOUBLE_EQ(p.points[0].first - cx, r);
    EXPECT_DOUBLE_EQ(cx - p.points[2].first, r);
    EXPECT_DOUBLE_EQ(cy - p.points[1].second, r);  // y grows downwards in SVG
    EXPECT_DOUBLE_EQ(p.points[3].second - cy, r);
    EXPECT_DOUBLE_EQ(p.points[1].first, cx);
    EXPECT_DOUBLE_EQ(p.points[0].second, cy);
  }
}

TEST(Render, Example34CirclesForTwoVoters) {
  FigureSpec f;
  f.embedding = embed_m_dim(fixtures::example_three_alternatives());
  f.circle_voters = {2, 6};
  const auto svg = render_embedding(f);
  const auto polys = polygons(svg);
  ASSERT_EQ(polys.size(), 5u);
  EXPECT_NE(svg.find("class=\"degenerate-circle\" data-voter=\"2\" data-alternative=\"1\""),
            std::string::npos);
  std::map<int, std::vector<std::string>> radii;
  for (const auto& p : polys) radii[p.voter].push_back(p.radius);
  // v2 = (4,0): alternatives at (4,0), (0,4), (0,0) give 0, 8, 4 but the
  // zero radius is drawn as a point marker.
  EXPECT_EQ(radii[2], (std::vector<std::string>{"8", "4"}));
  EXPECT_EQ(radii[6], (std::vector<std::string>{"5", "3", "1"}));
}

TEST(Render, ZeroRadiusIsAPointMarker) {
  FigureSpec f;
  f.embedding = parse_embedding("2 1 1\n1 1\n1 1\n");
  f.circle_voters = {1};
  const auto svg = render_embedding(f);
  EXPECT_TRUE(polygons(svg).empty());
  EXPECT_NE(svg.find("class=\"degenerate-circle\""), std::string::npos);
}

TEST(Render, RejectsInvalidSpecs) {
  FigureSpec f;
  f.embedding = parse_embedding("1 1 1\n0\n1\n");
  EXPECT_THROW(render_embedding(f), std::invalid_argument);
  FigureSpec g = example32_figure();
  g.circle_voters = {3};
  EXPECT_THROW(render_embedding(g), std::out_of_range);
  FigureSpec h = example32_figure();
  h.viewport = Viewport{Rational(0), Rational(0), Rational(0), Rational(1)};
  EXPECT_THROW(render_embedding(h), std::invalid_argument);
}

TEST(Render, LabelsCanBeDisabled) {
  FigureSpec f = example32_figure();
  f.labels = false;
  EXPECT_EQ(render_embedding(f).find("<text"), std::string::npos);
  EXPECT_NE(render_embedding(example32_figure()).find(">v1</text>"), std::string::npos);
}

}  // namespace
}  // namespace mprefs
