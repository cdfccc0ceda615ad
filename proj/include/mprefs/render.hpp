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

// SVG figures of 2D embeddings. An L1 circle of radius r around c is the
// square with vertices c +- (r, 0) and c +- (0, r).

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mprefs/geometry.hpp"
#include "mprefs/rational.hpp"

namespace mprefs {

struct Viewport {
  Rational xmin, xmax, ymin, ymax;
};

struct FigureSpec {
  Embedding embedding;
  // Voters (1-based) that get one circle per alternative.
  std::vector<int> circle_voters;
  int pixels_per_unit = 20;
  // Defaults to the points' bounding box padded by `padding` units.
  std::optional<Viewport> viewport;
  int padding = 2;
  bool labels = true;
};

inline constexpr std::array<const char*, 8> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

inline const char* voter_color(int voter) { return kPalette[(voter - 1) % kPalette.size()]; }

// Fixed six-decimal rendering of an exact rational (round half away from zero).
inline std::string format_fixed6(const Rational& value) {
  mpq_class q = value.to_mpq() * 1000000;
  const bool negative = sgn(q) < 0;
  if (negative) q = -q;
  mpz_class scaled = (q.get_num() * 2 + q.get_den()) / (q.get_den() * 2);
  std::string digits = scaled.get_str();
  if (digits.size() < 7) digits.insert(0, 7 - digits.size(), '0');
  std::string out = digits.substr(0, digits.size() - 6) + "." + digits.substr(digits.size() - 6);
  if (negative && scaled != 0) out.insert(0, "-");
  return out;
}

namespace detail {

class Canvas {
 public:
  Canvas(const Viewport& vp, int ppu, int margin_px)
      : vp_(vp), ppu_(ppu), margin_(margin_px) {}

  Rational sx(const Rational& x) const { return Rational(margin_) + (x - vp_.xmin) * Rational(ppu_); }
  Rational sy(const Rational& y) const { return Rational(margin_) + (vp_.ymax - y) * Rational(ppu_); }
  Rational width() const { return Rational(2 * margin_) + (vp_.xmax - vp_.xmin) * Rational(ppu_); }
  Rational height() const { return Rational(2 * margin_) + (vp_.ymax - vp_.ymin) * Rational(ppu_); }

 private:
  Viewport vp_;
  int ppu_;
  int margin_;
};

inline Rational floor_of(const Rational& r) {
  mpz_class f;
  const mpq_class q = r.to_mpq();
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(mpq_class(f));
}

inline Rational ceil_of(const Rational& r) {
  mpz_class c;
  const mpq_class q = r.to_mpq();
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(mpq_class(c));
}

}  // namespace detail

inline Viewport default_viewport(const Embedding& e, int padding) {
  std::vector<const Point*> pts;
  for (const auto& p : e.voters) pts.push_back(&p);
  for (const auto& p : e.alternatives) pts.push_back(&p);
  if (pts.empty()) return {Rational(-padding), Rational(padding), Rational(-padding), Rational(padding)};
  Viewport vp{(*pts[0])[0], (*pts[0])[0], (*pts[0])[1], (*pts[0])[1]};
  for (const Point* p : pts) {
    vp.xmin = std::min(vp.xmin, (*p)[0]);
    vp.xmax = std::max(vp.xmax, (*p)[0]);
    vp.ymin = std::min(vp.ymin, (*p)[1]);
    vp.ymax = std::max(vp.ymax, (*p)[1]);
  }
  vp.xmin = detail::floor_of(vp.xmin) - Rational(padding);
  vp.ymin = detail::floor_of(vp.ymin) - Rational(padding);
  vp.xmax = detail::ceil_of(vp.xmax) + Rational(padding);
  vp.ymax = detail::ceil_of(vp.ymax) + Rational(padding);
  return vp;
}

inline std::string render_embedding(const FigureSpec& f) {
  const Embedding& e = f.embedding;
  e.validate();
  if (e.dimension != 2) throw std::invalid_argument("only 2D embeddings can be rendered");
  if (f.pixels_per_unit < 1) throw std::invalid_argument("pixels_per_unit must be positive");
  for (int v : f.circle_voters) {
    if (v < 1 || v > static_cast<int>(e.voters.size())) {
      throw std::out_of_range("circle voter " + std::to_string(v) + " out of range");
    }
  }
  const Viewport vp = f.viewport.value_or(default_viewport(e, f.padding));
  if (!(vp.xmin < vp.xmax) || !(vp.ymin < vp.ymax)) throw std::invalid_argument("empty viewport");
  constexpr int kMargin = 30;
  const detail::Canvas cv(vp, f.pixels_per_unit, kMargin);
  auto fx = [&](const Rational& x) { return format_fixed6(cv.sx(x)); };
  auto fy = [&](const Rational& y) { return format_fixed6(cv.sy(y)); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << format_fixed6(cv.width()) << "\" height=\"" << format_fixed6(cv.height())
      << "\" viewBox=\"0 0 " << format_fixed6(cv.width()) << " " << format_fixed6(cv.height())
      << "\">\n";
  svg << "<defs><clipPath id=\"plot-area\"><rect x=\"" << fx(vp.xmin) << "\" y=\"" << fy(vp.ymax)
      << "\" width=\"" << format_fixed6((vp.xmax - vp.xmin) * Rational(f.pixels_per_unit))
      << "\" height=\"" << format_fixed6((vp.ymax - vp.ymin) * Rational(f.pixels_per_unit))
      << "\"/></clipPath></defs>\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Grid at integer coordinates, thinned for wide viewports.
  const Rational span = std::max(vp.xmax - vp.xmin, vp.ymax - vp.ymin);
  const Rational step = std::max(Rational(1), detail::ceil_of(span / Rational(50)));
  svg << "<g class=\"grid\" stroke=\"#e0e0e0\" stroke-width=\"1\">\n";
  for (Rational x = detail::ceil_of(vp.xmin / step) * step; x <= vp.xmax; x += step) {
    svg << "<line x1=\"" << fx(x) << "\" y1=\"" << fy(vp.ymin) << "\" x2=\"" << fx(x)
        << "\" y2=\"" << fy(vp.ymax) << "\"/>\n";
  }
  for (Rational y = detail::ceil_of(vp.ymin / step) * step; y <= vp.ymax; y += step) {
    svg << "<line x1=\"" << fx(vp.xmin) << "\" y1=\"" << fy(y) << "\" x2=\"" << fx(vp.xmax)
        << "\" y2=\"" << fy(y) << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g class=\"axes\" stroke=\"#404040\" stroke-width=\"1.5\">\n";
  if (vp.ymin <= Rational(0) && Rational(0) <= vp.ymax) {
    svg << "<line x1=\"" << fx(vp.xmin) << "\" y1=\"" << fy(0) << "\" x2=\"" << fx(vp.xmax)
        << "\" y2=\"" << fy(0) << "\"/>\n";
  }
  if (vp.xmin <= Rational(0) && Rational(0) <= vp.xmax) {
    svg << "<line x1=\"" << fx(0) << "\" y1=\"" << fy(vp.ymin) << "\" x2=\"" << fx(0)
        << "\" y2=\"" << fy(vp.ymax) << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g class=\"circles\" clip-path=\"url(#plot-area)\" fill=\"none\" stroke-width=\"1.5\">\n";
  for (int v : f.circle_voters) {
    const Point& c = e.voter(v);
    for (int a = 1; a <= static_cast<int>(e.alternatives.size()); ++a) {
      const Rational r = manhattan(c, e.alternative(a));
      if (r.is_zero()) {
        svg << "<circle class=\"degenerate-circle\" data-voter=\"" << v << "\" data-alternative=\""
            << a << "\" cx=\"" << fx(c[0]) << "\" cy=\"" << fy(c[1]) << "\" r=\"3.000000\" fill=\""
            << voter_color(v) << "\"/>\n";
        continue;
      }
      svg << "<polygon class=\"manhattan-circle\" data-voter=\"" << v << "\" data-alternative=\""
          << a << "\" data-radius=\"" << r.to_string() << "\" stroke=\"" << voter_color(v)
          << "\" points=\"" << fx(c[0] + r) << "," << fy(c[1]) << " " << fx(c[0]) << ","
          << fy(c[1] + r) << " " << fx(c[0] - r) << "," << fy(c[1]) << " " << fx(c[0]) << ","
          << fy(c[1] - r) << "\"/>\n";
    }
  }
  svg << "</g>\n";

  svg << "<g class=\"alternatives\">\n";
  for (int a = 1; a <= static_cast<int>(e.alternatives.size()); ++a) {
    const Point& p = e.alternative(a);
    svg << "<circle class=\"alternative\" data-alternative=\"" << a << "\" cx=\"" << fx(p[0])
        << "\" cy=\"" << fy(p[1]) << "\" r=\"5.000000\" fill=\"white\" stroke=\"black\"/>\n";
    if (f.labels) {
      svg << "<text x=\"" << fx(p[0]) << "\" y=\"" << fy(p[1])
          << "\" dx=\"7\" dy=\"-7\" font-family=\"sans-serif\" font-size=\"12\">" << a
          << "</text>\n";
    }
  }
  svg << "</g>\n";

  svg << "<g class=\"voters\">\n";
  for (int v = 1; v <= static_cast<int>(e.voters.size()); ++v) {
    const Point& p = e.voter(v);
    svg << "<rect class=\"voter\" data-voter=\"" << v << "\" x=\""
        << format_fixed6(cv.sx(p[0]) - Rational(4)) << "\" y=\""
        << format_fixed6(cv.sy(p[1]) - Rational(4)) << "\" width=\"8.000000\" height=\"8.000000\" fill=\""
        << voter_color(v) << "\"/>\n";
    if (f.labels) {
      svg << "<text x=\"" << fx(p[0]) << "\" y=\"" << fy(p[1])
          << "\" dx=\"7\" dy=\"14\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
          << voter_color(v) << "\">v" << v << "</text>\n";
    }
  }
  svg << "</g>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace mprefs
