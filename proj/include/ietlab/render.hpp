#pragma once

// SVG drawing of one strip level. The unit square [0, |alpha|] x [0, 1] is
// drawn inside a 400 x 400 image; output depends only on the exact inputs.

#include <cstdio>
#include <set>
#include <sstream>
#include <string>

#include "suspension.hpp"

namespace ietlab {

struct SvgLayout {
  double canvas = 400;       // width and height of the image
  double square = 280;       // side of the drawn domain square
  double margin = 60;        // space around the square for labels
  double box_height = 0.25;  // boxes Z(i) and Z'(i), as a fraction of the square
  double font_size = 10;
  double tick = 6;
  double label_offset = 14;
  const char* box_fill = "#d9d9d9";
  const char* column_fill = "#bfbfbf";
  const char* line_dash = "4 3";
  const char* stroke = "#000000";
  const char* strip_text = "#1f4e9c";
};

inline constexpr SvgLayout svg_layout{};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

inline std::string render_strip_level(const Iet& t, const StripLevel& L, const SvgLayout& lay = svg_layout) {
  using detail::fmt;
  const double len = t.length().to_double();
  const double side = lay.square, m = lay.margin, total = lay.canvas;
  auto X = [&](const QuadReal& x) { return m + side * x.to_double() / len; };
  auto Y = [&](double u) { return m + side * (1.0 - u); };  // u = 0 bottom, 1 top
  const double hb = lay.box_height;
  int n = t.size();

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(total) << "\" height=\"" << fmt(total)
    << "\" viewBox=\"0 0 " << fmt(total) << ' ' << fmt(total) << "\">\n";
  o << "<g font-family=\"monospace\" font-size=\"" << fmt(lay.font_size) << "\">\n";
  o << "<text x=\"" << fmt(m) << "\" y=\"" << fmt(m / 3) << "\">level " << L.level << ", K = " << L.K << "</text>\n";

  auto rect = [&](const QuadReal& a, const QuadReal& b, double u0, double u1, const char* fill) {
    o << "<rect x=\"" << fmt(X(a)) << "\" y=\"" << fmt(Y(u1)) << "\" width=\"" << fmt(X(b) - X(a)) << "\" height=\""
      << fmt(Y(u0) - Y(u1)) << "\" fill=\"" << fill << "\" stroke=\"" << lay.stroke << "\" stroke-width=\"0.5\"/>\n";
  };
  // Columns at both ends, then the top and bottom boxes.
  rect(QuadReal(), L.left_edge(), 0, 1, lay.column_fill);
  rect(L.right_edge(), t.length(), 0, 1, lay.column_fill);
  for (int i = 1; i < n; ++i) {
    rect(L.marker(0, i).x, L.marker(1, i).x, 1 - hb, 1, lay.box_fill);
    rect(L.marker(0, i, true).x, L.marker(1, i, true).x, 0, hb, lay.box_fill);
  }
  o << "<rect x=\"" << fmt(m) << "\" y=\"" << fmt(m) << "\" width=\"" << fmt(side) << "\" height=\"" << fmt(side)
    << "\" fill=\"none\" stroke=\"" << lay.stroke << "\"/>\n";

  // Segment boundaries: from the bottom box (or edge) to the top box (or edge).
  std::set<QuadReal> bottom_corners, top_corners;
  for (const auto& mk : L.markers_prime) bottom_corners.insert(mk.x);
  for (const auto& mk : L.markers) top_corners.insert(mk.x);
  std::set<QuadReal> cuts;
  for (const auto& s : L.segments) {
    cuts.insert(s.left);
    cuts.insert(s.right);
  }
  for (const auto& x : cuts) {
    double u0 = bottom_corners.count(x) ? hb : 0, u1 = top_corners.count(x) ? 1 - hb : 1;
    o << "<line x1=\"" << fmt(X(x)) << "\" y1=\"" << fmt(Y(u0)) << "\" x2=\"" << fmt(X(x)) << "\" y2=\"" << fmt(Y(u1))
      << "\" stroke=\"" << lay.stroke << "\" stroke-dasharray=\"" << lay.line_dash << "\"/>\n";
  }

  // beta ticks on top, beta' ticks below.
  for (int i = 0; i <= n; ++i) {
    double xt = X(t.beta(i)), xb = X(t.beta_prime(i));
    o << "<line x1=\"" << fmt(xt) << "\" y1=\"" << fmt(m - lay.tick) << "\" x2=\"" << fmt(xt) << "\" y2=\"" << fmt(m)
      << "\" stroke=\"" << lay.stroke << "\"/>\n";
    o << "<text x=\"" << fmt(xt) << "\" y=\"" << fmt(m - lay.tick - 2) << "\" text-anchor=\"middle\">b" << i
      << "</text>\n";
    o << "<line x1=\"" << fmt(xb) << "\" y1=\"" << fmt(m + side) << "\" x2=\"" << fmt(xb) << "\" y2=\""
      << fmt(m + side + lay.tick) << "\" stroke=\"" << lay.stroke << "\"/>\n";
    o << "<text x=\"" << fmt(xb) << "\" y=\"" << fmt(m + side + lay.tick + lay.label_offset)
      << "\" text-anchor=\"middle\">b'" << i << "</text>\n";
  }

  // T^k(0) labels for every marker, rotated under the square.
  std::set<std::pair<QuadReal, long>> labels;
  for (const auto& mk : L.markers) labels.insert({mk.x, mk.k});
  for (const auto& mk : L.markers_prime) labels.insert({mk.x, mk.k});
  for (const auto& [x, k] : labels) {
    double lx = X(x), ly = m + side + lay.tick + 2 * lay.label_offset;
    o << "<text x=\"" << fmt(lx) << "\" y=\"" << fmt(ly) << "\" transform=\"rotate(90 " << fmt(lx) << ' ' << fmt(ly)
      << ")\">T^" << k << "(0)</text>\n";
  }

  // Strip numbers at mid-height of every segment.
  for (std::size_t a = 0; a < L.strips.size(); ++a)
    for (int si : L.strips[a].segments) {
      const auto& s = L.segments[static_cast<std::size_t>(si)];
      double cx = (X(s.left) + X(s.right)) / 2;
      o << "<text x=\"" << fmt(cx) << "\" y=\"" << fmt(Y(0.5)) << "\" text-anchor=\"middle\" fill=\"" << lay.strip_text
        << "\">" << a + 1 << "</text>\n";
    }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace ietlab
