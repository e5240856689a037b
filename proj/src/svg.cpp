// Copyright 2026 The rectlab Authors
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

#include "rectlab/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace rectlab {
namespace {

constexpr double kSize = 600.0;
constexpr double kMargin = 40.0;

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

class Canvas {
 public:
  Canvas(double xmin, double ymin, double xmax, double ymax)
      : xmin_(xmin), ymin_(ymin), span_(std::max({xmax - xmin, ymax - ymin, 1e-300})) {
    out_ = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Num(kSize) +
           "\" height=\"" + Num(kSize) + "\" viewBox=\"0 0 " + Num(kSize) + " " + Num(kSize) +
           "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  double X(double x) const { return kMargin + (x - xmin_) / span_ * (kSize - 2 * kMargin); }
  double Y(double y) const { return kSize - kMargin - (y - ymin_) / span_ * (kSize - 2 * kMargin); }

  void Axes() {
    const double lo = kMargin;
    const double hi = kSize - kMargin;
    Line(lo, hi, hi, hi, "black", 1.0);
    Line(lo, hi, lo, lo, "black", 1.0);
    Text(lo, hi + 16, Num(xmin_));
    Text(hi - 30, hi + 16, Num(xmin_ + span_));
    Text(4, hi, Num(ymin_));
    Text(4, lo + 4, Num(ymin_ + span_));
  }

  void Line(double x0, double y0, double x1, double y1, const char* color, double width) {
    out_ += "<line x1=\"" + Num(x0) + "\" y1=\"" + Num(y0) + "\" x2=\"" + Num(x1) + "\" y2=\"" +
            Num(y1) + "\" stroke=\"" + color + "\" stroke-width=\"" + Num(width) + "\"/>\n";
  }
  void Rect(double x0, double y0, double w, double h, const char* fill, const char* stroke) {
    out_ += "<rect x=\"" + Num(x0) + "\" y=\"" + Num(y0) + "\" width=\"" + Num(w) +
            "\" height=\"" + Num(h) + "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\"/>\n";
  }
  void Dot(double x, double y, const char* color) {
    out_ += "<circle cx=\"" + Num(x) + "\" cy=\"" + Num(y) + "\" r=\"1.2\" fill=\"" + color + "\"/>\n";
  }
  void Text(double x, double y, const std::string& text) {
    out_ += "<text x=\"" + Num(x) + "\" y=\"" + Num(y) +
            "\" font-family=\"monospace\" font-size=\"11\">" + text + "</text>\n";
  }
  std::string Finish() { return out_ + "</svg>\n"; }

 private:
  double xmin_, ymin_, span_;
  std::string out_;
};

bool Has(const Json& d, const char* key) { return d.contains(key) && d.at(key).is_array(); }

double Coord(const Json& p, std::size_t i) { return i < p.size() ? p[i].get<double>() : 0.0; }

std::string Scene(const Json& d) {
  double b[4] = {0.0, 0.0, 1.0, 1.0};
  if (Has(d, "bounds") && d.at("bounds").size() == 4) {
    for (int i = 0; i < 4; ++i) b[i] = d.at("bounds")[i].get<double>();
  }
  Canvas c(b[0], b[1], b[2], b[3]);
  c.Axes();
  std::vector<std::string> notes;
  if (Has(d, "cells")) {
    for (const Json& r : d.at("cells")) {
      const double x0 = c.X(Coord(r, 0));
      const double y1 = c.Y(Coord(r, 1));
      const double x1 = c.X(Coord(r, 2));
      const double y0 = c.Y(Coord(r, 3));
      c.Rect(x0, y0, x1 - x0, y1 - y0, "#dde8f6", "#9db4d8");
    }
  } else {
    notes.push_back("no cells");
  }
  if (Has(d, "skeleton")) {
    for (const Json& r : d.at("skeleton")) {
      c.Line(c.X(Coord(r, 0)), c.Y(Coord(r, 1)), c.X(Coord(r, 2)), c.Y(Coord(r, 3)), "#888888", 0.6);
    }
  } else {
    notes.push_back("no skeleton");
  }
  if (Has(d, "points")) {
    for (const Json& p : d.at("points")) c.Dot(c.X(Coord(p, 0)), c.Y(Coord(p, 1)), "#1f4e9c");
  } else {
    notes.push_back("no points");
  }
  if (Has(d, "image")) {
    for (const Json& p : d.at("image")) c.Dot(c.X(Coord(p, 0)), c.Y(Coord(p, 1)), "#c0392b");
  } else {
    notes.push_back("no image");
  }
  double y = 14;
  for (const std::string& note : notes) {
    c.Text(kMargin, y, "panel skipped: " + note);
    y += 12;
  }
  return c.Finish();
}

std::string Bars(const Json& values) {
  double top = 0.0;
  for (const Json& v : values) top = std::max(top, v.get<double>());
  if (!(top > 0.0)) top = 1.0;
  Canvas c(0.0, 0.0, 1.0, 1.0);
  c.Axes();
  const double width = (kSize - 2 * kMargin) / std::max<std::size_t>(values.size(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double h = values[i].get<double>() / top * (kSize - 2 * kMargin);
    c.Rect(kMargin + i * width, kSize - kMargin - h, width * 0.8, h, "#1f4e9c", "none");
  }
  c.Text(kMargin, 14, "shadow per direction, max " + Num(top));
  return c.Finish();
}

}  // namespace

std::vector<std::pair<std::string, std::string>> RenderPanels(const Json& data) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("scene.svg", Scene(data));
  if (Has(data, "shadows")) out.emplace_back("shadows.svg", Bars(data.at("shadows")));
  return out;
}

}  // namespace rectlab
