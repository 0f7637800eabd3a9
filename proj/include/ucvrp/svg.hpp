// Copyright 2026 The ucvrp Authors
//
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

// SVG 1.1 route plots.

#ifndef UCVRP_SVG_HPP_
#define UCVRP_SVG_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ucvrp/core.hpp"
#include "ucvrp/instance_io.hpp"

namespace ucvrp {

struct SvgStyle {
    double size = 800.0;
    double margin = 20.0;
    double min_radius = 2.0;
    double demand_radius = 6.0;
};

namespace detail {

inline std::string fixed3(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

// Golden-angle hue steps keep neighbouring tours apart.
inline std::string tour_color(std::size_t k) {
    const double hue = std::fmod(static_cast<double>(k) * 137.50776405003785, 360.0);
    return "hsl(" + fixed3(hue) + ",70%,45%)";
}

}  // namespace detail

/// Renders depot (square), terminals (circles, area grows with demand) and one
/// polyline per tour including its detours.
inline std::string render_svg(const Instance& instance, const Solution& solution, const SvgStyle& style = {}) {
    std::vector<std::vector<Point>> lines;
    lines.reserve(solution.tours.size());
    for (const auto& t : solution.tours) {
        lines.push_back(tour_polyline(instance, t));
    }

    double lo_x = instance.depot.x, hi_x = lo_x, lo_y = instance.depot.y, hi_y = lo_y;
    auto grow = [&](const Point& p) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    };
    for (const auto& t : instance.terminals) grow(t.location);
    for (const auto& line : lines) {
        for (const auto& p : line) grow(p);
    }
    const double extent = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
    const double scale = (style.size - 2.0 * style.margin) / extent;
    auto px = [&](double x) { return style.margin + (x - lo_x) * scale; };
    auto py = [&](double y) { return style.size - style.margin - (y - lo_y) * scale; };
    auto sx = [&](double x) { return detail::fixed3(px(x)); };
    auto sy = [&](double y) { return detail::fixed3(py(y)); };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + detail::fixed3(style.size) +
           "\" height=\"" + detail::fixed3(style.size) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t k = 0; k < lines.size(); ++k) {
        out += "<polyline class=\"tour\" fill=\"none\" stroke-width=\"1.5\" stroke=\"" + detail::tour_color(k) +
               "\" points=\"";
        for (std::size_t i = 0; i < lines[k].size(); ++i) {
            if (i) out += ' ';
            out += sx(lines[k][i].x) + "," + sy(lines[k][i].y);
        }
        out += "\"/>\n";
    }
    for (const auto& t : instance.terminals) {
        const double r = style.min_radius + style.demand_radius * std::sqrt(t.demand);
        out += "<circle class=\"terminal\" cx=\"" + sx(t.location.x) + "\" cy=\"" + sy(t.location.y) + "\" r=\"" +
               detail::fixed3(r) + "\" fill=\"#444\" fill-opacity=\"0.6\"/>\n";
    }
    const double half = 6.0;
    out += "<rect class=\"depot\" x=\"" + detail::fixed3(px(instance.depot.x) - half) + "\" y=\"" +
           detail::fixed3(py(instance.depot.y) - half) + "\" width=\"12\" height=\"12\" fill=\"black\"/>\n";
    out += "</svg>\n";
    return out;
}

inline void emit_svg(const Instance& instance, const Solution& solution, const std::string& path,
                     const SvgStyle& style = {}) {
    write_text_file(path, render_svg(instance, solution, style));
}

}  // namespace ucvrp

#endif  // UCVRP_SVG_HPP_
