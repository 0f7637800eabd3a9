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

// The polar lattice of centers around the depot and nearest-center cells.

#ifndef UCVRP_POLAR_GRID_HPP_
#define UCVRP_POLAR_GRID_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "ucvrp/core.hpp"

namespace ucvrp {

/// Centers at radii (1 + (ε²/4)·i)·D_min, 0 <= i < k1, and angles 2πj/k2,
/// 0 <= j < k2, around the depot. Center (i, j) is stored at i * k2 + j.
struct CenterGrid {
    Point depot;
    double epsilon = 0.0;
    double d_min = 0.0;
    double d_max = 0.0;
    std::vector<double> radii;
    std::vector<double> angles;
    std::vector<Point> centers;

    std::size_t rings() const { return radii.size(); }
    std::size_t spokes() const { return angles.size(); }
    std::size_t size() const { return centers.size(); }

    /// Every point of a cell lies within this distance of its center.
    double cell_radius_bound() const { return epsilon * epsilon * d_min / 2.0; }
    /// Analytic bound on a cell's boundary length; never measured.
    double cell_boundary_bound() const { return epsilon * epsilon * d_min; }
};

inline CenterGrid build_grid(Point depot, double d_min, double d_max, const Params& params) {
    if (!(d_min > 0.0) || !(d_max >= d_min)) {
        throw std::invalid_argument("grid needs 0 < D_min <= D_max");
    }
    if (d_max > params.C * d_min * (1.0 + kTolerance)) {
        throw std::invalid_argument("bounded-distance violation: D_max / D_min exceeds C");
    }
    CenterGrid grid;
    grid.depot = depot;
    grid.epsilon = params.epsilon;
    grid.d_min = d_min;
    grid.d_max = d_max;
    const double step = params.epsilon * params.epsilon / 4.0;
    for (int i = 0; i < params.k1; ++i) {
        grid.radii.push_back((1.0 + step * i) * d_min);
    }
    for (int j = 0; j < params.k2; ++j) {
        grid.angles.push_back(2.0 * std::numbers::pi * j / params.k2);
    }
    grid.centers.reserve(grid.radii.size() * grid.angles.size());
    for (double r : grid.radii) {
        for (double theta : grid.angles) {
            grid.centers.push_back({depot.x + r * std::cos(theta), depot.y + r * std::sin(theta)});
        }
    }
    return grid;
}

/// Grid for the annulus spanned by the instance's terminals.
inline CenterGrid build_grid(const Instance& instance, const Params& params) {
    const auto [d_min, d_max] = distance_extremes(instance);
    return build_grid(instance.depot, d_min, d_max, params);
}

/// Index of the closest center; ties go to the smaller index.
///
/// Only rings whose radius is within the distance of a first guess can hold a
/// closer center, so the scan is limited to those.
inline std::size_t nearest_center(const CenterGrid& grid, const Point& p) {
    if (grid.centers.empty()) {
        throw std::invalid_argument("nearest_center on an empty grid");
    }
    const double dx = p.x - grid.depot.x;
    const double dy = p.y - grid.depot.y;
    const double r = std::hypot(dx, dy);
    const std::size_t rings = grid.rings();
    const std::size_t spokes = grid.spokes();

    const double step = grid.rings() > 1 ? grid.radii[1] - grid.radii[0] : 1.0;
    const double ring_guess = std::clamp(std::round((r - grid.radii[0]) / step), 0.0, static_cast<double>(rings - 1));
    double theta = std::atan2(dy, dx);
    if (theta < 0) {
        theta += 2.0 * std::numbers::pi;
    }
    const auto spoke_guess =
        static_cast<std::size_t>(std::llround(theta / (2.0 * std::numbers::pi) * static_cast<double>(spokes))) % spokes;
    const double bound =
        distance(p, grid.centers[static_cast<std::size_t>(ring_guess) * spokes + spoke_guess]) * (1.0 + 1e-12) + 1e-12;

    std::size_t best = grid.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rings; ++i) {
        if (std::abs(grid.radii[i] - r) > bound) {
            continue;
        }
        for (std::size_t j = 0; j < spokes; ++j) {
            const std::size_t idx = i * spokes + j;
            const double d = distance(p, grid.centers[idx]);
            if (d < best_d) {
                best_d = d;
                best = idx;
            }
        }
    }
    return best;
}

/// Nearest-center cells of a subset of terminals.
struct CellAssignment {
    /// terminal id -> center index
    std::map<int, std::size_t> owner;
    /// center index -> terminal ids in ascending order
    std::map<std::size_t, std::vector<int>> members;
};

/// Assigns every terminal accepted by `which` to its nearest center.
///
/// Distances off the annulus by at most a relative 1e-9 are rounding noise and
/// accepted; anything further throws std::invalid_argument.
inline CellAssignment assign_cells(const Instance& instance, const CenterGrid& grid,
                                   const std::function<bool(const Terminal&)>& which) {
    CellAssignment out;
    for (const auto& t : instance.terminals) {
        if (!which(t)) {
            continue;
        }
        const double d = distance(grid.depot, t.location);
        if (d < grid.d_min * (1.0 - kTolerance) || d > grid.d_max * (1.0 + kTolerance)) {
            throw std::invalid_argument("terminal " + std::to_string(t.id) + " lies outside the grid annulus");
        }
        const std::size_t c = nearest_center(grid, t.location);
        out.owner[t.id] = c;
        out.members[c].push_back(t.id);
    }
    return out;
}

inline CellAssignment assign_cells(const Instance& instance, const CenterGrid& grid) {
    return assign_cells(instance, grid, [](const Terminal&) { return true; });
}

struct Fact6Report {
    double max_distance = 0.0;
    double bound = 0.0;
    std::size_t center_count = 0;
    std::size_t expected_center_count = 0;

    bool distance_ok() const { return max_distance <= bound + kTolerance; }
    bool count_ok() const { return center_count == expected_center_count; }
    bool ok() const { return distance_ok() && count_ok(); }
};

/// Measures the largest sample-to-nearest-center distance against ε²·D_min/2
/// and the center count against k1·k2. Samples off the annulus are rejected
/// with std::invalid_argument.
inline Fact6Report fact6_check(const CenterGrid& grid, const Params& params, std::span<const Point> samples) {
    Fact6Report report;
    report.bound = grid.cell_radius_bound();
    report.center_count = grid.size();
    report.expected_center_count = static_cast<std::size_t>(params.k1) * static_cast<std::size_t>(params.k2);
    for (const Point& p : samples) {
        const double d = distance(grid.depot, p);
        if (d < grid.d_min * (1.0 - kTolerance) || d > grid.d_max * (1.0 + kTolerance)) {
            throw std::invalid_argument("sample lies outside the grid annulus");
        }
        report.max_distance = std::max(report.max_distance, distance(p, grid.centers[nearest_center(grid, p)]));
    }
    return report;
}

}  // namespace ucvrp

#endif  // UCVRP_POLAR_GRID_HPP_
