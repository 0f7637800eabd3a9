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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ucvrp/polar_grid.hpp"

namespace {

using ucvrp::Point;

ucvrp::Params half_c2() { return ucvrp::derive_params(0.5, {.C = 2.0}); }

Point polar(double r, double th) { return {r * std::cos(th), r * std::sin(th)}; }

TEST(BuildGrid, CountsAndSpacing) {
    const auto params = half_c2();
    const auto g = ucvrp::build_grid(Point{0, 0}, 1.0, 2.0, params);
    EXPECT_EQ(g.rings(), 32u);
    EXPECT_EQ(g.spokes(), 202u);
    EXPECT_EQ(g.size(), 6464u);
    EXPECT_DOUBLE_EQ(g.radii.front(), 1.0);
    EXPECT_DOUBLE_EQ(g.radii[1] - g.radii[0], 0.0625);
    EXPECT_GE(g.radii.back(), 2.0);
    EXPECT_NEAR(ucvrp::distance(g.centers[5 * 202 + 7], polar(g.radii[5], 2 * std::numbers::pi * 7 / 202)), 0.0,
                1e-12);
}

TEST(BuildGrid, SingleTerminalRadiusRange) {
    const auto params = half_c2();
    const auto inst = ucvrp::make_instance({0, 0}, {{{0, 1}, 0.5}});
    const auto g = ucvrp::build_grid(inst, params);
    const double top = 1.0 + 0.0625 * (params.k1 - 1);
    for (const auto& c : g.centers) {
        const double r = std::hypot(c.x, c.y);
        EXPECT_GE(r, 1.0 - 1e-12);
        EXPECT_LE(r, top + 1e-12);
    }
}

TEST(BuildGrid, RejectsUnboundedDistance) {
    const auto params = half_c2();
    const auto inst = ucvrp::make_instance({0, 0}, {{{1, 0}, 0.5}, {{3, 0}, 0.5}});
    EXPECT_THROW(ucvrp::build_grid(inst, params), std::invalid_argument);
}

TEST(AssignCells, TerminalAtCenter) {
    const auto params = half_c2();
    const auto g = ucvrp::build_grid(Point{0, 0}, 1.0, 2.0, params);
    const std::size_t idx = 10 * 202 + 33;
    const auto inst = ucvrp::make_instance({0, 0}, {{g.centers[idx], 0.5}});
    const auto cells = ucvrp::assign_cells(inst, g);
    EXPECT_EQ(cells.owner.at(0), idx);
    EXPECT_EQ(cells.members.at(idx), std::vector<int>{0});
}

TEST(AssignCells, TieGoesToSmallerIndex) {
    // Hand-built grid: two centers at (±1, 0) around depot (0, 0).
    ucvrp::CenterGrid g;
    g.depot = {0, 0};
    g.epsilon = 0.5;
    g.d_min = 1.0;
    g.d_max = 1.0;
    g.radii = {1.0};
    g.angles = {0.0, std::numbers::pi};
    g.centers = {{1, 0}, {-1, 0}};
    EXPECT_EQ(ucvrp::nearest_center(g, {0, 1}), 0u);
    EXPECT_EQ(ucvrp::nearest_center(g, {0, -1}), 0u);
    EXPECT_EQ(ucvrp::nearest_center(g, {-0.9, 0.1}), 1u);
}

TEST(AssignCells, EquidistantCentersOnRealGrid) {
    const auto params = half_c2();
    const auto g = ucvrp::build_grid(Point{0, 0}, 1.0, 2.0, params);
    // Midpoint between ring 3's spokes 0 and 1 lies on their bisector.
    const Point p = polar(g.radii[3], std::numbers::pi / 202);
    const std::size_t a = 3 * 202, b = 3 * 202 + 1;
    ASSERT_NEAR(ucvrp::distance(p, g.centers[a]), ucvrp::distance(p, g.centers[b]), 1e-12);
    EXPECT_EQ(ucvrp::nearest_center(g, p), a);
}

TEST(AssignCells, RandomAnnulusWithinFact6Bound) {
    const auto params = half_c2();
    std::mt19937_64 rng(17);
    std::vector<std::pair<Point, double>> ts;
    ts.push_back({{1, 0}, 0.2});
    ts.push_back({{-2, 0}, 0.2});
    for (int i = 0; i < 198; ++i) {
        ts.push_back({polar(oracle::uniform(rng, 1, 2), oracle::uniform(rng, 0, 2 * std::numbers::pi)), 0.2});
    }
    const auto inst = ucvrp::make_instance({0, 0}, ts);
    const auto g = ucvrp::build_grid(inst, params);
    const auto cells = ucvrp::assign_cells(inst, g);
    ASSERT_EQ(cells.owner.size(), inst.size());
    for (const auto& [id, c] : cells.owner) {
        const Point p = inst.at(id).location;
        // Exhaustive scan agrees with the pruned search.
        std::size_t best = 0;
        for (std::size_t k = 1; k < g.size(); ++k) {
            if (ucvrp::distance(p, g.centers[k]) < ucvrp::distance(p, g.centers[best])) best = k;
        }
        EXPECT_EQ(c, best);
        EXPECT_LE(ucvrp::distance(p, g.centers[c]), 0.125 * g.d_min + 1e-12);
    }
    // owner and members are mutually inverse and partition the terminals
    std::size_t total = 0;
    for (const auto& [c, ids] : cells.members) {
        total += ids.size();
        EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
        for (int id : ids) EXPECT_EQ(cells.owner.at(id), c);
    }
    EXPECT_EQ(total, inst.size());
}

TEST(AssignCells, FilterAndOrderIndependence) {
    const auto params = half_c2();
    std::mt19937_64 rng(23);
    std::vector<std::pair<Point, double>> ts;
    for (int i = 0; i < 30; ++i) {
        ts.push_back({polar(oracle::uniform(rng, 1, 2), oracle::uniform(rng, 0, 6.28)), i % 2 ? 0.6 : 0.2});
    }
    const auto inst = ucvrp::make_instance({0, 0}, ts);
    const auto g = ucvrp::build_grid(inst, params);
    const auto small = ucvrp::assign_cells(inst, g, [](const ucvrp::Terminal& t) { return t.demand < 0.5; });
    EXPECT_EQ(small.owner.size(), 15u);
    const auto all = ucvrp::assign_cells(inst, g);
    EXPECT_EQ(ucvrp::assign_cells(inst, g).owner, all.owner);
    for (const auto& [id, c] : small.owner) EXPECT_EQ(all.owner.at(id), c);
}

TEST(AssignCells, OutsideAnnulusRejected) {
    const auto params = half_c2();
    const auto g = ucvrp::build_grid(Point{0, 0}, 1.0, 2.0, params);
    const auto inst = ucvrp::make_instance({0, 0}, {{{0.5, 0}, 0.2}});
    EXPECT_THROW(ucvrp::assign_cells(inst, g), std::invalid_argument);
    const auto edge = ucvrp::make_instance({0, 0}, {{{1.0 - 1e-12, 0}, 0.2}});
    EXPECT_NO_THROW(ucvrp::assign_cells(edge, g));
}

TEST(Fact6, CentersThemselves) {
    const auto params = half_c2();
    const auto g = ucvrp::build_grid(Point{0, 0}, 1.0, 2.0, params);
    std::vector<Point> inside;
    for (const auto& c : g.centers) {
        if (std::hypot(c.x, c.y) <= 2.0) inside.push_back(c);
    }
    const auto r = ucvrp::fact6_check(g, params, inside);
    EXPECT_EQ(r.max_distance, 0.0);
    EXPECT_TRUE(r.ok());
}

TEST(Fact6, DenseSampleWithinBound) {
    for (double C : {1.5, 2.0, 4.0}) {
        const auto params = ucvrp::derive_params(0.5, {.C = C});
        const auto g = ucvrp::build_grid(Point{1, -1}, 3.0, 3.0 * C, params);
        std::mt19937_64 rng(31);
        std::vector<Point> samples;
        for (int i = 0; i < 10000; ++i) {
            const Point q = polar(oracle::uniform(rng, 3.0, 3.0 * C), oracle::uniform(rng, 0, 2 * std::numbers::pi));
            samples.push_back({q.x + 1, q.y - 1});
        }
        const auto r = ucvrp::fact6_check(g, params, samples);
        EXPECT_TRUE(r.distance_ok()) << "C=" << C << " max=" << r.max_distance << " bound=" << r.bound;
        EXPECT_TRUE(r.count_ok());
        EXPECT_DOUBLE_EQ(r.bound, 0.25 * 3.0 / 2.0);
    }
}

TEST(Fact6, SampleOutsideRejected) {
    const auto params = half_c2();
    const auto g = ucvrp::build_grid(Point{0, 0}, 1.0, 2.0, params);
    const std::vector<Point> out{{2.5, 0}};
    EXPECT_THROW(ucvrp::fact6_check(g, params, out), std::invalid_argument);
}

}  // namespace
