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

#include <algorithm>
#include <numbers>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ucvrp/tsp.hpp"

namespace {

using ucvrp::Point;

std::vector<Point> random_points(std::mt19937_64& rng, int n) {
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back({oracle::uniform(rng, 0, 10), oracle::uniform(rng, 0, 10)});
    return pts;
}

bool is_permutation_of_range(const std::vector<int>& order, std::size_t n) {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != static_cast<int>(i)) return false;
    }
    return sorted.size() == n;
}

TEST(ExactTsp, SinglePoint) {
    const std::vector<Point> pts{{3, 3}};
    const auto r = ucvrp::exact_tsp(pts);
    EXPECT_EQ(r.cost, 0.0);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.order, std::vector<int>{0});
}

TEST(ExactTsp, UnitSquarePerimeter) {
    const std::vector<Point> pts{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
    const auto r = ucvrp::exact_tsp(pts);
    EXPECT_NEAR(r.cost, 4.0, 1e-12);
    ASSERT_EQ(r.order.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(ucvrp::distance(pts[static_cast<std::size_t>(r.order[i])],
                                    pts[static_cast<std::size_t>(r.order[(i + 1) % 4])]),
                    1.0, 1e-12);
    }
}

TEST(ExactTsp, MatchesBruteForceOnEightPoints) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pts = random_points(rng, 8);
        const auto r = ucvrp::exact_tsp(pts);
        EXPECT_NEAR(r.cost, oracle::brute_force_tsp(pts), 1e-9);
        EXPECT_TRUE(is_permutation_of_range(r.order, pts.size()));
        EXPECT_NEAR(r.cost, ucvrp::closed_tour_length(pts, r.order), 1e-9);
        EXPECT_EQ(r.order.front(), 0);
    }
}

TEST(ExactTsp, RejectsTooManyPoints) {
    std::mt19937_64 rng(1);
    EXPECT_THROW(ucvrp::exact_tsp(random_points(rng, 16), 15), std::invalid_argument);
}

TEST(HeuristicTsp, CollinearPoints) {
    const std::vector<Point> pts{{0, 0}, {2, 0}, {1, 0}};
    const auto r = ucvrp::heuristic_tsp(pts, 0);
    EXPECT_NEAR(r.cost, 4.0, 1e-12);
    EXPECT_FALSE(r.exact);
}

TEST(HeuristicTsp, UnitSquare) {
    const std::vector<Point> pts{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        EXPECT_NEAR(ucvrp::heuristic_tsp(pts, seed).cost, ucvrp::exact_tsp(pts).cost, 1e-12);
    }
}

TEST(HeuristicTsp, NeverBeatsExact) {
    std::mt19937_64 rng(9);
    double worst = 1.0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto pts = random_points(rng, 4 + trial % 9);
        const double exact = ucvrp::exact_tsp(pts).cost;
        const auto h = ucvrp::heuristic_tsp(pts, static_cast<std::uint64_t>(trial));
        EXPECT_GE(h.cost, exact - 1e-9);
        EXPECT_TRUE(is_permutation_of_range(h.order, pts.size()));
        worst = std::max(worst, h.cost / exact);
    }
    RecordProperty("worst_heuristic_ratio", std::to_string(worst));
}

TEST(HeuristicTsp, NoImprovingTwoExchangeRemains) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const auto pts = random_points(rng, 60);
        const auto r = ucvrp::heuristic_tsp(pts, static_cast<std::uint64_t>(trial));
        const std::size_t n = r.order.size();
        auto at = [&](std::size_t k) { return pts[static_cast<std::size_t>(r.order[k % n])]; };
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;
                const double before = ucvrp::distance(at(i), at(i + 1)) + ucvrp::distance(at(j), at(j + 1));
                const double after = ucvrp::distance(at(i), at(j)) + ucvrp::distance(at(i + 1), at(j + 1));
                EXPECT_GE(after - before, -1e-9) << "i=" << i << " j=" << j;
            }
        }
    }
}

TEST(HeuristicTsp, DeterministicInSeed) {
    std::mt19937_64 rng(2);
    const auto pts = random_points(rng, 40);
    EXPECT_EQ(ucvrp::heuristic_tsp(pts, 3).order, ucvrp::heuristic_tsp(pts, 3).order);
}

TEST(TspDispatch, ExactBelowThresholdHeuristicAbove) {
    const auto params = ucvrp::derive_params(0.4);
    std::mt19937_64 rng(4);
    EXPECT_TRUE(ucvrp::tsp(random_points(rng, 3), params).exact);
    EXPECT_FALSE(ucvrp::tsp(random_points(rng, 50), params).exact);
    EXPECT_THROW(ucvrp::tsp(std::vector<Point>{}, params), std::invalid_argument);
}

TEST(TspDispatch, CostInvariantUnderInputPermutation) {
    const auto params = ucvrp::derive_params(0.4);
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        auto pts = random_points(rng, 9);
        const double a = ucvrp::tsp(pts, params).cost;
        std::shuffle(pts.begin(), pts.end(), rng);
        EXPECT_NEAR(ucvrp::tsp(pts, params).cost, a, 1e-9);
    }
}

}  // namespace
