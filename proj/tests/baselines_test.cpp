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
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ucvrp/backend.hpp"
#include "ucvrp/baselines.hpp"
#include "ucvrp/instance_io.hpp"

namespace {

using ucvrp::Point;

ucvrp::Instance random_instance(std::mt19937_64& rng, int n, double lo = 0.05, double hi = 1.0) {
    std::vector<std::pair<Point, double>> ts;
    for (int i = 0; i < n; ++i) {
        ts.push_back({{oracle::uniform(rng, -5, 5), oracle::uniform(rng, -5, 5)}, oracle::uniform(rng, lo, hi)});
    }
    return ucvrp::make_instance({0.1, 0.2}, ts);
}

ucvrp::BipartiteWeights random_graph(std::mt19937_64& rng, int max_side) {
    ucvrp::BipartiteWeights g;
    g.a_count = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_side));
    g.b_count = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_side));
    for (int b = 0; b < g.b_count; ++b) {
        double incident = 0.0;
        for (int a = 0; a < g.a_count; ++a) {
            if (rng() % 2 == 0) {
                const double w = oracle::uniform(rng, 0.0, 1.0);
                g.edge_weights[{a, b}] = w;
                incident += w;
            }
        }
        if (incident == 0.0) {
            const int a = static_cast<int>(rng() % static_cast<std::uint64_t>(g.a_count));
            const double w = oracle::uniform(rng, 0.01, 1.0);
            g.edge_weights[{a, b}] = w;
            incident = w;
        }
        g.b_weights.push_back(incident * oracle::uniform(rng, 0.0, 1.0));
    }
    return g;
}

double max_b_weight(const ucvrp::BipartiteWeights& g) {
    double m = 0.0;
    for (double w : g.b_weights) m = std::max(m, w);
    return m;
}

TEST(Assignment, TwoNeighboursOneB) {
    ucvrp::BipartiteWeights g{2, 1, {{{0, 0}, 0.1}, {{1, 0}, 0.1}}, {0.2}};
    const auto f = ucvrp::assignment_function(g);
    ASSERT_EQ(f.size(), 1u);
    EXPECT_TRUE(f[0] == 0 || f[0] == 1);
    const auto ex = ucvrp::assignment_excess(g, f);
    EXPECT_NEAR(ex[static_cast<std::size_t>(f[0])], 0.1, 1e-12);
    EXPECT_LE(ex[static_cast<std::size_t>(f[0])], 0.2);
}

TEST(Assignment, SingleNeighbourForced) {
    ucvrp::BipartiteWeights g{3, 3, {{{2, 0}, 0.5}, {{0, 1}, 0.4}, {{2, 2}, 0.3}}, {0.5, 0.2, 0.3}};
    const auto f = ucvrp::assignment_function(g);
    EXPECT_EQ(f, (std::vector<int>{2, 0, 2}));
    for (double e : ucvrp::assignment_excess(g, f)) EXPECT_LE(e, max_b_weight(g) + 1e-9);
}

TEST(Assignment, InvalidGraphsRejected) {
    ucvrp::BipartiteWeights orphan{1, 1, {}, {0.1}};
    EXPECT_THROW(ucvrp::assignment_function(orphan), std::invalid_argument);
    ucvrp::BipartiteWeights heavy{1, 1, {{{0, 0}, 0.1}}, {0.5}};
    EXPECT_THROW(ucvrp::assignment_function(heavy), std::invalid_argument);
    ucvrp::BipartiteWeights negative{1, 1, {{{0, 0}, -0.1}}, {0.0}};
    EXPECT_THROW(ucvrp::assignment_function(negative), std::invalid_argument);
}

TEST(Assignment, RandomGraphsMeetBoundAndExhaustiveSearchAgrees) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const auto g = random_graph(rng, trial % 2 ? 8 : 5);
        const auto f = ucvrp::assignment_function(g);
        ASSERT_EQ(f.size(), static_cast<std::size_t>(g.b_count));
        for (int b = 0; b < g.b_count; ++b) {
            EXPECT_TRUE(g.edge_weights.count({f[static_cast<std::size_t>(b)], b})) << "f(b) not a neighbour";
        }
        double worst = -INFINITY;
        for (double e : ucvrp::assignment_excess(g, f)) worst = std::max(worst, e);
        EXPECT_LE(worst, max_b_weight(g) + 1e-9);
        if (g.a_count <= 5 && g.b_count <= 5) {
            std::vector<std::vector<double>> w(static_cast<std::size_t>(g.a_count),
                                               std::vector<double>(static_cast<std::size_t>(g.b_count), -1.0));
            for (const auto& [e, x] : g.edge_weights) w[static_cast<std::size_t>(e.first)][static_cast<std::size_t>(e.second)] = x;
            const double best = oracle::best_max_excess(w, g.b_weights);
            EXPECT_LE(best, max_b_weight(g) + 1e-9);
            EXPECT_GE(worst, best - 1e-9);
        }
    }
}

TEST(ExactCvrp, CapacityForcesSplit) {
    const auto inst = ucvrp::make_instance({0, 0}, {{{1, 0}, 0.7}, {{-1, 0}, 0.7}});
    const auto r = ucvrp::exact_cvrp(inst);
    EXPECT_EQ(r.solution.tours.size(), 2u);
    EXPECT_NEAR(r.cost, 4.0, 1e-12);
}

TEST(ExactCvrp, CoLocatedHalves) {
    const auto inst = ucvrp::make_instance({0, 0}, {{{1, 0}, 0.5}, {{1, 0}, 0.5}, {{1, 0}, 0.5}});
    const auto r = ucvrp::exact_cvrp(inst);
    EXPECT_EQ(r.solution.tours.size(), 2u);
    EXPECT_NEAR(r.cost, 4.0, 1e-12);
}

TEST(ExactCvrp, SmallTotalDemandIsTsp) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = random_instance(rng, 6, 0.01, 0.16);
        const auto r = ucvrp::exact_cvrp(inst);
        EXPECT_EQ(r.solution.tours.size(), 1u);
        std::vector<Point> pts{inst.depot};
        for (const auto& t : inst.terminals) pts.push_back(t.location);
        EXPECT_NEAR(r.cost, oracle::brute_force_tsp(pts), 1e-9);
    }
}

TEST(ExactCvrp, MatchesPartitionEnumeration) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = random_instance(rng, 1 + trial % 7, 0.1, 0.8);
        const auto r = ucvrp::exact_cvrp(inst);
        EXPECT_TRUE(ucvrp::verify_solution(inst, r.solution).feasible());
        EXPECT_NEAR(r.cost, oracle::brute_force_cvrp(inst), 1e-9);
        EXPECT_NEAR(r.cost, ucvrp::solution_cost(inst, r.solution), 1e-9);
    }
}

TEST(ExactCvrp, TourCountWithinTwiceDemand) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 60; ++trial) {
        const auto inst = random_instance(rng, 1 + trial % 8, 0.05, 1.0);
        const auto r = ucvrp::exact_cvrp(inst);
        EXPECT_LE(static_cast<double>(r.solution.tours.size()), std::ceil(2 * ucvrp::total_demand(inst) - 1e-9));
    }
}

TEST(ExactCvrp, CapEnforced) {
    std::mt19937_64 rng(1);
    const auto inst = random_instance(rng, 11);
    EXPECT_THROW(ucvrp::exact_cvrp(inst), std::invalid_argument);
    EXPECT_THROW(ucvrp::exact_cvrp(random_instance(rng, 17), 20), std::invalid_argument);
    EXPECT_NO_THROW(ucvrp::exact_cvrp(inst, 11));
}

TEST(Itp, HeavyTerminalsGetDedicatedTours) {
    const auto params = ucvrp::derive_params(0.4);
    const auto inst = ucvrp::make_instance({0, 0}, {{{1, 0}, 0.6}, {{1, 0}, 0.6}, {{1, 0}, 0.6}});
    const std::vector<int> order{0, 1, 2};
    const auto s = ucvrp::itp_unsplittable(inst, order);
    EXPECT_EQ(s.tours.size(), 3u);
    EXPECT_NEAR(ucvrp::solution_cost(inst, s), 6.0, 1e-12);
    EXPECT_NEAR(ucvrp::itp_cost_bound(inst, order), 9.2, 1e-12);
    EXPECT_EQ(ucvrp::itp_unsplittable(inst, params).tours.size(), 3u);
}

TEST(Itp, LightTerminalsShareTheTspTour) {
    const auto inst = ucvrp::make_instance({0, 0}, {{{1, 0}, 0.1}, {{1, 1}, 0.2}, {{0, 1}, 0.15}});
    const std::vector<int> order{0, 1, 2};
    const auto s = ucvrp::itp_unsplittable(inst, order);
    ASSERT_EQ(s.tours.size(), 1u);
    EXPECT_EQ(s.tours[0].visits, order);
}

TEST(Itp, BoundHoldsOnRandomInstances) {
    const auto params = ucvrp::derive_params(0.4);
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = random_instance(rng, 1 + trial % 40);
        const auto order = ucvrp::depot_tsp_order(inst, params, static_cast<std::uint64_t>(trial));
        const auto s = ucvrp::itp_unsplittable(inst, order);
        EXPECT_TRUE(ucvrp::verify_solution(inst, s).feasible());
        EXPECT_LE(ucvrp::solution_cost(inst, s), ucvrp::itp_cost_bound(inst, order) + 1e-9);
    }
}

TEST(Itp, RejectsBadOrders) {
    const auto inst = ucvrp::make_instance({0, 0}, {{{1, 0}, 0.1}, {{2, 0}, 0.1}});
    EXPECT_THROW(ucvrp::itp_unsplittable(inst, std::vector<int>{0, 0}), std::invalid_argument);
    EXPECT_THROW(ucvrp::itp_unsplittable(inst, std::vector<int>{0}), std::invalid_argument);
}

TEST(Backend, CoLocatedPairOneTour) {
    const auto params = ucvrp::derive_params(0.4);
    const auto inst = ucvrp::make_instance({0, 0}, {{{2, 0}, 0.5}, {{2, 0}, 0.5}});
    EXPECT_EQ(ucvrp::backend_solve(inst, params).tours.size(), 1u);
}

TEST(Backend, ExactOnSmallInstances) {
    const auto params = ucvrp::derive_params(0.4);
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 30; ++trial) {
        const auto inst = random_instance(rng, 1 + trial % 8);
        EXPECT_NEAR(ucvrp::solution_cost(inst, ucvrp::backend_solve(inst, params)), ucvrp::exact_cvrp(inst).cost,
                    1e-9);
    }
}

TEST(Backend, LargeInstancesFeasibleAndLowerBounded) {
    const auto params = ucvrp::derive_params(0.4);
    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 5; ++trial) {
        const auto inst = random_instance(rng, 50);
        const auto s = ucvrp::backend_solve(inst, params);
        ASSERT_TRUE(ucvrp::verify_solution(inst, s).feasible());
        double bound = 0.0;
        for (const auto& t : s.tours) {
            double far = 0.0;
            for (int v : t.visits) far = std::max(far, inst.dist(v));
            bound += 2 * far;
        }
        EXPECT_GE(ucvrp::solution_cost(inst, s), bound - 1e-9);
    }
}

TEST(Backend, SavingsNeverWorseThanSingletons) {
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 10; ++trial) {
        const auto inst = random_instance(rng, 30, 0.05, 0.4);
        double singles = 0.0;
        for (const auto& t : inst.terminals) singles += 2 * inst.dist(t.id);
        EXPECT_LE(ucvrp::solution_cost(inst, ucvrp::savings_local_search(inst)), singles + 1e-9);
    }
}

}  // namespace
