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

// Traveling salesman subroutines: Held-Karp for small point sets and
// nearest neighbor + 2-opt beyond that.

#ifndef UCVRP_TSP_HPP_
#define UCVRP_TSP_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucvrp/core.hpp"

namespace ucvrp {

struct TspResult {
    /// Permutation of the input indices; the tour closes back to order[0].
    std::vector<int> order;
    double cost = 0.0;
    /// Set only by the Held-Karp path.
    bool exact = false;
};

/// Hard ceiling on exact_tsp regardless of Params, to keep the 2^n table sane.
inline constexpr int kHeldKarpMaxPoints = 20;

inline double closed_tour_length(std::span<const Point> points, std::span<const int> order) {
    if (order.size() < 2) {
        return 0.0;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto a = static_cast<std::size_t>(order[i]);
        const auto b = static_cast<std::size_t>(order[(i + 1) % order.size()]);
        sum += distance(points[a], points[b]);
    }
    return sum;
}

/// Optimal closed tour by Held-Karp bitmask dynamic programming, anchored at
/// point 0.
inline TspResult exact_tsp(std::span<const Point> points, int max_points = 15) {
    const int n = static_cast<int>(points.size());
    if (n == 0) {
        throw std::invalid_argument("exact_tsp: empty point set");
    }
    if (n > max_points || n > kHeldKarpMaxPoints) {
        throw std::invalid_argument("exact_tsp: " + std::to_string(n) + " points exceeds the exact threshold");
    }
    if (n <= 3) {
        TspResult r;
        for (int i = 0; i < n; ++i) {
            r.order.push_back(i);
        }
        r.cost = closed_tour_length(points, r.order);
        r.exact = true;
        return r;
    }

    // Paths start at point 0; subsets range over points 1..n-1.
    const int m = n - 1;
    const std::size_t full = (std::size_t{1} << m);
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dp(full * static_cast<std::size_t>(m), inf);
    std::vector<std::int8_t> parent(full * static_cast<std::size_t>(m), -1);
    auto at = [m](std::size_t mask, int last) { return mask * static_cast<std::size_t>(m) + static_cast<std::size_t>(last); };
    auto d = [&](int a, int b) { return distance(points[static_cast<std::size_t>(a)], points[static_cast<std::size_t>(b)]); };

    for (int j = 0; j < m; ++j) {
        dp[at(std::size_t{1} << j, j)] = d(0, j + 1);
    }
    for (std::size_t mask = 1; mask < full; ++mask) {
        for (int last = 0; last < m; ++last) {
            const double here = dp[at(mask, last)];
            if (!(mask >> last & 1) || here == inf) {
                continue;
            }
            for (int next = 0; next < m; ++next) {
                if (mask >> next & 1) {
                    continue;
                }
                const std::size_t grown = mask | (std::size_t{1} << next);
                const double cand = here + d(last + 1, next + 1);
                if (cand < dp[at(grown, next)]) {
                    dp[at(grown, next)] = cand;
                    parent[at(grown, next)] = static_cast<std::int8_t>(last);
                }
            }
        }
    }

    const std::size_t all = full - 1;
    int best_last = 0;
    double best = inf;
    for (int last = 0; last < m; ++last) {
        const double cand = dp[at(all, last)] + d(last + 1, 0);
        if (cand < best) {
            best = cand;
            best_last = last;
        }
    }

    std::vector<int> reversed_path;
    std::size_t mask = all;
    int cur = best_last;
    while (cur >= 0) {
        reversed_path.push_back(cur + 1);
        const int prev = parent[at(mask, cur)];
        mask &= ~(std::size_t{1} << cur);
        cur = prev;
    }
    TspResult r;
    r.order.push_back(0);
    r.order.insert(r.order.end(), reversed_path.rbegin(), reversed_path.rend());
    r.cost = closed_tour_length(points, r.order);
    r.exact = true;
    return r;
}

/// Applies the first improving 2-exchange found in index order. Returns false
/// when the tour is 2-opt locally optimal.
inline bool two_opt_pass(std::span<const Point> points, std::vector<int>& order) {
    const std::size_t n = order.size();
    if (n < 4) {
        return false;
    }
    auto p = [&](std::size_t k) { return points[static_cast<std::size_t>(order[k])]; };
    for (std::size_t i = 0; i + 2 < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) {
                continue;
            }
            const std::size_t j1 = (j + 1) % n;
            const double delta = distance(p(i), p(j)) + distance(p(i + 1), p(j1)) - distance(p(i), p(i + 1)) -
                                 distance(p(j), p(j1));
            if (delta < -1e-12) {
                std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i + 1),
                             order.begin() + static_cast<std::ptrdiff_t>(j + 1));
                return true;
            }
        }
    }
    return false;
}

/// Nearest neighbor from point seed % n, then 2-opt to local optimality.
inline TspResult heuristic_tsp(std::span<const Point> points, std::uint64_t seed = 0) {
    const std::size_t n = points.size();
    if (n == 0) {
        throw std::invalid_argument("heuristic_tsp: empty point set");
    }
    std::vector<char> used(n, 0);
    std::vector<int> order;
    order.reserve(n);
    std::size_t cur = static_cast<std::size_t>(seed % n);
    for (;;) {
        used[cur] = 1;
        order.push_back(static_cast<int>(cur));
        if (order.size() == n) {
            break;
        }
        std::size_t best = n;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
            if (!used[k]) {
                const double dk = distance(points[cur], points[k]);
                if (dk < best_d) {
                    best_d = dk;
                    best = k;
                }
            }
        }
        cur = best;
    }
    while (two_opt_pass(points, order)) {
    }
    TspResult r;
    r.order = std::move(order);
    r.cost = closed_tour_length(points, r.order);
    r.exact = false;
    return r;
}

/// Held-Karp up to params.exact_threshold points, heuristic beyond.
inline TspResult tsp(std::span<const Point> points, const Params& params, std::uint64_t seed = 0) {
    if (points.empty()) {
        throw std::invalid_argument("tsp: empty point set");
    }
    if (static_cast<int>(points.size()) <= params.exact_threshold &&
        static_cast<int>(points.size()) <= kHeldKarpMaxPoints) {
        return exact_tsp(points, params.exact_threshold);
    }
    return heuristic_tsp(points, seed);
}

}  // namespace ucvrp

#endif  // UCVRP_TSP_HPP_
