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

// Reference constructions: the assignment rounding for weighted bipartite
// graphs, unsplittable iterated tour partitioning, and the exact CVRP oracle
// that every ratio measurement divides by.

#ifndef UCVRP_BASELINES_HPP_
#define UCVRP_BASELINES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ucvrp/core.hpp"
#include "ucvrp/tsp.hpp"

namespace ucvrp {

// ---------------------------------------------------------------------------
// Assignment rounding
// ---------------------------------------------------------------------------

/// Weighted bipartite graph between sides A = {0..a_count-1} and
/// B = {0..b_count-1}. Every b needs a neighbor and
/// 0 <= w(b) <= sum over its edges of w(a, b).
struct BipartiteWeights {
    int a_count = 0;
    int b_count = 0;
    /// (a, b) -> w(a, b) >= 0
    std::map<std::pair<int, int>, double> edge_weights;
    /// w(b), indexed by b
    std::vector<double> b_weights;
};

inline void validate(const BipartiteWeights& g) {
    if (g.a_count < 0 || g.b_count < 0 || g.b_weights.size() != static_cast<std::size_t>(g.b_count)) {
        throw std::invalid_argument("bipartite graph: side sizes do not match b_weights");
    }
    std::vector<double> incident(static_cast<std::size_t>(g.b_count), 0.0);
    std::vector<int> degree(static_cast<std::size_t>(g.b_count), 0);
    for (const auto& [edge, w] : g.edge_weights) {
        const auto [a, b] = edge;
        if (a < 0 || a >= g.a_count || b < 0 || b >= g.b_count) {
            throw std::invalid_argument("bipartite graph: edge endpoint out of range");
        }
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("bipartite graph: edge weights must be finite and non-negative");
        }
        incident[static_cast<std::size_t>(b)] += w;
        ++degree[static_cast<std::size_t>(b)];
    }
    for (std::size_t b = 0; b < incident.size(); ++b) {
        if (degree[b] == 0) {
            throw std::invalid_argument("bipartite graph: vertex b" + std::to_string(b) + " has no neighbor");
        }
        const double wb = g.b_weights[b];
        if (!(wb >= 0.0) || wb > incident[b] * (1.0 + 1e-12) + 1e-15) {
            throw std::invalid_argument("bipartite graph: w(b" + std::to_string(b) + ") outside [0, sum of edge weights]");
        }
    }
}

/// For each a: sum of w(b) over b assigned to a, minus the sum of w(a, b) over
/// all edges at a. The rounding guarantees every entry <= max_b w(b).
inline std::vector<double> assignment_excess(const BipartiteWeights& g, std::span<const int> f) {
    std::vector<double> excess(static_cast<std::size_t>(g.a_count), 0.0);
    for (std::size_t b = 0; b < f.size(); ++b) {
        excess[static_cast<std::size_t>(f[b])] += g.b_weights[b];
    }
    for (const auto& [edge, w] : g.edge_weights) {
        excess[static_cast<std::size_t>(edge.first)] -= w;
    }
    return excess;
}

namespace detail {

// Fractional assignment x(a, b) on the edges of a bipartite graph. Vertices are
// numbered a in [0, A) and b in [A, A + B).
class FractionalAssignment {
public:
    struct Edge {
        int a;
        int b;
        double x;
    };

    explicit FractionalAssignment(const BipartiteWeights& g) : a_count_(g.a_count), b_count_(g.b_count) {
        std::vector<double> incident(static_cast<std::size_t>(g.b_count), 0.0);
        for (const auto& [edge, w] : g.edge_weights) {
            incident[static_cast<std::size_t>(edge.second)] += w;
        }
        for (const auto& [edge, w] : g.edge_weights) {
            const auto b = static_cast<std::size_t>(edge.second);
            const double x = incident[b] > 0.0 ? g.b_weights[b] * (w / incident[b]) : 0.0;
            edges_.push_back({edge.first, edge.second, x});
        }
    }

    std::vector<Edge>& edges() { return edges_; }

    /// Shifts flow around support cycles until the support is a forest.
    /// Every shift keeps each vertex's total fixed and zeroes one edge.
    void cancel_cycles() {
        while (auto cycle = find_support_cycle()) {
            // cycle holds edge indices; alternate signs around it.
            double delta = std::numeric_limits<double>::infinity();
            std::size_t argmin = 0;
            for (std::size_t k = 1; k < cycle->size(); k += 2) {
                const double x = edges_[(*cycle)[k]].x;
                if (x < delta) {
                    delta = x;
                    argmin = (*cycle)[k];
                }
            }
            for (std::size_t k = 0; k < cycle->size(); ++k) {
                edges_[(*cycle)[k]].x += (k % 2 == 0) ? delta : -delta;
            }
            edges_[argmin].x = 0.0;
        }
    }

    bool in_support(const Edge& e) const { return e.x > kSupportFloor; }

private:
    static constexpr double kSupportFloor = 1e-15;

    // Returns the edge indices of some cycle in the support graph, in cyclic
    // order, or nothing when the support is a forest.
    std::optional<std::vector<std::size_t>> find_support_cycle() const {
        const std::size_t nodes = static_cast<std::size_t>(a_count_ + b_count_);
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nodes);  // (neighbor, edge)
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (!in_support(edges_[e])) {
                continue;
            }
            const auto a = static_cast<std::size_t>(edges_[e].a);
            const auto b = static_cast<std::size_t>(a_count_ + edges_[e].b);
            adj[a].push_back({b, e});
            adj[b].push_back({a, e});
        }
        std::vector<int> depth(nodes, -1);
        std::vector<std::size_t> parent_edge(nodes, 0);
        std::vector<std::size_t> parent(nodes, 0);
        for (std::size_t root = 0; root < nodes; ++root) {
            if (depth[root] >= 0) {
                continue;
            }
            depth[root] = 0;
            std::vector<std::size_t> stack{root};
            while (!stack.empty()) {
                const std::size_t u = stack.back();
                stack.pop_back();
                for (const auto& [v, e] : adj[u]) {
                    if (depth[u] > 0 && e == parent_edge[u]) {
                        continue;
                    }
                    if (depth[v] < 0) {
                        depth[v] = depth[u] + 1;
                        parent[v] = u;
                        parent_edge[v] = e;
                        stack.push_back(v);
                        continue;
                    }
                    // Non-tree edge u-v closes a cycle through their common ancestor.
                    std::vector<std::size_t> up_u, up_v;
                    std::size_t x = u, y = v;
                    while (depth[x] > depth[y]) {
                        up_u.push_back(parent_edge[x]);
                        x = parent[x];
                    }
                    while (depth[y] > depth[x]) {
                        up_v.push_back(parent_edge[y]);
                        y = parent[y];
                    }
                    while (x != y) {
                        up_u.push_back(parent_edge[x]);
                        x = parent[x];
                        up_v.push_back(parent_edge[y]);
                        y = parent[y];
                    }
                    std::vector<std::size_t> cycle{e};
                    cycle.insert(cycle.end(), up_v.begin(), up_v.end());
                    cycle.insert(cycle.end(), up_u.rbegin(), up_u.rend());
                    return cycle;
                }
            }
        }
        return std::nullopt;
    }

    int a_count_;
    int b_count_;
    std::vector<Edge> edges_;
};

}  // namespace detail

/// Maps every b to one of its neighbors so that no a gains more than
/// max_b w(b) over the edge weight it already carries.
///
/// Starts from the proportional fractional assignment, cancels support cycles
/// until the support is a forest, roots each tree at a vertex of A and gives
/// every b to its child with the largest fraction, or to its parent when it
/// has no child. Each a then receives at most its parent b beyond the b's it
/// already held in full.
inline std::vector<int> assignment_function(const BipartiteWeights& g) {
    validate(g);
    detail::FractionalAssignment frac(g);
    frac.cancel_cycles();

    const std::size_t nodes = static_cast<std::size_t>(g.a_count + g.b_count);
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(nodes);
    for (const auto& e : frac.edges()) {
        if (frac.in_support(e)) {
            const auto a = static_cast<std::size_t>(e.a);
            const auto b = static_cast<std::size_t>(g.a_count + e.b);
            adj[a].push_back({b, e.x});
            adj[b].push_back({a, e.x});
        }
    }

    std::vector<int> f(static_cast<std::size_t>(g.b_count), -1);
    std::vector<char> visited(nodes, 0);
    std::vector<std::size_t> parent(nodes, nodes);
    for (std::size_t root = 0; root < static_cast<std::size_t>(g.a_count); ++root) {
        if (visited[root]) {
            continue;
        }
        visited[root] = 1;
        std::queue<std::size_t> q;
        q.push(root);
        while (!q.empty()) {
            const std::size_t u = q.front();
            q.pop();
            std::optional<std::pair<double, std::size_t>> best_child;
            for (const auto& [v, x] : adj[u]) {
                if (v == parent[u]) {
                    continue;
                }
                visited[v] = 1;
                parent[v] = u;
                q.push(v);
                if (!best_child || x > best_child->first) {
                    best_child = {x, v};
                }
            }
            if (u >= static_cast<std::size_t>(g.a_count)) {
                const std::size_t b = u - static_cast<std::size_t>(g.a_count);
                f[b] = static_cast<int>(best_child ? best_child->second : parent[u]);
            }
        }
    }
    // b's outside the support carry (numerically) zero weight.
    for (const auto& [edge, w] : g.edge_weights) {
        auto& slot = f[static_cast<std::size_t>(edge.second)];
        if (slot < 0) {
            slot = edge.first;
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Exact CVRP oracle
// ---------------------------------------------------------------------------

inline constexpr int kExactCvrpMaxTerminals = 16;

struct ExactCvrpResult {
    Solution solution;
    double cost = 0.0;
};

/// Minimum-cost partition of the terminals into capacity-feasible tours, each
/// tour an optimal TSP through the depot. Cost ties go to fewer tours, then to
/// the first partition in submask order, so the result is deterministic.
inline ExactCvrpResult exact_cvrp(const Instance& instance, int cap = 10) {
    const int n = static_cast<int>(instance.size());
    if (n > cap || n > kExactCvrpMaxTerminals) {
        throw std::invalid_argument("exact_cvrp: " + std::to_string(n) + " terminals exceeds the cap of " +
                                    std::to_string(std::min(cap, kExactCvrpMaxTerminals)));
    }
    ExactCvrpResult result;
    if (n == 0) {
        return result;
    }

    const std::size_t full = std::size_t{1} << n;
    const auto N = static_cast<std::size_t>(n);
    constexpr double inf = std::numeric_limits<double>::infinity();
    auto loc = [&](std::size_t i) { return instance.terminals[i].location; };

    // Shortest depot-rooted path through `mask` ending at `last`, for all masks.
    std::vector<double> path(full * N, inf);
    std::vector<std::int8_t> prev(full * N, -1);
    for (std::size_t i = 0; i < N; ++i) {
        path[(std::size_t{1} << i) * N + i] = distance(instance.depot, loc(i));
    }
    for (std::size_t mask = 1; mask < full; ++mask) {
        for (std::size_t last = 0; last < N; ++last) {
            const double here = path[mask * N + last];
            if (here == inf) {
                continue;
            }
            for (std::size_t next = 0; next < N; ++next) {
                if (mask >> next & 1) {
                    continue;
                }
                const std::size_t grown = mask | (std::size_t{1} << next);
                const double cand = here + distance(loc(last), loc(next));
                if (cand < path[grown * N + next]) {
                    path[grown * N + next] = cand;
                    prev[grown * N + next] = static_cast<std::int8_t>(last);
                }
            }
        }
    }

    std::vector<double> demand(full, 0.0);
    std::vector<double> tour_len(full, inf);
    std::vector<std::int8_t> tour_last(full, -1);
    for (std::size_t mask = 1; mask < full; ++mask) {
        const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
        demand[mask] = demand[mask & (mask - 1)] + instance.terminals[low].demand;
        if (demand[mask] > kCapacity + kTolerance) {
            continue;
        }
        for (std::size_t last = 0; last < N; ++last) {
            const double cand = path[mask * N + last] + distance(loc(last), instance.depot);
            if (cand < tour_len[mask]) {
                tour_len[mask] = cand;
                tour_last[mask] = static_cast<std::int8_t>(last);
            }
        }
    }

    // Partition DP; the part holding the lowest remaining terminal is chosen
    // first, which enumerates every set partition exactly once.
    std::vector<double> best(full, inf);
    std::vector<int> tours(full, 0);
    std::vector<std::size_t> choice(full, 0);
    best[0] = 0.0;
    for (std::size_t mask = 1; mask < full; ++mask) {
        const std::size_t low = mask & (~mask + 1);
        const std::size_t rest = mask ^ low;
        for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
            const std::size_t part = sub | low;
            if (tour_len[part] < inf) {
                const double cand = tour_len[part] + best[mask ^ part];
                const int cand_tours = 1 + tours[mask ^ part];
                if (cand < best[mask] - kTolerance ||
                    (cand <= best[mask] + kTolerance && cand_tours < tours[mask])) {
                    best[mask] = cand;
                    tours[mask] = cand_tours;
                    choice[mask] = part;
                }
            }
            if (sub == 0) {
                break;
            }
        }
    }

    for (std::size_t mask = full - 1; mask != 0; mask ^= choice[mask]) {
        const std::size_t part = choice[mask];
        std::vector<int> order;
        std::size_t m = part;
        int last = tour_last[part];
        while (last >= 0) {
            order.push_back(last);
            const int p = prev[m * N + static_cast<std::size_t>(last)];
            m &= ~(std::size_t{1} << last);
            last = p;
        }
        std::reverse(order.begin(), order.end());
        result.solution.tours.push_back(plain_tour(std::move(order)));
    }
    result.cost = solution_cost(instance, result.solution);
    return result;
}

// ---------------------------------------------------------------------------
// Unsplittable iterated tour partitioning
// ---------------------------------------------------------------------------

/// Terminal ids in the order of a TSP tour through the depot and all
/// terminals, starting after the depot.
inline std::vector<int> depot_tsp_order(const Instance& instance, const Params& params, std::uint64_t seed = 0) {
    if (instance.empty()) {
        return {};
    }
    std::vector<Point> points{instance.depot};
    for (const auto& t : instance.terminals) {
        points.push_back(t.location);
    }
    const TspResult r = tsp(points, params, seed);
    const auto depot_at = std::find(r.order.begin(), r.order.end(), 0) - r.order.begin();
    std::vector<int> order;
    for (std::size_t k = 1; k < r.order.size(); ++k) {
        order.push_back(r.order[(static_cast<std::size_t>(depot_at) + k) % r.order.size()] - 1);
    }
    return order;
}

/// cost(t_TSP) + sum over v of 4 * dist(v) * demand(v), for the tour that runs
/// depot -> order -> depot.
inline double itp_cost_bound(const Instance& instance, std::span<const int> order) {
    double bound = instance.empty() ? 0.0 : tour_cost(instance, plain_tour({order.begin(), order.end()}));
    for (const auto& t : instance.terminals) {
        bound += 4.0 * instance.dist(t.id) * t.demand;
    }
    return bound;
}

/// Splits the given TSP order into capacity-feasible tours.
///
/// Terminals with demand above 1/2 get their own out-and-back tour. The rest
/// keep the TSP order and are laid out on a line by cumulative demand; cutting
/// that line every 1/2 units, starting at offset α, and giving each terminal
/// to the piece holding the start of its demand interval yields pieces of
/// demand at most 1. Every offset where the grouping changes is tried and the
/// cheapest kept. Averaged over α the cuts cost at most 4·Σ dist·demand, so
/// the best offset meets that bound; the result is checked against it.
inline Solution itp_unsplittable(const Instance& instance, std::span<const int> order) {
    std::vector<int> seen(instance.size(), 0);
    for (int id : order) {
        if (id < 0 || static_cast<std::size_t>(id) >= instance.size() || seen[static_cast<std::size_t>(id)]++) {
            throw std::invalid_argument("itp_unsplittable: order is not a permutation of the terminals");
        }
    }
    if (order.size() != instance.size()) {
        throw std::invalid_argument("itp_unsplittable: order must cover every terminal");
    }

    constexpr double half = kCapacity / 2.0;
    Solution dedicated;
    std::vector<int> rest;
    for (int id : order) {
        if (instance.at(id).demand > half) {
            dedicated.tours.push_back(plain_tour({id}));
        } else {
            rest.push_back(id);
        }
    }

    std::vector<double> start(rest.size(), 0.0);
    for (std::size_t k = 1; k < rest.size(); ++k) {
        start[k] = start[k - 1] + instance.at(rest[k - 1]).demand;
    }
    std::vector<double> offsets;
    for (double s : start) {
        offsets.push_back(std::fmod(s, half));
    }
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());

    auto cut = [&](double alpha) {
        Solution pieces;
        long long current = std::numeric_limits<long long>::min();
        for (std::size_t k = 0; k < rest.size(); ++k) {
            const auto key = static_cast<long long>(std::floor((start[k] - alpha) / half + 1e-12));
            if (pieces.tours.empty() || key != current) {
                pieces.tours.emplace_back();
                current = key;
            }
            pieces.tours.back().visits.push_back(rest[k]);
        }
        return pieces;
    };

    Solution best_pieces;
    double best_cost = std::numeric_limits<double>::infinity();
    for (double alpha : offsets) {
        Solution pieces = cut(alpha);
        const double c = solution_cost(instance, pieces);
        if (c < best_cost - 1e-12) {
            best_cost = c;
            best_pieces = std::move(pieces);
        }
    }

    Solution out = std::move(dedicated);
    for (auto& t : best_pieces.tours) {
        if (tour_demand(instance, t) > kCapacity + kTolerance) {
            throw std::logic_error("itp_unsplittable: piece exceeds capacity");
        }
        out.tours.push_back(std::move(t));
    }
    if (solution_cost(instance, out) > itp_cost_bound(instance, order) + kTolerance) {
        throw std::logic_error("itp_unsplittable: cost bound violated");
    }
    return out;
}

/// Same, on a TSP order computed by the tsp dispatcher.
inline Solution itp_unsplittable(const Instance& instance, const Params& params, std::uint64_t seed = 0) {
    const auto order = depot_tsp_order(instance, params, seed);
    return itp_unsplittable(instance, order);
}

}  // namespace ucvrp

#endif  // UCVRP_BASELINES_HPP_
