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

// The general pipeline: split the terminals into bounded-distance parts, then
// per part pick the many-tours path (cluster small terminals at grid centers
// and run the big-terminal solver) or the few-tours path (round demands down,
// solve, split every tour in two).

#ifndef UCVRP_GENERAL_SOLVER_HPP_
#define UCVRP_GENERAL_SOLVER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ucvrp/backend.hpp"
#include "ucvrp/big_solver.hpp"
#include "ucvrp/core.hpp"
#include "ucvrp/parallel.hpp"
#include "ucvrp/polar_grid.hpp"
#include "ucvrp/tsp.hpp"

namespace ucvrp {

// ---------------------------------------------------------------------------
// Bounded-distance decomposition
// ---------------------------------------------------------------------------

/// Disjoint terminal-id sets covering the instance, each with
/// D_max / D_min <= C.
struct SubinstancePlan {
    /// Ids ascending within a part; parts ordered by their smallest distance.
    std::vector<std::vector<int>> parts;
};

/// Greedy scale grouping: the nearest uncovered terminal at distance d0 opens
/// a part that takes every terminal up to distance C·d0.
inline SubinstancePlan bounded_distance_partition(const Instance& instance, const Params& params) {
    std::vector<int> ids(instance.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        ids[i] = static_cast<int>(i);
    }
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) { return instance.dist(a) < instance.dist(b); });
    SubinstancePlan plan;
    std::size_t k = 0;
    while (k < ids.size()) {
        const double limit = params.C * instance.dist(ids[k]);
        std::vector<int> part;
        while (k < ids.size() && instance.dist(ids[k]) <= limit) {
            part.push_back(ids[k++]);
        }
        std::sort(part.begin(), part.end());
        plan.parts.push_back(std::move(part));
    }
    return plan;
}

/// The terminals `ids` renumbered 0..k-1 in the given order.
inline Instance sub_instance(const Instance& instance, const std::vector<int>& ids) {
    Instance out;
    out.depot = instance.depot;
    for (int id : ids) {
        Terminal t = instance.at(id);
        t.id = static_cast<int>(out.terminals.size());
        out.terminals.push_back(t);
    }
    return out;
}

/// Maps visit ids of a sub-instance solution back through `ids`.
inline Solution lift_solution(Solution solution, const std::vector<int>& ids) {
    for (auto& tour : solution.tours) {
        for (int& v : tour.visits) {
            v = ids.at(static_cast<std::size_t>(v));
        }
    }
    return solution;
}

// ---------------------------------------------------------------------------
// Many tours: clustering small terminals
// ---------------------------------------------------------------------------

/// A run of consecutive small terminals along one cell's TSP tour.
struct Segment {
    std::size_t cell = 0;
    Point center;
    std::vector<int> members;
    double raw_demand = 0.0;
    /// max(raw_demand, ε)
    double clustered_demand = 0.0;
};

/// Links the clustered instance back to the original one. Clustered-instance
/// ids [0, big_origin.size()) are the big terminals, the rest are segments.
struct ClusterMap {
    std::vector<int> big_origin;
    std::vector<Segment> segments;

    bool is_segment(int prime_id) const { return prime_id >= static_cast<int>(big_origin.size()); }
    const Segment& segment_of(int prime_id) const {
        return segments.at(static_cast<std::size_t>(prime_id) - big_origin.size());
    }
};

struct Clustering {
    Instance clustered;
    ClusterMap map;
    /// Cell tour lengths plus the two center connections of every segment.
    double W = 0.0;
};

/// Replaces the small terminals of every cell by clustered terminals at its
/// center, one per segment of the cell's TSP tour.
///
/// Segments are cut greedily from the tour's first visit: terminals accumulate
/// until the running demand reaches ε. Each small demand is below ε, so a
/// closed segment carries less than 2ε; only the last segment of a cell may
/// stay under ε.
inline Clustering cluster_small(const Instance& instance, const CenterGrid& grid, const Params& params,
                                std::uint64_t seed = 0) {
    const double eps = params.epsilon;
    const CellAssignment cells = assign_cells(instance, grid, [&](const Terminal& t) { return !is_big(params, t); });

    std::vector<std::pair<std::size_t, const std::vector<int>*>> cell_list;
    for (const auto& [c, ids] : cells.members) {
        cell_list.emplace_back(c, &ids);
    }
    std::vector<TspResult> tours(cell_list.size());
    parallel_for(cell_list.size(), [&](std::size_t k) {
        std::vector<Point> points;
        for (int id : *cell_list[k].second) {
            points.push_back(instance.at(id).location);
        }
        tours[k] = tsp(points, params, seed + cell_list[k].first);
    });

    Clustering out;
    for (const auto& t : instance.terminals) {
        if (is_big(params, t)) {
            out.map.big_origin.push_back(t.id);
        }
    }
    for (std::size_t k = 0; k < cell_list.size(); ++k) {
        const auto [cell, ids] = cell_list[k];
        const Point center = grid.centers[cell];
        out.W += tours[k].cost;
        Segment seg{cell, center, {}, 0.0, 0.0};
        auto close = [&] {
            seg.clustered_demand = std::max(seg.raw_demand, eps);
            out.W += distance(center, instance.at(seg.members.front()).location) +
                     distance(instance.at(seg.members.back()).location, center);
            out.map.segments.push_back(std::move(seg));
            seg = Segment{cell, center, {}, 0.0, 0.0};
        };
        for (int pos : tours[k].order) {
            const int id = (*ids)[static_cast<std::size_t>(pos)];
            seg.members.push_back(id);
            seg.raw_demand += instance.at(id).demand;
            if (seg.raw_demand >= eps - kTolerance) {
                close();
            }
        }
        if (!seg.members.empty()) {
            close();
        }
    }

    out.clustered.depot = instance.depot;
    for (int id : out.map.big_origin) {
        const Terminal& t = instance.at(id);
        out.clustered.terminals.push_back({static_cast<int>(out.clustered.terminals.size()), t.location, t.demand});
    }
    for (const auto& seg : out.map.segments) {
        if (seg.clustered_demand > kCapacity) {
            throw std::logic_error("cluster_small: clustered demand exceeds capacity");
        }
        out.clustered.terminals.push_back(
            {static_cast<int>(out.clustered.terminals.size()), seg.center, seg.clustered_demand});
    }
    return out;
}

/// Replaces every clustered-terminal visit by its segment, driven as a hub
/// loop center -> first member -> ... -> last member -> center. Big terminal
/// visits keep their detours. Accepts clustered visits either plain or as a
/// single-visit hub loop at their own center (the shape unsnap produces).
inline Solution stitch_segments(const Solution& prime_solution, const ClusterMap& map, const Instance& prime) {
    Solution out;
    for (const auto& pt : prime_solution.tours) {
        if (auto err = detour_error(pt)) {
            throw std::invalid_argument("stitch_segments: " + *err);
        }
        std::vector<const Detour*> hub_at(pt.visits.size(), nullptr);
        std::vector<std::vector<const Detour*>> spurs_at(pt.visits.size());
        for (const auto& d : pt.detours) {
            if (d.kind == Detour::Kind::hub) {
                hub_at[d.anchor] = &d;
            } else {
                spurs_at[d.anchor].push_back(&d);
            }
        }
        std::vector<char> in_hub(pt.visits.size(), 0);
        for (const auto& d : pt.detours) {
            if (d.kind == Detour::Kind::hub) {
                std::fill(in_hub.begin() + static_cast<std::ptrdiff_t>(d.anchor),
                          in_hub.begin() + static_cast<std::ptrdiff_t>(d.anchor + d.span), 1);
            }
        }

        Tour tour;
        for (std::size_t k = 0; k < pt.visits.size(); ++k) {
            const int v = pt.visits[k];
            if (v < 0 || static_cast<std::size_t>(v) >= prime.size()) {
                throw std::invalid_argument("stitch_segments: unknown clustered-instance id " + std::to_string(v));
            }
            if (!map.is_segment(v)) {
                const std::size_t at = tour.visits.size();
                if (hub_at[k]) {
                    tour.detours.push_back({Detour::Kind::hub, at, hub_at[k]->span, hub_at[k]->via});
                }
                for (const Detour* s : spurs_at[k]) {
                    tour.detours.push_back({Detour::Kind::spur, at, 1, s->via});
                }
                tour.visits.push_back(map.big_origin.at(static_cast<std::size_t>(v)));
                continue;
            }
            const Segment& seg = map.segment_of(v);
            const bool own_hub = hub_at[k] && hub_at[k]->span == 1 && hub_at[k]->via == prime.at(v).location;
            if ((in_hub[k] && !own_hub) || !spurs_at[k].empty()) {
                throw std::invalid_argument("stitch_segments: clustered terminal " + std::to_string(v) +
                                            " is visited through a detour that cannot carry its segment");
            }
            tour.detours.push_back({Detour::Kind::hub, tour.visits.size(), seg.members.size(), seg.center});
            tour.visits.insert(tour.visits.end(), seg.members.begin(), seg.members.end());
        }
        out.tours.push_back(std::move(tour));
    }
    return out;
}

struct ManyToursResult {
    Solution solution;
    double W = 0.0;
    Clustering clustering;
    BigSolveResult prime;
};

/// Cluster small terminals, solve the all-big clustered instance on the same
/// grid, stitch the segments back in.
inline ManyToursResult many_tours_solve(const Instance& instance, const CenterGrid& grid, const Params& params,
                                        std::uint64_t seed = 0) {
    require_general_epsilon(params);
    ManyToursResult r;
    if (instance.empty()) {
        return r;
    }
    r.clustering = cluster_small(instance, grid, params, seed);
    r.W = r.clustering.W;
    r.prime = big_solve(r.clustering.clustered, grid, params, seed);
    r.solution = stitch_segments(r.prime.solution, r.clustering.map, r.clustering.clustered);
    return r;
}

inline ManyToursResult many_tours_solve(const Instance& instance, const Params& params, std::uint64_t seed = 0) {
    if (instance.empty()) {
        require_general_epsilon(params);
        return {};
    }
    return many_tours_solve(instance, build_grid(instance, params), params, seed);
}

// ---------------------------------------------------------------------------
// Few tours: rounding and tour splitting
// ---------------------------------------------------------------------------

/// Demand rounded down to a multiple of 1/(2n), never below 1/(2n).
inline double round_down_demand(double demand, std::size_t n) {
    const double slots = 2.0 * static_cast<double>(n);
    const double k = std::max(1.0, std::floor(demand * slots + 1e-9));
    return k / slots;
}

inline Instance round_instance(const Instance& instance) {
    Instance out = instance;
    for (auto& t : out.terminals) {
        t.demand = round_down_demand(t.demand, instance.size());
    }
    return out;
}

/// Splits a tour feasible for rounded demands into at most two tours feasible
/// for the true demands.
///
/// Visits are ranked by true demand, non-increasing (ties by id); the first
/// tour takes the longest prefix fitting in capacity and the second the rest.
/// Both keep the original driving order. The second tour is within capacity
/// whenever the true total is at most 3/2.
inline std::pair<Tour, std::optional<Tour>> split_tour(const Tour& t, const Instance& instance) {
    if (t.visits.empty()) {
        throw std::invalid_argument("split_tour: empty tour");
    }
    if (!t.detours.empty()) {
        throw std::invalid_argument("split_tour: expected a plain tour");
    }
    std::vector<int> ranked = t.visits;
    std::sort(ranked.begin(), ranked.end(), [&](int a, int b) {
        const double da = instance.at(a).demand, db = instance.at(b).demand;
        return da != db ? da > db : a < b;
    });
    std::size_t take = 0;
    double prefix = 0.0;
    while (take < ranked.size() && prefix + instance.at(ranked[take]).demand <= kCapacity + kTolerance) {
        prefix += instance.at(ranked[take++]).demand;
    }
    std::vector<char> first(instance.size(), 0);
    for (std::size_t k = 0; k < take; ++k) {
        first[static_cast<std::size_t>(ranked[k])] = 1;
    }
    Tour t1, t2;
    for (int v : t.visits) {
        (first[static_cast<std::size_t>(v)] ? t1 : t2).visits.push_back(v);
    }
    if (t2.visits.empty()) {
        return {std::move(t1), std::nullopt};
    }
    if (tour_demand(instance, t2) > kCapacity + kTolerance) {
        throw std::logic_error("split_tour: remainder exceeds capacity; the tour's true demand is above 3/2");
    }
    return {std::move(t1), std::move(t2)};
}

struct FewToursResult {
    Solution solution;
    Instance rounded;
    /// The backend's solution on the rounded instance.
    Solution backend;
    double backend_cost = 0.0;
};

inline FewToursResult few_tours_solve(const Instance& instance, const Params& params, std::uint64_t seed = 0) {
    FewToursResult r;
    r.rounded = round_instance(instance);
    if (instance.empty()) {
        return r;
    }
    r.backend = backend_solve(r.rounded, params, seed);
    r.backend_cost = solution_cost(r.rounded, r.backend);
    for (const auto& t : r.backend.tours) {
        auto [t1, t2] = split_tour(t, instance);
        r.solution.tours.push_back(std::move(t1));
        if (t2) {
            r.solution.tours.push_back(std::move(*t2));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Dispatcher
// ---------------------------------------------------------------------------

enum class Branch { many_tours, few_tours };

inline std::string to_string(Branch b) { return b == Branch::many_tours ? "many-tours" : "few-tours"; }

/// How a part of the instance was solved.
struct PartReport {
    std::size_t size = 0;
    double Y = 0.0;
    Branch branch = Branch::few_tours;
    /// Only for many-tours parts.
    std::optional<double> W;
    double cost = 0.0;
};

struct DispatchResult {
    Solution solution;
    std::vector<PartReport> parts;

    double Y() const {
        double y = 0.0;
        for (const auto& p : parts) y += p.Y;
        return y;
    }
    std::optional<double> W() const {
        std::optional<double> w;
        for (const auto& p : parts) {
            if (p.W) w = w.value_or(0.0) + *p.W;
        }
        return w;
    }
};

/// Which branch a bounded-distance part goes to: many tours iff Y >= Γ.
inline Branch choose_branch(const Instance& part, const Params& params) {
    return total_demand(part) >= params.gamma - kTolerance ? Branch::many_tours : Branch::few_tours;
}

/// Solves one bounded-distance part on the given branch.
inline std::pair<Solution, PartReport> solve_part(const Instance& part, Branch branch, const Params& params,
                                                  std::uint64_t seed) {
    PartReport report{part.size(), total_demand(part), branch, std::nullopt, 0.0};
    Solution sol;
    if (branch == Branch::many_tours) {
        auto r = many_tours_solve(part, params, seed);
        report.W = r.W;
        sol = std::move(r.solution);
    } else {
        sol = few_tours_solve(part, params, seed).solution;
    }
    report.cost = solution_cost(part, sol);
    return {std::move(sol), report};
}

/// Decomposes into bounded-distance parts and solves each one, on `forced`
/// when given, otherwise on the branch chosen by total demand. Parts run in
/// parallel; tours are concatenated in part order.
inline DispatchResult dispatch(const Instance& instance, const Params& params, std::uint64_t seed = 0,
                               std::optional<Branch> forced = std::nullopt) {
    require_general_epsilon(params);
    const SubinstancePlan plan = bounded_distance_partition(instance, params);
    std::vector<std::pair<Solution, PartReport>> results(plan.parts.size());
    parallel_for(plan.parts.size(), [&](std::size_t k) {
        const Instance part = sub_instance(instance, plan.parts[k]);
        results[k] = solve_part(part, forced.value_or(choose_branch(part, params)), params, seed);
    });
    DispatchResult out;
    for (std::size_t k = 0; k < results.size(); ++k) {
        Solution lifted = lift_solution(std::move(results[k].first), plan.parts[k]);
        for (auto& t : lifted.tours) {
            out.solution.tours.push_back(std::move(t));
        }
        out.parts.push_back(results[k].second);
    }
    return out;
}

}  // namespace ucvrp

#endif  // UCVRP_GENERAL_SOLVER_HPP_
