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

// PTAS pipeline for instances whose terminals are all big: snap terminals to
// grid centers, round demands adaptively per center, solve the resulting
// instance exactly over tour configurations, then route back out to the
// original terminal locations.

#ifndef UCVRP_BIG_SOLVER_HPP_
#define UCVRP_BIG_SOLVER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ucvrp/backend.hpp"
#include "ucvrp/core.hpp"
#include "ucvrp/parallel.hpp"
#include "ucvrp/polar_grid.hpp"
#include "ucvrp/tsp.hpp"

namespace ucvrp {

/// A (center, demand) class of snapped terminals.
struct PairType {
    std::size_t center = 0;
    Point location;
    double demand = 0.0;
    int multiplicity = 0;
};

/// Terminals moved onto grid centers, summarized by pair type.
struct SnappedInstance {
    /// One snapped terminal.
    struct Entry {
        int terminal = 0;  // original id
        std::size_t center = 0;
        Point location;          // center position
        double demand = 0.0;     // possibly rounded up
        double original = 0.0;   // demand before rounding
    };

    Point depot;
    /// Ordered by terminal id.
    std::vector<Entry> entries;
    /// Ordered by (center, demand).
    std::vector<PairType> pairs;
    /// entries[k] belongs to pairs[pair_of[k]].
    std::vector<std::size_t> pair_of;

    /// Regroups entries into pair types after demands change.
    void rebuild_pairs() {
        std::map<std::pair<std::size_t, double>, std::size_t> index;
        for (const auto& e : entries) {
            index.emplace(std::pair{e.center, e.demand}, 0);
        }
        pairs.clear();
        for (auto& [key, slot] : index) {
            slot = pairs.size();
            pairs.push_back({key.first, {}, key.second, 0});
        }
        pair_of.clear();
        for (const auto& e : entries) {
            const std::size_t p = index.at({e.center, e.demand});
            pairs[p].location = e.location;
            ++pairs[p].multiplicity;
            pair_of.push_back(p);
        }
    }
};

/// Moves each terminal onto its nearest center. All terminals must be big.
inline SnappedInstance snap_to_centers(const Instance& instance, const CenterGrid& grid, const Params& params) {
    SnappedInstance s;
    s.depot = instance.depot;
    for (const auto& t : instance.terminals) {
        if (!is_big(params, t)) {
            throw std::invalid_argument("snap_to_centers: terminal " + std::to_string(t.id) + " is small");
        }
        const std::size_t c = nearest_center(grid, t.location);
        s.entries.push_back({t.id, c, grid.centers[c], t.demand, t.demand});
    }
    s.rebuild_pairs();
    return s;
}

/// Number of rounding groups per center, ⌈1/β⌉.
inline std::size_t rounding_groups(const Params& params) {
    return static_cast<std::size_t>(std::ceil(1.0 / params.beta - 1e-9));
}

/// Rounds demands up to their group maximum at every center holding at least
/// 1/β terminals.
///
/// Terminals at such a center are sorted by demand (ties by id) and cut into
/// ⌈1/β⌉ groups of equal size; when sizes must differ, the earlier groups are
/// the smaller ones by one element.
inline SnappedInstance adaptive_round(SnappedInstance snapped, const Params& params) {
    const double threshold = 1.0 / params.beta - 1e-9;
    const std::size_t groups = rounding_groups(params);
    std::map<std::size_t, std::vector<std::size_t>> at_center;
    for (std::size_t k = 0; k < snapped.entries.size(); ++k) {
        at_center[snapped.entries[k].center].push_back(k);
    }
    for (auto& [center, ks] : at_center) {
        if (static_cast<double>(ks.size()) < threshold) {
            continue;
        }
        std::sort(ks.begin(), ks.end(), [&](std::size_t a, std::size_t b) {
            const auto& ea = snapped.entries[a];
            const auto& eb = snapped.entries[b];
            return std::pair{ea.demand, ea.terminal} < std::pair{eb.demand, eb.terminal};
        });
        const std::size_t m = ks.size();
        const std::size_t base = m / groups;
        const std::size_t larger = m % groups;  // the last `larger` groups get base + 1
        std::size_t pos = 0;
        for (std::size_t g = 0; g < groups; ++g) {
            const std::size_t size = base + (g >= groups - larger ? 1 : 0);
            if (size == 0) {
                continue;
            }
            const double top = snapped.entries[ks[pos + size - 1]].demand;
            for (std::size_t k = pos; k < pos + size; ++k) {
                snapped.entries[ks[k]].demand = top;
            }
            pos += size;
        }
    }
    snapped.rebuild_pairs();
    return snapped;
}

/// The snapped (and possibly rounded) terminals as an ordinary instance, ids
/// following entry order.
inline Instance snapped_instance(const SnappedInstance& s) {
    Instance out;
    out.depot = s.depot;
    for (const auto& e : s.entries) {
        out.terminals.push_back({static_cast<int>(out.terminals.size()), e.location, e.demand});
    }
    return out;
}

/// A capacity-feasible multiset of pair types, priced by an optimal closed
/// tour through the depot and the centers it touches.
struct TourType {
    /// (pair index, count), ascending by pair index.
    std::vector<std::pair<std::size_t, int>> content;
    double demand = 0.0;
    int size = 0;
    double cost = 0.0;
    /// Pair indices in driving order; pairs at one center are adjacent.
    std::vector<std::size_t> route;
};

/// Every non-empty multiset of occurring pair types with total demand <= 1,
/// at most ⌊1/ε⌋ members and no pair used beyond its multiplicity.
/// Throws ResourceLimit past params.catalog_cap entries.
inline std::vector<TourType> enumerate_tour_types(const SnappedInstance& s, const Params& params) {
    for (const auto& p : s.pairs) {
        if (p.demand < params.epsilon) {
            throw std::invalid_argument("enumerate_tour_types: pair demand below epsilon");
        }
    }
    const int max_size = static_cast<int>(std::floor(1.0 / params.epsilon + 1e-9));
    std::vector<TourType> catalog;
    std::vector<std::pair<std::size_t, int>> current;

    auto recurse = [&](auto&& self, std::size_t from, double demand, int size) -> void {
        for (std::size_t p = from; p < s.pairs.size(); ++p) {
            const PairType& pt = s.pairs[p];
            for (int c = 1; c <= pt.multiplicity; ++c) {
                const double dem = demand + c * pt.demand;
                if (size + c > max_size || dem > kCapacity + kTolerance) {
                    break;
                }
                current.push_back({p, c});
                if (catalog.size() >= params.catalog_cap) {
                    throw ResourceLimit("tour-type catalog exceeds " + std::to_string(params.catalog_cap) +
                                        " entries; use a larger epsilon or coarser grid overrides");
                }
                catalog.push_back({current, dem, size + c, 0.0, {}});
                self(self, p + 1, dem, size + c);
                current.pop_back();
            }
        }
    };
    recurse(recurse, 0, 0.0, 0);

    parallel_for(catalog.size(), [&](std::size_t k) {
        TourType& t = catalog[k];
        std::vector<Point> points{s.depot};
        std::vector<std::vector<std::size_t>> pairs_at;  // per point after the depot
        std::map<std::size_t, std::size_t> point_of_center;
        for (const auto& [p, c] : t.content) {
            auto [it, fresh] = point_of_center.emplace(s.pairs[p].center, points.size());
            if (fresh) {
                points.push_back(s.pairs[p].location);
                pairs_at.emplace_back();
            }
            for (int r = 0; r < c; ++r) {
                pairs_at[it->second - 1].push_back(p);
            }
        }
        const TspResult r = tsp(points, params);
        t.cost = r.cost;
        for (std::size_t k2 = 1; k2 < r.order.size(); ++k2) {
            const auto& ps = pairs_at[static_cast<std::size_t>(r.order[k2]) - 1];
            t.route.insert(t.route.end(), ps.begin(), ps.end());
        }
    });
    return catalog;
}

/// Count per catalog entry; summed contents equal the pair multiplicities.
struct ConfigSolution {
    /// (catalog index, count), ascending by index, counts positive.
    std::vector<std::pair<std::size_t, int>> counts;
    double cost = 0.0;
    std::size_t settled_states = 0;
};

/// Minimum-cost exact cover of the pair multiplicities by catalog tour types.
///
/// A* over residual multiplicity vectors. Each step covers the first pair with
/// remaining multiplicity, so every configuration is reached along one path.
/// The heuristic charges every remaining pair its cheapest per-member share of
/// a tour containing it, which is consistent, so the first goal settled is
/// optimal. Throws ResourceLimit after params.config_state_cap settled states.
inline ConfigSolution solve_configuration(const SnappedInstance& s, const std::vector<TourType>& catalog,
                                          const Params& params) {
    const std::size_t P = s.pairs.size();
    std::vector<std::vector<std::size_t>> types_with(P);
    std::vector<double> share(P, std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < catalog.size(); ++k) {
        for (const auto& [p, c] : catalog[k].content) {
            types_with[p].push_back(k);
            share[p] = std::min(share[p], catalog[k].cost / catalog[k].size);
        }
    }
    for (std::size_t p = 0; p < P; ++p) {
        if (types_with[p].empty()) {
            throw std::invalid_argument("solve_configuration: pair type " + std::to_string(p) + " has no tour type");
        }
    }

    // States are residual multiplicity vectors stored as byte strings; node
    // addresses in the map are stable, so parents and queue items point at keys.
    using State = std::vector<int>;
    auto key_of = [](const State& st) { return std::string(reinterpret_cast<const char*>(st.data()), st.size() * sizeof(int)); };
    auto decode = [P](const std::string& key, State& st) {
        st.resize(P);
        std::memcpy(st.data(), key.data(), P * sizeof(int));
    };

    struct Node {
        double g = 0.0;
        double h = 0.0;
        const std::string* parent = nullptr;
        std::size_t via_type = 0;
        bool settled = false;
    };
    std::unordered_map<std::string, Node> nodes;
    using QueueItem = std::tuple<double, std::uint64_t, const std::string*>;
    std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> open;
    std::uint64_t seq = 0;

    State start(P);
    double h0 = 0.0;
    for (std::size_t p = 0; p < P; ++p) {
        start[p] = s.pairs[p].multiplicity;
        h0 += start[p] * share[p];
    }
    const auto root = nodes.emplace(key_of(start), Node{0.0, h0, nullptr, 0, false}).first;
    open.emplace(h0, seq++, &root->first);

    // Per catalog entry, the heuristic drop when it is applied.
    std::vector<double> drop(catalog.size(), 0.0);
    for (std::size_t t = 0; t < catalog.size(); ++t) {
        for (const auto& [q, c] : catalog[t].content) {
            drop[t] += c * share[q];
        }
    }

    std::size_t settled = 0;
    State residual;
    while (!open.empty()) {
        const std::string* key = std::get<2>(open.top());
        open.pop();
        Node& node = nodes.find(*key)->second;
        if (node.settled) {
            continue;
        }
        node.settled = true;
        if (++settled > params.config_state_cap) {
            throw ResourceLimit("configuration search exceeds " + std::to_string(params.config_state_cap) +
                                " states; use a larger epsilon or coarser grid overrides");
        }
        decode(*key, residual);
        const auto first = std::find_if(residual.begin(), residual.end(), [](int r) { return r > 0; });
        if (first == residual.end()) {
            ConfigSolution out;
            out.cost = node.g;
            out.settled_states = settled;
            std::map<std::size_t, int> counts;
            for (const Node* n = &node; n->parent != nullptr; n = &nodes.find(*n->parent)->second) {
                ++counts[n->via_type];
            }
            out.counts.assign(counts.begin(), counts.end());
            return out;
        }
        const auto p = static_cast<std::size_t>(first - residual.begin());
        const double g = node.g;
        const double h = node.h;
        for (std::size_t t : types_with[p]) {
            State next = residual;
            bool fits = true;
            for (const auto& [q, c] : catalog[t].content) {
                next[q] -= c;
                fits = fits && next[q] >= 0;
            }
            if (!fits) {
                continue;
            }
            const double g2 = g + catalog[t].cost;
            auto [it, fresh] = nodes.try_emplace(key_of(next));
            if (!fresh && (it->second.settled || it->second.g <= g2)) {
                continue;
            }
            const double h2 = std::max(0.0, h - drop[t]);
            it->second = {g2, h2, key, t, false};
            open.emplace(g2 + h2, seq++, &it->first);
        }
    }
    throw std::logic_error("solve_configuration: no exact cover exists");
}

namespace detail {

// Per pair type, the snapped entries still unbound, ascending by terminal id.
inline std::vector<std::vector<std::size_t>> unbound_entries(const SnappedInstance& s) {
    std::vector<std::vector<std::size_t>> pool(s.pairs.size());
    for (std::size_t k = s.entries.size(); k-- > 0;) {
        pool[s.pair_of[k]].push_back(k);  // reversed so pop_back yields ascending ids
    }
    return pool;
}

inline void append_hub_visit(Tour& tour, int terminal, Point via) {
    tour.detours.push_back({Detour::Kind::hub, tour.visits.size(), 1, via});
    tour.visits.push_back(terminal);
}

}  // namespace detail

/// Expands a configuration into concrete tours on the original terminals.
///
/// Each tour follows its type's route through the centers; every terminal is
/// served by a hub loop center -> terminal -> center, so a terminal displaced
/// by δ from its center adds exactly 2δ. Slots bind to terminals of their pair
/// type in ascending id order.
inline Solution unsnap(const ConfigSolution& config, const std::vector<TourType>& catalog, const SnappedInstance& s) {
    auto pool = detail::unbound_entries(s);
    Solution out;
    for (const auto& [t, count] : config.counts) {
        for (int copy = 0; copy < count; ++copy) {
            Tour tour;
            for (std::size_t p : catalog[t].route) {
                if (pool[p].empty()) {
                    throw std::logic_error("unsnap: configuration uses pair type " + std::to_string(p) +
                                           " beyond its multiplicity");
                }
                const auto& e = s.entries[pool[p].back()];
                pool[p].pop_back();
                detail::append_hub_visit(tour, e.terminal, e.location);
            }
            out.tours.push_back(std::move(tour));
        }
    }
    for (const auto& left : pool) {
        if (!left.empty()) {
            throw std::logic_error("unsnap: configuration leaves terminals uncovered");
        }
    }
    return out;
}

/// Same, for a solution of snapped_instance(s) produced by any solver.
inline Solution unsnap(const Solution& snapped_solution, const SnappedInstance& s) {
    Solution out;
    for (const auto& st : snapped_solution.tours) {
        if (!st.detours.empty()) {
            throw std::invalid_argument("unsnap: expected plain tours on the snapped instance");
        }
        Tour tour;
        for (int k : st.visits) {
            const auto& e = s.entries.at(static_cast<std::size_t>(k));
            detail::append_hub_visit(tour, e.terminal, e.location);
        }
        out.tours.push_back(std::move(tour));
    }
    return out;
}

struct BigSolveResult {
    Solution solution;
    /// Cost of the solution on the snapped, rounded instance.
    double configured_cost = 0.0;
    /// False when a resource guard tripped and the backend solved the snapped
    /// instance instead of the configuration search.
    bool exact_configuration = true;
    std::size_t catalog_size = 0;
    std::size_t pair_types = 0;
};

/// Snap, round, enumerate, solve, unsnap on a given grid. The grid must cover
/// the terminals; callers that cluster small terminals pass their own grid.
inline BigSolveResult big_solve(const Instance& instance, const CenterGrid& grid, const Params& params,
                                std::uint64_t seed = 0) {
    BigSolveResult result;
    if (instance.empty()) {
        return result;
    }
    const SnappedInstance snapped = adaptive_round(snap_to_centers(instance, grid, params), params);
    result.pair_types = snapped.pairs.size();
    try {
        const auto catalog = enumerate_tour_types(snapped, params);
        result.catalog_size = catalog.size();
        const auto config = solve_configuration(snapped, catalog, params);
        result.configured_cost = config.cost;
        result.solution = unsnap(config, catalog, snapped);
    } catch (const ResourceLimit&) {
        if (!params.config_fallback) {
            throw;
        }
        const Instance prime = snapped_instance(snapped);
        const Solution routed = backend_solve(prime, params, seed);
        result.configured_cost = solution_cost(prime, routed);
        result.solution = unsnap(routed, snapped);
        result.exact_configuration = false;
    }
    return result;
}

/// Builds the grid from the instance itself, which must have bounded distance.
inline BigSolveResult big_solve(const Instance& instance, const Params& params, std::uint64_t seed = 0) {
    if (instance.empty()) {
        return {};
    }
    return big_solve(instance, build_grid(instance, params), params, seed);
}

}  // namespace ucvrp

#endif  // UCVRP_BIG_SOLVER_HPP_
