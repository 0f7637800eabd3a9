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

// Instance and solution model for the unsplittable Euclidean CVRP, the
// parameter set shared by every solver, and the feasibility verifier.

#ifndef UCVRP_CORE_HPP_
#define UCVRP_CORE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ucvrp {

/// A configurable resource guard tripped; larger ε or overrides shrink the
/// search.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Absolute tolerance for every capacity and cost comparison.
inline constexpr double kTolerance = 1e-9;

/// Capacity of a single tour. Demands are normalized against it.
inline constexpr double kCapacity = 1.0;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline bool is_finite(const Point& p) {
    return std::isfinite(p.x) && std::isfinite(p.y);
}

struct Terminal {
    int id = 0;
    Point location;
    double demand = 0.0;

    friend bool operator==(const Terminal&, const Terminal&) = default;
};

/// A depot plus terminals whose ids are exactly 0..n-1 in storage order.
///
/// Construct through `make_instance`, which checks every invariant; the solvers
/// assume `terminals[i].id == i`.
struct Instance {
    Point depot;
    std::vector<Terminal> terminals;

    std::size_t size() const { return terminals.size(); }
    bool empty() const { return terminals.empty(); }
    const Terminal& at(int id) const { return terminals.at(static_cast<std::size_t>(id)); }

    /// Distance from the depot to terminal `id`.
    double dist(int id) const { return distance(depot, at(id).location); }

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Throws std::invalid_argument describing the first violated instance
/// invariant.
inline void validate_instance(const Instance& instance) {
    if (!is_finite(instance.depot)) {
        throw std::invalid_argument("depot coordinates must be finite");
    }
    for (std::size_t i = 0; i < instance.terminals.size(); ++i) {
        const Terminal& t = instance.terminals[i];
        const std::string where = "terminal " + std::to_string(i);
        if (t.id != static_cast<int>(i)) {
            throw std::invalid_argument(where + ": ids must be contiguous starting at 0");
        }
        if (!is_finite(t.location)) {
            throw std::invalid_argument(where + ": coordinates must be finite");
        }
        if (!(t.demand > 0.0 && t.demand <= kCapacity)) {
            throw std::invalid_argument(where + ": demand outside (0,1]");
        }
        if (t.location == instance.depot) {
            throw std::invalid_argument(where + ": terminal coincides with the depot");
        }
    }
}

/// Builds an instance from (location, demand) pairs, assigning ids in order.
inline Instance make_instance(Point depot, std::span<const std::pair<Point, double>> terminals) {
    Instance instance;
    instance.depot = depot;
    instance.terminals.reserve(terminals.size());
    for (const auto& [location, demand] : terminals) {
        instance.terminals.push_back({static_cast<int>(instance.terminals.size()), location, demand});
    }
    validate_instance(instance);
    return instance;
}

inline Instance make_instance(Point depot, std::initializer_list<std::pair<Point, double>> terminals) {
    return make_instance(depot, std::span<const std::pair<Point, double>>(terminals.begin(), terminals.size()));
}

inline double total_demand(const Instance& instance) {
    double sum = 0.0;
    for (const auto& t : instance.terminals) {
        sum += t.demand;
    }
    return sum;
}

/// Round trips attached to a tour.
///
/// A `hub` detour makes the vehicle reach `via`, serve visits
/// [anchor, anchor + span) in order and return to `via` before continuing.
/// Snapped and clustered terminals are realized this way: the tour runs through
/// their center and the hub loop carries the extra center-to-terminal edges.
///
/// A `spur` detour leaves the terminal at visits[anchor] for `via` and comes
/// straight back, adding 2 * |visit - via| to the tour.
struct Detour {
    enum class Kind { hub, spur };

    Kind kind = Kind::hub;
    std::size_t anchor = 0;
    std::size_t span = 1;
    Point via;

    friend bool operator==(const Detour&, const Detour&) = default;
};

/// A depot-rooted tour; the depot is implicit at both ends.
struct Tour {
    std::vector<int> visits;
    std::vector<Detour> detours;

    friend bool operator==(const Tour&, const Tour&) = default;
};

struct Solution {
    std::vector<Tour> tours;

    friend bool operator==(const Solution&, const Solution&) = default;
};

/// Empty if the tour's detours are well formed, otherwise a description.
///
/// Hub loops must be non-empty, in range, sorted by anchor and pairwise
/// disjoint; spurs must reference an existing visit.
inline std::optional<std::string> detour_error(const Tour& tour) {
    std::size_t hub_end = 0;
    const std::size_t n = tour.visits.size();
    for (const auto& d : tour.detours) {
        if (!is_finite(d.via)) {
            return "detour point is not finite";
        }
        if (d.kind == Detour::Kind::spur) {
            if (d.anchor >= n) {
                return "spur anchored past the last visit";
            }
            continue;
        }
        if (d.span == 0 || d.anchor >= n || d.span > n - d.anchor) {
            return "hub loop out of range";
        }
        if (d.anchor < hub_end) {
            return "hub loops overlap or are out of order";
        }
        hub_end = d.anchor + d.span;
    }
    return std::nullopt;
}

/// The closed polyline a tour drives, depot to depot, including every detour.
///
/// Its vertex count is visits + 2 * detours + 2.
inline std::vector<Point> tour_polyline(const Instance& instance, const Tour& tour) {
    if (auto err = detour_error(tour)) {
        throw std::invalid_argument(*err);
    }
    const std::size_t n = tour.visits.size();
    std::vector<const Detour*> hub_at(n, nullptr);
    std::vector<std::vector<const Detour*>> spurs_at(n);
    for (const auto& d : tour.detours) {
        if (d.kind == Detour::Kind::hub) {
            hub_at[d.anchor] = &d;
        } else {
            spurs_at[d.anchor].push_back(&d);
        }
    }

    std::vector<Point> line;
    line.reserve(n + 2 * tour.detours.size() + 2);
    line.push_back(instance.depot);
    const Detour* open_hub = nullptr;
    std::size_t hub_last = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (hub_at[k] != nullptr) {
            open_hub = hub_at[k];
            hub_last = k + open_hub->span - 1;
            line.push_back(open_hub->via);
        }
        const int id = tour.visits[k];
        if (id < 0 || static_cast<std::size_t>(id) >= instance.size()) {
            throw std::out_of_range("unknown terminal id " + std::to_string(id));
        }
        const Point here = instance.terminals[static_cast<std::size_t>(id)].location;
        line.push_back(here);
        for (const Detour* s : spurs_at[k]) {
            line.push_back(s->via);
            line.push_back(here);
        }
        if (open_hub != nullptr && k == hub_last) {
            line.push_back(open_hub->via);
            open_hub = nullptr;
        }
    }
    line.push_back(instance.depot);
    return line;
}

inline double polyline_length(std::span<const Point> line) {
    double sum = 0.0;
    for (std::size_t i = 1; i < line.size(); ++i) {
        sum += distance(line[i - 1], line[i]);
    }
    return sum;
}

/// Length of the tour including detours. Throws std::out_of_range for an
/// unknown terminal id.
inline double tour_cost(const Instance& instance, const Tour& tour) {
    return polyline_length(tour_polyline(instance, tour));
}

inline double tour_demand(const Instance& instance, const Tour& tour) {
    double sum = 0.0;
    for (int id : tour.visits) {
        sum += instance.at(id).demand;
    }
    return sum;
}

inline double solution_cost(const Instance& instance, const Solution& solution) {
    double sum = 0.0;
    for (const auto& tour : solution.tours) {
        sum += tour_cost(instance, tour);
    }
    return sum;
}

/// The same tour driven in the opposite direction.
inline Tour reversed(const Tour& tour) {
    Tour out;
    const std::size_t n = tour.visits.size();
    out.visits.assign(tour.visits.rbegin(), tour.visits.rend());
    for (auto it = tour.detours.rbegin(); it != tour.detours.rend(); ++it) {
        Detour d = *it;
        d.anchor = (d.kind == Detour::Kind::hub) ? n - (d.anchor + d.span) : n - 1 - d.anchor;
        out.detours.push_back(d);
    }
    std::stable_sort(out.detours.begin(), out.detours.end(),
                     [](const Detour& a, const Detour& b) { return a.anchor < b.anchor; });
    return out;
}

/// A tour serving `visits` in order with no detours.
inline Tour plain_tour(std::vector<int> visits) {
    return Tour{std::move(visits), {}};
}

/// Minimum and maximum terminal-to-depot distance.
struct DistanceExtremes {
    double d_min = 0.0;
    double d_max = 0.0;
};

inline DistanceExtremes distance_extremes(const Instance& instance) {
    if (instance.empty()) {
        throw std::invalid_argument("distance extremes of an empty instance");
    }
    DistanceExtremes out{instance.dist(0), instance.dist(0)};
    for (const auto& t : instance.terminals) {
        const double d = distance(instance.depot, t.location);
        out.d_min = std::min(out.d_min, d);
        out.d_max = std::max(out.d_max, d);
    }
    return out;
}

/// True when D_max / D_min <= C.
inline bool has_bounded_distance(const Instance& instance, double C) {
    if (instance.empty()) {
        return true;
    }
    const auto [d_min, d_max] = distance_extremes(instance);
    return d_max <= C * d_min * (1.0 + kTolerance);
}

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// Manually set replacements for the guarantee-bearing constants.
struct ParamOverrides {
    std::optional<double> C = std::nullopt;
    std::optional<double> beta = std::nullopt;
    std::optional<double> gamma = std::nullopt;
    std::optional<int> k1 = std::nullopt;
    std::optional<int> k2 = std::nullopt;
    std::optional<double> k_bound = std::nullopt;
};

/// ε and every constant derived from it, plus the resource knobs of the
/// desk-scale substitutes.
///
/// Defaults: C = (1/ε)^(1/ε), β = ε²/(4C), Γ = 32πC³/ε⁵, k1 = ⌈4C/ε²⌉,
/// k2 = ⌈8πC/ε²⌉, k_bound = 32πC²/ε⁴. `overridden` names every constant that
/// was replaced, so reports can state which guarantee no longer applies.
struct Params {
    double epsilon = 0.4;
    double C = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    int k1 = 0;
    int k2 = 0;
    double k_bound = 0.0;
    std::set<std::string> overridden;

    /// Largest point set handed to the Held-Karp solver.
    int exact_threshold = 15;
    /// Largest instance the few-tours backend solves exactly.
    int backend_exact_threshold = 10;
    /// Hard cap on the exact CVRP oracle.
    int exact_cvrp_cap = 10;
    /// Resource guard on the number of tour types in a configuration catalog.
    std::size_t catalog_cap = 1'000'000;
    /// Resource guard on the states settled by the configuration search.
    std::size_t config_state_cap = 4'000;
    /// When a resource guard trips inside the big-terminal solver, solve the
    /// snapped instance with the backend instead of failing.
    bool config_fallback = true;
};

namespace detail {

// ⌈x⌉ that ignores representation noise such as 8 / 0.16 = 50.000000000000007.
inline int ceil_count(double x) {
    if (!std::isfinite(x) || x > 2e9) {
        throw std::overflow_error("derived grid dimension does not fit an int; override C, k1 or k2");
    }
    return static_cast<int>(std::ceil(x - 1e-9));
}

}  // namespace detail

inline Params derive_params(double epsilon, const ParamOverrides& overrides = {}) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    auto positive = [](const char* name, auto value) {
        if (!(value > 0)) {
            throw std::invalid_argument(std::string("override ") + name + " must be positive");
        }
        return value;
    };

    Params p;
    p.epsilon = epsilon;
    const double e2 = epsilon * epsilon;
    constexpr double pi = std::numbers::pi;

    if (overrides.C) {
        p.C = positive("C", *overrides.C);
        p.overridden.insert("C");
    } else {
        p.C = std::pow(1.0 / epsilon, 1.0 / epsilon);
    }
    p.beta = e2 / (4.0 * p.C);
    p.gamma = 32.0 * pi * p.C * p.C * p.C / (e2 * e2 * epsilon);
    p.k_bound = 32.0 * pi * p.C * p.C / (e2 * e2);
    p.k1 = detail::ceil_count(4.0 * p.C / e2);
    p.k2 = detail::ceil_count(8.0 * pi * p.C / e2);

    if (overrides.beta) {
        p.beta = positive("beta", *overrides.beta);
        p.overridden.insert("beta");
    }
    if (overrides.gamma) {
        p.gamma = positive("gamma", *overrides.gamma);
        p.overridden.insert("gamma");
    }
    if (overrides.k1) {
        p.k1 = positive("k1", *overrides.k1);
        p.overridden.insert("k1");
    }
    if (overrides.k2) {
        p.k2 = positive("k2", *overrides.k2);
        p.overridden.insert("k2");
    }
    if (overrides.k_bound) {
        p.k_bound = positive("k_bound", *overrides.k_bound);
        p.overridden.insert("k_bound");
    }
    return p;
}

/// The general pipeline clusters small terminals into demands below 2ε, which
/// must stay under capacity.
inline void require_general_epsilon(const Params& params) {
    if (!(params.epsilon < 0.5)) {
        throw std::invalid_argument("the general solver requires epsilon < 1/2");
    }
}

inline bool is_big(const Params& params, const Terminal& t) {
    return t.demand >= params.epsilon;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct VerifyReport {
    std::vector<int> missing;
    std::vector<int> doubly_covered;
    /// Indices of tours whose demand exceeds capacity by more than kTolerance.
    std::vector<std::size_t> over_capacity;
    /// Tours that are empty, reference unknown ids, or carry broken detours.
    std::vector<std::size_t> malformed;
    double cost = 0.0;

    bool feasible() const {
        return missing.empty() && doubly_covered.empty() && over_capacity.empty() && malformed.empty();
    }
};

/// Checks unsplittable coverage and capacity; violations are reported, never
/// thrown.
inline VerifyReport verify_solution(const Instance& instance, const Solution& solution, const Params& = {}) {
    VerifyReport report;
    std::vector<int> seen(instance.size(), 0);
    for (std::size_t t = 0; t < solution.tours.size(); ++t) {
        const Tour& tour = solution.tours[t];
        bool valid = !tour.visits.empty() && !detour_error(tour);
        for (int id : tour.visits) {
            if (id < 0 || static_cast<std::size_t>(id) >= instance.size()) {
                valid = false;
                continue;
            }
            ++seen[static_cast<std::size_t>(id)];
        }
        if (!valid) {
            report.malformed.push_back(t);
            continue;
        }
        if (tour_demand(instance, tour) > kCapacity + kTolerance) {
            report.over_capacity.push_back(t);
        }
        report.cost += tour_cost(instance, tour);
    }
    for (std::size_t id = 0; id < seen.size(); ++id) {
        if (seen[id] == 0) {
            report.missing.push_back(static_cast<int>(id));
        } else if (seen[id] > 1) {
            report.doubly_covered.push_back(static_cast<int>(id));
        }
    }
    return report;
}

}  // namespace ucvrp

#endif  // UCVRP_CORE_HPP_
