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

#ifndef UCVRP_BACKEND_HPP_
#define UCVRP_BACKEND_HPP_

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <vector>

#include "ucvrp/baselines.hpp"
#include "ucvrp/core.hpp"

namespace ucvrp {

namespace detail {

// Routes as plain terminal sequences with cached loads, for the savings
// construction and the local search that follows it.
class RouteSet {
public:
    explicit RouteSet(const Instance& instance) : inst_(instance) {}

    const Instance& instance() const { return inst_; }

    double d(int a, int b) const {
        const Point pa = a < 0 ? inst_.depot : inst_.at(a).location;
        const Point pb = b < 0 ? inst_.depot : inst_.at(b).location;
        return distance(pa, pb);
    }

    double route_cost(const std::vector<int>& r) const {
        if (r.empty()) {
            return 0.0;
        }
        double c = d(-1, r.front()) + d(r.back(), -1);
        for (std::size_t k = 1; k < r.size(); ++k) {
            c += d(r[k - 1], r[k]);
        }
        return c;
    }

    double load(const std::vector<int>& r) const {
        double s = 0.0;
        for (int id : r) {
            s += inst_.at(id).demand;
        }
        return s;
    }

    // Predecessor/successor of position k, the depot being -1.
    int before(const std::vector<int>& r, std::size_t k) const { return k == 0 ? -1 : r[k - 1]; }
    int after(const std::vector<int>& r, std::size_t k) const { return k + 1 == r.size() ? -1 : r[k + 1]; }

private:
    const Instance& inst_;
};

inline std::vector<std::vector<int>> savings_routes(const RouteSet& rs) {
    const Instance& inst = rs.instance();
    const int n = static_cast<int>(inst.size());
    std::vector<std::vector<int>> routes(static_cast<std::size_t>(n));
    std::vector<int> route_of(static_cast<std::size_t>(n));
    std::vector<double> load(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        routes[static_cast<std::size_t>(i)] = {i};
        route_of[static_cast<std::size_t>(i)] = i;
        load[static_cast<std::size_t>(i)] = inst.at(i).demand;
    }

    std::vector<std::tuple<double, int, int>> savings;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            savings.emplace_back(rs.d(-1, i) + rs.d(-1, j) - rs.d(i, j), i, j);
        }
    }
    std::stable_sort(savings.begin(), savings.end(),
                     [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });

    for (const auto& [value, i, j] : savings) {
        if (value <= 0.0) {
            break;
        }
        const int ri = route_of[static_cast<std::size_t>(i)];
        const int rj = route_of[static_cast<std::size_t>(j)];
        if (ri == rj || load[static_cast<std::size_t>(ri)] + load[static_cast<std::size_t>(rj)] > kCapacity + kTolerance) {
            continue;
        }
        auto& a = routes[static_cast<std::size_t>(ri)];
        auto& b = routes[static_cast<std::size_t>(rj)];
        const bool i_end = a.back() == i, i_front = a.front() == i;
        const bool j_end = b.back() == j, j_front = b.front() == j;
        if (!(i_end || i_front) || !(j_end || j_front)) {
            continue;
        }
        // Orient so that i closes a and j opens b.
        if (!i_end) {
            std::reverse(a.begin(), a.end());
        }
        if (!j_front) {
            std::reverse(b.begin(), b.end());
        }
        for (int id : b) {
            a.push_back(id);
            route_of[static_cast<std::size_t>(id)] = ri;
        }
        b.clear();
        load[static_cast<std::size_t>(ri)] += load[static_cast<std::size_t>(rj)];
        load[static_cast<std::size_t>(rj)] = 0.0;
    }
    std::erase_if(routes, [](const auto& r) { return r.empty(); });
    return routes;
}

inline bool improve_two_opt(const RouteSet& rs, std::vector<int>& r) {
    const std::size_t n = r.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // Reverse r[i..j].
            const int a = rs.before(r, i), b = r[i], c = r[j], e = rs.after(r, j);
            const double delta = rs.d(a, c) + rs.d(b, e) - rs.d(a, b) - rs.d(c, e);
            if (delta < -1e-10) {
                std::reverse(r.begin() + static_cast<std::ptrdiff_t>(i), r.begin() + static_cast<std::ptrdiff_t>(j + 1));
                return true;
            }
        }
    }
    return false;
}

inline bool improve_relocate(const RouteSet& rs, std::vector<std::vector<int>>& routes) {
    for (std::size_t from = 0; from < routes.size(); ++from) {
        auto& src = routes[from];
        for (std::size_t p = 0; p < src.size(); ++p) {
            const int v = src[p];
            const double dem = rs.instance().at(v).demand;
            const int pv = rs.before(src, p), nv = rs.after(src, p);
            const double removal = rs.d(pv, nv) - rs.d(pv, v) - rs.d(v, nv);
            for (std::size_t to = 0; to < routes.size(); ++to) {
                if (to == from) {
                    continue;
                }
                auto& dst = routes[to];
                if (rs.load(dst) + dem > kCapacity + kTolerance) {
                    continue;
                }
                for (std::size_t q = 0; q <= dst.size(); ++q) {
                    const int a = q == 0 ? -1 : dst[q - 1];
                    const int b = q == dst.size() ? -1 : dst[q];
                    const double insertion = rs.d(a, v) + rs.d(v, b) - rs.d(a, b);
                    if (removal + insertion < -1e-10) {
                        dst.insert(dst.begin() + static_cast<std::ptrdiff_t>(q), v);
                        src.erase(src.begin() + static_cast<std::ptrdiff_t>(p));
                        if (src.empty()) {
                            routes.erase(routes.begin() + static_cast<std::ptrdiff_t>(from));
                        }
                        return true;
                    }
                }
            }
        }
    }
    return false;
}

inline bool improve_swap(const RouteSet& rs, std::vector<std::vector<int>>& routes) {
    for (std::size_t r1 = 0; r1 < routes.size(); ++r1) {
        for (std::size_t r2 = r1 + 1; r2 < routes.size(); ++r2) {
            auto& x = routes[r1];
            auto& y = routes[r2];
            const double lx = rs.load(x), ly = rs.load(y);
            for (std::size_t p = 0; p < x.size(); ++p) {
                for (std::size_t q = 0; q < y.size(); ++q) {
                    const int u = x[p], v = y[q];
                    const double du = rs.instance().at(u).demand, dv = rs.instance().at(v).demand;
                    if (lx - du + dv > kCapacity + kTolerance || ly - dv + du > kCapacity + kTolerance) {
                        continue;
                    }
                    const int pu = rs.before(x, p), nu = rs.after(x, p);
                    const int pv = rs.before(y, q), nv = rs.after(y, q);
                    const double delta = rs.d(pu, v) + rs.d(v, nu) - rs.d(pu, u) - rs.d(u, nu) + rs.d(pv, u) +
                                         rs.d(u, nv) - rs.d(pv, v) - rs.d(v, nv);
                    if (delta < -1e-10) {
                        std::swap(x[p], y[q]);
                        return true;
                    }
                }
            }
        }
    }
    return false;
}

}  // namespace detail

/// Clarke-Wright savings followed by 2-opt, relocate and swap moves applied
/// first-improvement until none helps (or `max_moves` is reached).
inline Solution savings_local_search(const Instance& instance, std::size_t max_moves = 100'000) {
    detail::RouteSet rs(instance);
    auto routes = detail::savings_routes(rs);
    for (std::size_t moves = 0; moves < max_moves; ++moves) {
        bool improved = false;
        for (auto& r : routes) {
            while (detail::improve_two_opt(rs, r)) {
                improved = true;
            }
        }
        if (detail::improve_relocate(rs, routes) || detail::improve_swap(rs, routes)) {
            improved = true;
        }
        if (!improved) {
            break;
        }
    }
    Solution out;
    for (auto& r : routes) {
        out.tours.push_back(plain_tour(std::move(r)));
    }
    return out;
}

/// Solver for instances handed over by the few-tours path and the
/// big-terminal fallback. Exact up to params.backend_exact_threshold
/// terminals, savings + local search beyond. Always returns plain tours.
inline Solution backend_solve(const Instance& instance, const Params& params, std::uint64_t = 0) {
    if (static_cast<int>(instance.size()) <= params.backend_exact_threshold &&
        static_cast<int>(instance.size()) <= kExactCvrpMaxTerminals) {
        return exact_cvrp(instance, params.backend_exact_threshold).solution;
    }
    return savings_local_search(instance);
}

}  // namespace ucvrp

#endif  // UCVRP_BACKEND_HPP_
