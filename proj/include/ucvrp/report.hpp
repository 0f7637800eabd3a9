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

// Named algorithms behind one entry point, and the run report they produce.

#ifndef UCVRP_REPORT_HPP_
#define UCVRP_REPORT_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ucvrp/baselines.hpp"
#include "ucvrp/big_solver.hpp"
#include "ucvrp/core.hpp"
#include "ucvrp/general_solver.hpp"
#include "ucvrp/instance_io.hpp"

namespace ucvrp {

/// Names accepted by run_algorithm.
inline const std::vector<std::string>& algorithm_names() {
    static const std::vector<std::string> names{"auto", "big", "many-tours", "few-tours", "itp", "exact"};
    return names;
}

struct RunReport {
    std::string algorithm;
    double cost = 0.0;
    std::size_t tour_count = 0;
    double Y = 0.0;
    /// big, many-tours, few-tours, itp or exact. For auto, the branch of the
    /// part carrying the most demand.
    std::string branch;
    std::optional<double> W;
    std::size_t parts = 1;
    Params params;
    std::chrono::duration<double> wall_time{0.0};
    std::uint64_t seed = 0;
};

struct RunResult {
    Solution solution;
    RunReport report;
};

/// Runs `algorithm` and fills the report. Throws std::invalid_argument for an
/// unknown name or a violated solver precondition. The grid-based algorithms
/// (big, many-tours) run on each bounded-distance part separately.
inline RunResult run_algorithm(std::string_view algorithm, const Instance& instance, const Params& params,
                               std::uint64_t seed = 0) {
    const auto start = std::chrono::steady_clock::now();
    RunResult r;
    RunReport& rep = r.report;
    rep.algorithm = std::string(algorithm);
    rep.params = params;
    rep.seed = seed;
    rep.Y = total_demand(instance);

    if (algorithm == "auto") {
        DispatchResult d = dispatch(instance, params, seed);
        r.solution = std::move(d.solution);
        rep.W = d.W();
        rep.parts = d.parts.size();
        rep.branch = to_string(Branch::few_tours);
        double heaviest = -1.0;
        for (const auto& p : d.parts) {
            if (p.Y > heaviest) {
                heaviest = p.Y;
                rep.branch = to_string(p.branch);
            }
        }
    } else if (algorithm == "big") {
        for (const auto& t : instance.terminals) {
            if (!is_big(params, t)) {
                throw std::invalid_argument("big: terminal " + std::to_string(t.id) + " has demand below epsilon");
            }
        }
        const SubinstancePlan plan = bounded_distance_partition(instance, params);
        for (const auto& ids : plan.parts) {
            Solution part = lift_solution(big_solve(sub_instance(instance, ids), params, seed).solution, ids);
            for (auto& t : part.tours) {
                r.solution.tours.push_back(std::move(t));
            }
        }
        rep.parts = plan.parts.size();
        rep.branch = "big";
    } else if (algorithm == "many-tours") {
        DispatchResult d = dispatch(instance, params, seed, Branch::many_tours);
        r.solution = std::move(d.solution);
        rep.W = d.W();
        rep.parts = d.parts.size();
        rep.branch = to_string(Branch::many_tours);
    } else if (algorithm == "few-tours") {
        r.solution = few_tours_solve(instance, params, seed).solution;
        rep.branch = to_string(Branch::few_tours);
    } else if (algorithm == "itp") {
        r.solution = itp_unsplittable(instance, params, seed);
        rep.branch = "itp";
    } else if (algorithm == "exact") {
        r.solution = exact_cvrp(instance, params.exact_cvrp_cap).solution;
        rep.branch = "exact";
    } else {
        throw std::invalid_argument("unknown algorithm '" + std::string(algorithm) + "'");
    }
    rep.cost = solution_cost(instance, r.solution);
    rep.tour_count = r.solution.tours.size();
    rep.wall_time = std::chrono::steady_clock::now() - start;
    return r;
}

/// key=value lines. Wall time is omitted unless asked for so that repeated
/// runs print identical reports.
inline std::string format_report(const RunReport& rep, bool with_timing = false) {
    std::ostringstream out;
    out << "algorithm=" << rep.algorithm << '\n';
    out << "branch=" << rep.branch << '\n';
    out << "cost=" << format_real(rep.cost) << '\n';
    out << "tour_count=" << rep.tour_count << '\n';
    out << "Y=" << format_real(rep.Y) << '\n';
    if (rep.W) {
        out << "W=" << format_real(*rep.W) << '\n';
    }
    out << "parts=" << rep.parts << '\n';
    out << "seed=" << rep.seed << '\n';
    const Params& p = rep.params;
    out << "epsilon=" << format_real(p.epsilon) << '\n';
    out << "C=" << format_real(p.C) << '\n';
    out << "beta=" << format_real(p.beta) << '\n';
    out << "gamma=" << format_real(p.gamma) << '\n';
    out << "k1=" << p.k1 << '\n';
    out << "k2=" << p.k2 << '\n';
    out << "exact_threshold=" << p.exact_threshold << '\n';
    out << "overridden=";
    bool first = true;
    for (const auto& name : p.overridden) {
        out << (first ? "" : ",") << name;
        first = false;
    }
    out << '\n';
    if (with_timing) {
        out << "wall_time_s=" << format_real(rep.wall_time.count()) << '\n';
    }
    return out.str();
}

}  // namespace ucvrp

#endif  // UCVRP_REPORT_HPP_
