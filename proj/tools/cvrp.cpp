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

// cvrp: solve, verify, generate, benchmark and plot unsplittable CVRP
// instances.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ucvrp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

const char* const kFormatHelp = R"help(
Instance files: "CVRP 1", "DEPOT x y", "N n", then n lines "x y demand" with
demand in (0, 1]; '#' starts a comment. TSPLIB CVRP files (EUC_2D) are
detected by their keywords. Solution files: one tour per line, 0-based
terminal ids in visit order. A hub loop
"( 3 4 @ x y )" drives to (x, y), serves 3 and 4 and returns to (x, y).
A spur "5 < x y >" goes from terminal 5 to (x, y) and back.
Exit codes: 0 ok, 1 infeasible solution, 2 usage or precondition error,
3 I/O or parse error.
)help";

struct ParamFlags {
    double epsilon = 0.4;
    std::optional<double> C, gamma, beta;
    std::optional<int> k1, k2;
    std::optional<int> exact_threshold;

    void attach(CLI::App* app) {
        app->add_option("--epsilon", epsilon, "Accuracy parameter in (0,1)")->capture_default_str();
        app->add_option("--override-C", C, "Replace C = (1/eps)^(1/eps)");
        app->add_option("--override-gamma", gamma, "Replace the many-tours threshold Gamma");
        app->add_option("--override-beta", beta, "Replace the rounding parameter beta");
        app->add_option("--override-k1", k1, "Replace the radial grid count");
        app->add_option("--override-k2", k2, "Replace the angular grid count");
        app->add_option("--exact-threshold", exact_threshold, "Largest point set solved by exact TSP");
    }

    ucvrp::Params build() const {
        ucvrp::ParamOverrides o;
        o.C = C;
        o.gamma = gamma;
        o.beta = beta;
        o.k1 = k1;
        o.k2 = k2;
        ucvrp::Params p = ucvrp::derive_params(epsilon, o);
        if (exact_threshold) {
            if (*exact_threshold < 1 || *exact_threshold > ucvrp::kHeldKarpMaxPoints) {
                throw std::invalid_argument("--exact-threshold must lie in [1, " +
                                            std::to_string(ucvrp::kHeldKarpMaxPoints) + "]");
            }
            p.exact_threshold = *exact_threshold;
        }
        return p;
    }
};

nlohmann::ordered_json report_json(const ucvrp::RunReport& rep, bool with_timing) {
    nlohmann::ordered_json j;
    j["algorithm"] = rep.algorithm;
    j["branch"] = rep.branch;
    j["cost"] = rep.cost;
    j["tour_count"] = rep.tour_count;
    j["Y"] = rep.Y;
    j["W"] = rep.W ? nlohmann::ordered_json(*rep.W) : nlohmann::ordered_json(nullptr);
    j["parts"] = rep.parts;
    j["seed"] = rep.seed;
    const auto& p = rep.params;
    j["params"] = {{"epsilon", p.epsilon}, {"C", p.C},   {"beta", p.beta},
                   {"gamma", p.gamma},     {"k1", p.k1}, {"k2", p.k2},
                   {"exact_threshold", p.exact_threshold},
                   {"overridden", std::vector<std::string>(p.overridden.begin(), p.overridden.end())}};
    if (with_timing) {
        j["wall_time_s"] = rep.wall_time.count();
    }
    return j;
}

std::string verify_text(const ucvrp::VerifyReport& r) {
    std::ostringstream out;
    auto list = [&](const char* key, const auto& v) {
        out << key << '=';
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
        out << '\n';
    };
    out << "feasible=" << (r.feasible() ? "true" : "false") << '\n';
    out << "cost=" << ucvrp::format_real(r.cost) << '\n';
    list("missing", r.missing);
    list("doubly_covered", r.doubly_covered);
    list("over_capacity_tours", r.over_capacity);
    list("malformed_tours", r.malformed);
    return out.str();
}

nlohmann::ordered_json verify_json(const ucvrp::VerifyReport& r) {
    nlohmann::ordered_json j;
    j["feasible"] = r.feasible();
    j["cost"] = r.cost;
    j["missing"] = r.missing;
    j["doubly_covered"] = r.doubly_covered;
    j["over_capacity_tours"] = r.over_capacity;
    j["malformed_tours"] = r.malformed;
    return j;
}

// "6..8" or "7".
std::pair<int, int> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            const int v = std::stoi(s);
            return {v, v};
        }
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw std::invalid_argument("bad range '" + s + "', expected N or LO..HI");
    }
}

ucvrp::Instance load_instance(const std::string& path) {
    return ucvrp::parse_instance(ucvrp::read_text_file(path));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unsplittable capacitated vehicle routing in the plane"};
    app.footer(kFormatHelp);
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Run an algorithm on an instance and print its report");
    ParamFlags solve_params;
    solve_params.attach(solve);
    std::string solve_in, solve_alg = "auto", solve_out, solve_svg;
    std::uint64_t solve_seed = 0;
    bool solve_json = false, solve_timing = false;
    solve->add_option("instance", solve_in, "Instance file")->required();
    solve->add_option("--alg", solve_alg, "auto, big, many-tours, few-tours, itp or exact")
        ->check(CLI::IsMember(ucvrp::algorithm_names()))
        ->capture_default_str();
    solve->add_option("--seed", solve_seed, "Seed for tie-breaking heuristics")->capture_default_str();
    solve->add_option("--out", solve_out, "Write the solution file here");
    solve->add_option("--svg", solve_svg, "Write an SVG plot here");
    solve->add_flag("--json", solve_json, "Print the report as JSON");
    solve->add_flag("--timing", solve_timing, "Include wall time in the report");

    // verify
    auto* verify = app.add_subcommand("verify", "Check a solution against an instance");
    std::string verify_in, verify_sol;
    bool verify_as_json = false;
    verify->add_option("instance", verify_in, "Instance file")->required();
    verify->add_option("solution", verify_sol, "Solution file")->required();
    verify->add_flag("--json", verify_as_json, "Print the report as JSON");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a random instance");
    ucvrp::GeneratorSpec gspec;
    std::string gen_kind = "uniform-disk", gen_law = "uniform", gen_out;
    double law_lo = 0.05, law_hi = 1.0, law_value = 0.5, law_p_big = 0.3, law_eps = 0.4;
    gen->add_option("--kind", gen_kind, "uniform-disk, annulus, clustered or co-located")->capture_default_str();
    gen->add_option("--n", gspec.n, "Number of terminals")->capture_default_str();
    gen->add_option("--seed", gspec.seed, "Generator seed")->capture_default_str();
    gen->add_option("--law", gen_law, "Demand law: uniform, fixed or mixed")->capture_default_str();
    gen->add_option("--lo", law_lo, "uniform: lowest demand")->capture_default_str();
    gen->add_option("--hi", law_hi, "uniform: highest demand")->capture_default_str();
    gen->add_option("--value", law_value, "fixed: the demand")->capture_default_str();
    gen->add_option("--p-big", law_p_big, "mixed: probability of a big terminal")->capture_default_str();
    gen->add_option("--epsilon", law_eps, "mixed: big/small threshold")->capture_default_str();
    gen->add_option("--radius", gspec.radius, "Disk radius")->capture_default_str();
    gen->add_option("--inner-radius", gspec.inner_radius, "annulus: inner radius")->capture_default_str();
    gen->add_option("--outer-radius", gspec.outer_radius, "annulus: outer radius")->capture_default_str();
    gen->add_option("--clusters", gspec.clusters, "clustered: number of clusters")->capture_default_str();
    gen->add_option("--spread", gspec.spread, "clustered: cluster radius")->capture_default_str();
    gen->add_option("--out", gen_out, "Output file (stdout when omitted)");

    // bench
    auto* bench = app.add_subcommand("bench", "Ratio table over generated instances");
    ucvrp::BenchConfig bcfg;
    ParamFlags bench_params;
    bench_params.C = 2.0;
    bench_params.gamma = 4.0;
    bench_params.attach(bench);
    std::string bench_n = "6..8";
    bool bench_rows = false;
    bench->add_option("--n", bench_n, "Instance sizes, N or LO..HI")->capture_default_str();
    bench->add_option("--trials", bcfg.trials, "Instances per size")->capture_default_str();
    bench->add_option("--seed", bcfg.seed, "Base seed")->capture_default_str();
    bench->add_option("--alg", bcfg.algorithms, "Algorithms to compare");
    bench->add_option("--p-big", bcfg.p_big, "Probability of a big terminal")->capture_default_str();
    bench->add_flag("--rows", bench_rows, "Also print every run");

    // plot
    auto* plot = app.add_subcommand("plot", "Render a solution as SVG");
    std::string plot_in, plot_sol, plot_out;
    plot->add_option("instance", plot_in, "Instance file")->required();
    plot->add_option("solution", plot_sol, "Solution file")->required();
    plot->add_option("--out", plot_out, "SVG file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve) {
            const ucvrp::Params params = solve_params.build();
            const ucvrp::Instance instance = load_instance(solve_in);
            const auto run = ucvrp::run_algorithm(solve_alg, instance, params, solve_seed);
            const auto check = ucvrp::verify_solution(instance, run.solution, params);
            if (!check.feasible()) {
                std::cerr << "error: solver produced an infeasible solution; nothing written\n"
                          << verify_text(check);
                return kExitInfeasible;
            }
            if (!solve_out.empty()) {
                ucvrp::write_text_file(solve_out, ucvrp::emit_solution(run.solution));
            }
            if (!solve_svg.empty()) {
                ucvrp::emit_svg(instance, run.solution, solve_svg);
            }
            if (solve_json) {
                std::cout << report_json(run.report, solve_timing).dump(2) << '\n';
            } else {
                std::cout << ucvrp::format_report(run.report, solve_timing);
            }
            return kExitOk;
        }
        if (*verify) {
            const ucvrp::Instance instance = load_instance(verify_in);
            const ucvrp::Solution solution = ucvrp::parse_solution(ucvrp::read_text_file(verify_sol));
            const auto report = ucvrp::verify_solution(instance, solution);
            if (verify_as_json) {
                std::cout << verify_json(report).dump(2) << '\n';
            } else {
                std::cout << verify_text(report);
            }
            return report.feasible() ? kExitOk : kExitInfeasible;
        }
        if (*gen) {
            gspec.kind = ucvrp::geometry_from_string(gen_kind);
            if (gen_law == "uniform") {
                gspec.law = ucvrp::DemandLaw::uniform(law_lo, law_hi);
            } else if (gen_law == "fixed") {
                gspec.law = ucvrp::DemandLaw::fixed(law_value);
            } else if (gen_law == "mixed") {
                gspec.law = ucvrp::DemandLaw::mixed(law_p_big, law_eps);
            } else {
                throw std::invalid_argument("unknown demand law '" + gen_law + "'");
            }
            const std::string text = ucvrp::emit_native(ucvrp::generate(gspec));
            if (gen_out.empty()) {
                std::cout << text;
            } else {
                ucvrp::write_text_file(gen_out, text);
            }
            return kExitOk;
        }
        if (*bench) {
            bcfg.params = bench_params.build();
            std::tie(bcfg.n_lo, bcfg.n_hi) = parse_range(bench_n);
            if (bcfg.n_lo < 1 || bcfg.n_hi < bcfg.n_lo || bcfg.trials < 1) {
                throw std::invalid_argument("bench needs 1 <= LO <= HI and trials >= 1");
            }
            for (const auto& a : bcfg.algorithms) {
                if (a == "big") throw std::invalid_argument("bench does not run 'big' on mixed instances");
                if (std::find(ucvrp::algorithm_names().begin(), ucvrp::algorithm_names().end(), a) ==
                    ucvrp::algorithm_names().end()) {
                    throw std::invalid_argument("unknown algorithm '" + a + "'");
                }
            }
            std::cout << ucvrp::format_bench(bcfg, ucvrp::run_bench(bcfg), bench_rows);
            return kExitOk;
        }
        if (*plot) {
            const ucvrp::Instance instance = load_instance(plot_in);
            const ucvrp::Solution solution = ucvrp::parse_solution(ucvrp::read_text_file(plot_sol));
            const auto check = ucvrp::verify_solution(instance, solution);
            if (!check.feasible()) {
                std::cerr << "error: refusing to plot an infeasible solution\n" << verify_text(check);
                return kExitInfeasible;
            }
            ucvrp::emit_svg(instance, solution, plot_out);
            return kExitOk;
        }
    } catch (const ucvrp::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ucvrp::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ucvrp::ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
