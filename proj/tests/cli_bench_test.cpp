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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <regex>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "ucvrp.hpp"

namespace {

namespace fs = std::filesystem;
using ucvrp::Point;

struct Run {
    int code = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string(CVRP_BINARY) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    while (std::fgets(buf, sizeof(buf), pipe)) r.out += buf;
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class Workdir : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("ucvrp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
    return n;
}

ucvrp::Instance mixed(std::uint64_t seed, int n) {
    ucvrp::GeneratorSpec spec;
    spec.n = n;
    spec.seed = seed;
    spec.law = ucvrp::DemandLaw::mixed(0.3, 0.4);
    return ucvrp::generate(spec);
}

TEST(RunAlgorithm, EveryNameProducesFeasibleOutput) {
    const auto params = ucvrp::derive_params(0.4, {.C = 2.0, .gamma = 4.0});
    const auto inst = mixed(3, 9);
    for (const auto& name : ucvrp::algorithm_names()) {
        if (name == "big") continue;
        const auto r = ucvrp::run_algorithm(name, inst, params, 1);
        const auto v = ucvrp::verify_solution(inst, r.solution);
        EXPECT_TRUE(v.feasible()) << name;
        EXPECT_NEAR(r.report.cost, v.cost, 1e-9) << name;
        EXPECT_EQ(r.report.tour_count, r.solution.tours.size());
        EXPECT_DOUBLE_EQ(r.report.Y, ucvrp::total_demand(inst));
    }
    EXPECT_THROW(ucvrp::run_algorithm("nope", inst, params), std::invalid_argument);
    EXPECT_THROW(ucvrp::run_algorithm("big", inst, params), std::invalid_argument);
}

TEST(RunAlgorithm, AutoReportsDispatchBranch) {
    const auto params = ucvrp::derive_params(0.4, {.C = 2.0, .gamma = 5.0});
    const auto r = ucvrp::run_algorithm("auto", mixed(8, 30), params);
    EXPECT_TRUE(r.report.branch == "many-tours" || r.report.branch == "few-tours");
    const auto text = ucvrp::format_report(r.report);
    EXPECT_NE(text.find("branch=" + r.report.branch + "\n"), std::string::npos);
    EXPECT_NE(text.find("overridden=C,gamma\n"), std::string::npos);
    EXPECT_EQ(text.find("wall_time"), std::string::npos);
    EXPECT_NE(ucvrp::format_report(r.report, true).find("wall_time_s="), std::string::npos);
}

TEST(Svg, EmptySolutionShowsDepotOnly) {
    const auto svg = ucvrp::render_svg(ucvrp::Instance{}, ucvrp::Solution{});
    EXPECT_EQ(count_of(svg, "class=\"depot\""), 1u);
    EXPECT_EQ(count_of(svg, "<polyline"), 0u);
    EXPECT_EQ(count_of(svg, "<circle"), 0u);
}

TEST(Svg, OneTourStartsAndEndsAtDepot) {
    const auto inst = ucvrp::make_instance({0, 0}, {{{1, 0}, 0.5}, {{0, 1}, 0.3}});
    const auto svg = ucvrp::render_svg(inst, {{ucvrp::plain_tour({0, 1})}});
    std::smatch m;
    ASSERT_TRUE(std::regex_search(svg, m, std::regex("points=\"([^\"]*)\"")));
    const std::string pts = m[1];
    const auto first = pts.substr(0, pts.find(' '));
    const auto last = pts.substr(pts.rfind(' ') + 1);
    EXPECT_EQ(first, last);
    EXPECT_EQ(count_of(pts, " ") + 1, 4u);
    EXPECT_EQ(count_of(svg, "<circle"), 2u);
}

TEST(Svg, PolylineVertexCountOnStitchedSolution) {
    const auto params = ucvrp::derive_params(0.4, {.C = 2.0});
    ucvrp::GeneratorSpec spec;
    spec.kind = ucvrp::GeometryKind::annulus;
    spec.n = 25;
    spec.law = ucvrp::DemandLaw::mixed(0.3, 0.4);
    const auto inst = ucvrp::generate(spec);
    const auto sol = ucvrp::many_tours_solve(inst, params).solution;
    const auto svg = ucvrp::render_svg(inst, sol);
    std::size_t k = 0;
    const std::regex points("points=\"([^\"]*)\"");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), points); it != std::sregex_iterator(); ++it, ++k) {
        const auto& t = sol.tours[k];
        EXPECT_EQ(count_of((*it)[1].str(), " ") + 1, t.visits.size() + 2 * t.detours.size() + 2);
    }
    EXPECT_EQ(k, sol.tours.size());
    EXPECT_EQ(svg, ucvrp::render_svg(inst, sol));
}

TEST(Bench, RatiosAgainstExactAreAtLeastOne) {
    ucvrp::BenchConfig cfg;
    cfg.n_lo = 3;
    cfg.n_hi = 5;
    cfg.trials = 4;
    const auto r = ucvrp::run_bench(cfg);
    EXPECT_EQ(r.rows.size(), 3u * 4u * cfg.algorithms.size());
    for (const auto& row : r.rows) {
        EXPECT_TRUE(row.exact_reference);
        EXPECT_GE(row.ratio, 1.0 - 1e-9) << row.algorithm;
    }
    const auto text = ucvrp::format_bench(cfg, r);
    EXPECT_NE(text.find("regression bar"), std::string::npos);
    EXPECT_EQ(text, ucvrp::format_bench(cfg, ucvrp::run_bench(cfg)));
}

TEST(Bench, BestKnownReferenceAboveCap) {
    ucvrp::BenchConfig cfg;
    cfg.n_lo = cfg.n_hi = 12;
    cfg.trials = 2;
    const auto r = ucvrp::run_bench(cfg);
    for (const auto& row : r.rows) {
        EXPECT_FALSE(row.exact_reference);
        EXPECT_GE(row.ratio, 1.0 - 1e-12);
    }
}

TEST_F(Workdir, SolveAutoPrintsBranch) {
    ucvrp::write_text_file(path("in.cvrp"), ucvrp::emit_native(mixed(2, 20)));
    const auto r = run_cli("solve --alg auto --epsilon 0.4 --override-C 2 --override-gamma 5 " + path("in.cvrp") +
                           " --out " + path("sol.txt") + " --svg " + path("plot.svg"));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(r.out.find("branch=many-tours") != std::string::npos ||
                r.out.find("branch=few-tours") != std::string::npos);
    EXPECT_TRUE(fs::exists(path("plot.svg")));
    const auto v = run_cli("verify " + path("in.cvrp") + " " + path("sol.txt"));
    EXPECT_EQ(v.code, 0) << v.out;
    EXPECT_NE(v.out.find("feasible=true"), std::string::npos);
}

TEST_F(Workdir, VerifyTamperedSolution) {
    const auto inst = ucvrp::make_instance({0, 0}, {{{1, 0}, 0.6}, {{2, 0}, 0.6}, {{0, 3}, 0.2}});
    ucvrp::write_text_file(path("in.cvrp"), ucvrp::emit_native(inst));
    ucvrp::write_text_file(path("sol.txt"), "0 1\n0\n");
    const auto r = run_cli("verify " + path("in.cvrp") + " " + path("sol.txt"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("missing=2"), std::string::npos);
    EXPECT_NE(r.out.find("doubly_covered=0"), std::string::npos);
    EXPECT_NE(r.out.find("over_capacity_tours=0"), std::string::npos);
    const auto j = run_cli("verify --json " + path("in.cvrp") + " " + path("sol.txt"));
    EXPECT_EQ(j.code, 1);
    EXPECT_NE(j.out.find("\"feasible\": false"), std::string::npos);
}

TEST_F(Workdir, ExitCodes) {
    EXPECT_EQ(run_cli("").code, 2);
    EXPECT_EQ(run_cli("solve").code, 2);
    EXPECT_EQ(run_cli("solve --alg nope x").code, 2);
    EXPECT_EQ(run_cli("--help").code, 0);
    EXPECT_EQ(run_cli("solve " + path("missing.cvrp")).code, 3);
    ucvrp::write_text_file(path("bad.cvrp"), "CVRP 1\nDEPOT 0 0\nN 1\n1 0 1.5\n");
    const auto bad = run_cli("solve " + path("bad.cvrp"));
    EXPECT_EQ(bad.code, 3);
    EXPECT_NE(bad.out.find("line 4"), std::string::npos);
    ucvrp::write_text_file(path("ok.cvrp"), "CVRP 1\nDEPOT 0 0\nN 1\n1 0 0.5\n");
    EXPECT_EQ(run_cli("solve --epsilon 1.5 " + path("ok.cvrp")).code, 2);
    EXPECT_EQ(run_cli("solve --epsilon 0.5 " + path("ok.cvrp")).code, 2);
}

TEST_F(Workdir, GenThenSolveJson) {
    const auto g = run_cli("gen --kind annulus --n 12 --law mixed --seed 4 --out " + path("g.cvrp"));
    ASSERT_EQ(g.code, 0) << g.out;
    const auto inst = ucvrp::parse_instance(ucvrp::read_text_file(path("g.cvrp")));
    EXPECT_EQ(inst.size(), 12u);
    const auto r = run_cli("solve --json --alg itp " + path("g.cvrp"));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("\"branch\": \"itp\""), std::string::npos);
}

TEST_F(Workdir, PlotWritesSvg) {
    const auto inst = ucvrp::make_instance({0, 0}, {{{1, 0}, 0.5}, {{0, 1}, 0.3}});
    ucvrp::write_text_file(path("in.cvrp"), ucvrp::emit_native(inst));
    ucvrp::write_text_file(path("sol.txt"), "0 1\n");
    ASSERT_EQ(run_cli("plot " + path("in.cvrp") + " " + path("sol.txt") + " --out " + path("p.svg")).code, 0);
    EXPECT_EQ(ucvrp::read_text_file(path("p.svg")), ucvrp::render_svg(inst, {{ucvrp::plain_tour({0, 1})}}));
    ucvrp::write_text_file(path("bad.txt"), "0\n");
    EXPECT_EQ(run_cli("plot " + path("in.cvrp") + " " + path("bad.txt") + " --out " + path("q.svg")).code, 1);
}

TEST_F(Workdir, BenchCommand) {
    const auto r = run_cli("bench --n 4..5 --trials 3 --seed 7");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("mean_ratio"), std::string::npos);
    EXPECT_NE(r.out.find("regression bar"), std::string::npos);
    EXPECT_EQ(run_cli("bench --n x").code, 2);
}

}  // namespace
