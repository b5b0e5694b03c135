#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "cover/bench.hpp"
#include "cover/exact_boundary.hpp"
#include "cover/scenario.hpp"
#include "test_support.hpp"

using namespace cover;
using namespace cover::bench;

namespace {

Scene seeded(std::uint64_t seed, std::size_t m = 50, std::size_t n = 30) {
    scenario::GenSpec spec;
    spec.seed = seed;
    spec.n_vertices = m;
    spec.n_circles = n;
    return scenario::gen_scene(spec);
}

BenchParams quick_params() {
    BenchParams p;
    p.baselines.mc_samples = 20'000;
    p.baselines.ug_resolution = 100;
    p.baselines.gi_resolution = 40;
    p.baselines.as_max_depth = 6;
    p.record_time = false;
    return p;
}

std::string csv(std::span<const TrialRecord> rows) {
    std::ostringstream out;
    write_csv(out, rows);
    return out.str();
}

std::filesystem::path scratch() {
    const auto dir = std::filesystem::temp_directory_path() / "cover_bench_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

int run_cli(const std::string& args) {
    const char* cli = std::getenv("COVER_CLI");
    if (!cli) return -1;
    return std::system((std::string(cli) + " " + args + " > /dev/null 2>&1").c_str());
}

}  // namespace

TEST(Methods, ParseNamesAndLists) {
    EXPECT_EQ(parse_method("aqbf"), Method::Aqbf);
    EXPECT_EQ(parse_method("bi"), Method::Bi);
    EXPECT_EQ(method_name(Method::Gi), "gi");
    EXPECT_EQ(parse_methods("aqbf,mc,ug"), (std::vector<Method>{Method::Aqbf, Method::Mc, Method::Ug}));
    EXPECT_THROW(parse_method("qmc"), std::invalid_argument);
    EXPECT_THROW(parse_methods(""), std::invalid_argument);
}

TEST(Grid, DecimalRangeIsExact) {
    const auto g = parse_grid("0.1:7.0:0.1");
    ASSERT_EQ(g.size(), 70u);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const std::string text = std::to_string(i + 1);
        // (i+1)/10 spelled as a decimal literal.
        const std::string lit = (i + 1 < 10 ? "0." + text : text.substr(0, text.size() - 1) + "." + text.back());
        EXPECT_EQ(g[i], std::stod(lit)) << lit;
    }
    EXPECT_EQ(parse_grid("450:1000:50").size(), 12u);
    EXPECT_EQ(parse_grid("1e-2,1e-3"), (std::vector<double>{1e-2, 1e-3}));
    EXPECT_THROW(parse_grid("1:0:1"), std::invalid_argument);
    EXPECT_THROW(parse_grid("1:2"), std::invalid_argument);
    EXPECT_THROW(parse_grid("a,b"), std::invalid_argument);
}

TEST(Axis, Names) {
    EXPECT_EQ(parse_axis("C"), SweepAxis::C);
    EXPECT_EQ(parse_axis("N_min"), SweepAxis::NMin);
    EXPECT_EQ(parse_axis("epsilon"), SweepAxis::Epsilon);
    EXPECT_THROW(parse_axis("depth"), std::invalid_argument);
}

TEST(FormatDouble, RoundTrips) {
    std::mt19937_64 gen(3);
    for (int i = 0; i < 10000; ++i) {
        const double v = std::ldexp(static_cast<double>(gen() >> 11), static_cast<int>(gen() % 80) - 90);
        const std::string s = format_double(v);
        EXPECT_EQ(std::strtod(s.c_str(), nullptr), v) << s;
    }
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
}

TEST(RelativeError, Definition) {
    EXPECT_DOUBLE_EQ(relative_error(11.0, 10.0), 0.1);
    EXPECT_DOUBLE_EQ(relative_error(9.0, 10.0), 0.1);
    EXPECT_DOUBLE_EQ(relative_error(0.25, 0.0), 0.25);
}

TEST(Comparison, OracleRowsAndErrors) {
    const Scene s = seeded(4);
    const auto methods = parse_methods("aqbf,mc,ug,as,gi,tri,bi");
    const auto rows = run_comparison(s, methods, quick_params(), 17);
    ASSERT_EQ(rows.size(), methods.size());
    const double exact = exact::exact_area(s);
    for (const auto& r : rows) {
        EXPECT_TRUE(r.error.empty()) << r.method;
        EXPECT_DOUBLE_EQ(r.exact_area, exact);
        EXPECT_TRUE(std::isfinite(r.rel_error));
        EXPECT_GE(r.rel_error, 0.0);
        EXPECT_DOUBLE_EQ(r.abs_error, std::abs(r.area - exact));
        EXPECT_EQ(r.time_s, 0.0);
    }
    EXPECT_EQ(rows.back().method, "bi");
    EXPECT_EQ(rows.back().rel_error, 0.0);
    EXPECT_EQ(rows.back().area, exact);
}

TEST(Cases, ConfigurationCounts) {
    EXPECT_EQ(case_configurations(1), 48u);
    EXPECT_EQ(case_configurations(2), 30u);
    EXPECT_THROW(case_configurations(3), std::invalid_argument);
}

TEST(Cases, CaseOneRowLayout) {
    const auto methods = parse_methods("tri,bi");
    const auto rows = run_case(1, 2, methods, quick_params(), 42);
    ASSERT_EQ(rows.size(), 48u * 2u * 2u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        EXPECT_EQ(r.case_id, 1);
        EXPECT_EQ(r.n_vertices, 3 + i / 4);
        EXPECT_EQ(r.n_circles, 30u);
        EXPECT_EQ(r.param_value, static_cast<double>(r.n_vertices));
        EXPECT_EQ(r.trial, (i / 2) % 2);
        EXPECT_EQ(r.method, i % 2 ? "bi" : "tri");
        EXPECT_EQ(r.seed, trial_seed(42, 1, i / 4, r.trial));
    }
}

TEST(Cases, CaseTwoAqbfIsAccurate) {
    const auto methods = parse_methods("aqbf,bi");
    const auto rows = run_case(2, 1, methods, quick_params(), 42);
    ASSERT_EQ(rows.size(), 60u);
    std::vector<double> errs;
    for (const auto& r : rows) {
        EXPECT_EQ(r.n_vertices, 50u);
        if (r.method == "aqbf") errs.push_back(r.rel_error);
    }
    EXPECT_LE(oracle::median(errs), 0.005);
}

TEST(Cases, DeterministicCsv) {
    const auto methods = parse_methods("aqbf,mc,tri,bi");
    BenchParams p = quick_params();
    const std::string a = csv(run_case(2, 1, methods, p, 7));
    p.aqbf.threads = 3;
    const std::string b = csv(run_case(2, 1, methods, p, 7));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.substr(0, a.find('\n')), kCsvHeader);
    EXPECT_NE(a, csv(run_case(2, 1, methods, quick_params(), 8)));
}

TEST(Summary, MeansPerConfiguration) {
    const auto rows = run_case(1, 3, parse_methods("tri,bi"), quick_params(), 1);
    const auto summary = summarize(rows);
    ASSERT_EQ(summary.size(), 48u * 2u);
    for (const auto& s : summary) {
        EXPECT_EQ(s.trials, 3u);
        double sum = 0.0;
        for (const auto& r : rows) {
            if (r.param_value == s.param_value && r.method == s.method) sum += r.rel_error;
        }
        EXPECT_NEAR(s.mean_rel_error, sum / 3.0, 1e-15);
    }
    std::ostringstream out;
    write_summary_csv(out, summary);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "case_id,param_value,method,mean_rel_error,mean_time_s,trials");
}

TEST(Significance, RunsOnBenchOutput) {
    const auto rows = run_case(2, 1, parse_methods("aqbf,mc,tri,bi"), quick_params(), 3);
    const auto results = significance(rows);
    ASSERT_FALSE(results.empty());
    const auto& rel = results.front();
    EXPECT_EQ(rel.metric, "rel_error");
    ASSERT_TRUE(rel.friedman.has_value());
    EXPECT_EQ(rel.friedman->n, 30u);
    EXPECT_LT(rel.friedman->p_value, 0.001);  // tri, mc and aqbf differ by orders of magnitude
    ASSERT_EQ(rel.wilcoxon.size(), 2u);
    for (const auto& [name, res] : rel.wilcoxon) EXPECT_LT(res.p_value, 0.001) << name;
    std::ostringstream out;
    write_significance(out, results);
    EXPECT_NE(out.str().find("friedman chi2="), std::string::npos);
}

TEST(Sweep, AxesSetTheRightParameter) {
    const Scene s = seeded(2);
    aqbf::AqbfParams fixed;
    fixed.epsilon_partition = 1e-4;
    fixed.epsilon_sampling = 1e-3;
    const auto grid = parse_grid("450:1000:550");
    const auto rows = sweep(s, SweepAxis::NMin, grid, fixed, false);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].axis, "N_min");
    EXPECT_LE(rows[0].total_subsamples, rows[1].total_subsamples);

    const auto c_rows = sweep(s, SweepAxis::C, std::vector<double>{0.5, 4.0}, fixed, false);
    EXPECT_LT(c_rows[0].total_subsamples, c_rows[1].total_subsamples);
    for (const auto& r : c_rows) EXPECT_EQ(r.time_s, 0.0);

    const auto e_rows = sweep(s, SweepAxis::Epsilon, std::vector<double>{1e-2, 1e-3}, fixed, false);
    EXPECT_LT(e_rows[0].total_subsamples, e_rows[1].total_subsamples);
    std::ostringstream out;
    write_sweep_csv(out, e_rows);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), kSweepHeader);
}

TEST(Trace, ErrorShrinksAlongCheckpoints) {
    const Scene s = seeded(6);
    BenchParams p = quick_params();
    p.baselines.ug_resolution = 25;
    const auto ug = convergence_trace(s, Method::Ug, 5, p, 1);
    ASSERT_EQ(ug.size(), 5u);
    EXPECT_EQ(ug[4].param_value, 400.0);
    EXPECT_LT(ug[4].rel_error, ug[0].rel_error);
    EXPECT_EQ(convergence_trace(s, Method::Tri, 5, p, 1).size(), 1u);
}

TEST(Cli, ComputeIsByteIdenticalAcrossRunsAndThreads) {
    if (!std::getenv("COVER_CLI")) GTEST_SKIP() << "COVER_CLI not set";
    const auto dir = scratch();
    const auto scene = dir / "scene.json";
    ASSERT_EQ(run_cli("gen --vertices 20 --circles 10 --seed 5 --out " + scene.string()), 0);
    const auto a = dir / "a.json";
    const auto b = dir / "b.json";
    ASSERT_EQ(run_cli("compute --scene " + scene.string() + " --no-timing --out " + a.string()), 0);
    ASSERT_EQ(run_cli("compute --scene " + scene.string() + " --no-timing --threads 4 --out " + b.string()), 0);
    EXPECT_EQ(slurp(a), slurp(b));
    const auto j = nlohmann::json::parse(slurp(a));
    EXPECT_NEAR(j["area"].get<double>(), exact::exact_area(scenario::load_scene(scene).scene), 1e-3);
    EXPECT_EQ(j["method"], "aqbf");
    EXPECT_TRUE(j["diagnostics"].contains("total_subsamples"));
}

TEST(Cli, ErrorsGiveNonZeroExit) {
    if (!std::getenv("COVER_CLI")) GTEST_SKIP() << "COVER_CLI not set";
    const auto bad = scratch() / "bad.json";
    std::ofstream(bad) << R"({"polygon": [[0,0],[1,0],[0,1]], "circles": [{"cx": 0, "cy": 0, "r": -1}]})";
    EXPECT_NE(run_cli("compute --scene /nonexistent.json"), 0);
    EXPECT_NE(run_cli("compute --scene " + bad.string()), 0);
    EXPECT_NE(run_cli("bench --case 7"), 0);
}
