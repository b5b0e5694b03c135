// cover: command-line front end for scene generation, area computation and benchmarks.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cover/aqbf.hpp"
#include "cover/bench.hpp"
#include "cover/error.hpp"
#include "cover/scenario.hpp"

namespace {

using namespace cover;

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

void add_aqbf_options(CLI::App* cmd, aqbf::AqbfParams& p) {
    cmd->add_option("--eps-part", p.epsilon_partition, "partition tolerance (cell size sqrt(eps))");
    cmd->add_option("--eps-samp", p.epsilon_sampling, "sampling tolerance");
    cmd->add_option("--c", p.c, "safety factor in the subsample count");
    cmd->add_option("--nmin", p.n_min, "minimum subsamples per cell");
    cmd->add_option("--nmax", p.n_max, "maximum subsamples per cell");
    cmd->add_flag("--multiplicity-weighted", p.multiplicity_weighted, "weight fully covered cells by |I|");
    cmd->add_option("--threads", p.threads, "worker threads (0 = all cores); results do not depend on it");
}

void add_baseline_options(CLI::App* cmd, bench::BaselineParams& b) {
    cmd->add_option("--samples", b.mc_samples, "mc sample count");
    cmd->add_option("--resolution", b.ug_resolution, "ug grid resolution");
    cmd->add_option("--gi-resolution", b.gi_resolution, "gi grid resolution");
    cmd->add_option("--depth", b.as_max_depth, "as maximum depth");
}

void print_notes(const scenario::LoadedScene& loaded) {
    for (const auto& note : loaded.notes) std::cerr << "note: " << note << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Area of a polygon covered by a union of disks"};
    app.require_subcommand(1);

    // gen
    scenario::GenSpec gen_spec;
    double box_half = 4.0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "generate a seeded synthetic scene");
    gen->add_option("--vertices", gen_spec.n_vertices, "polygon vertex count")->check(CLI::Range(3, 1 << 24));
    gen->add_option("--circles", gen_spec.n_circles, "circle count");
    gen->add_option("--seed", gen_spec.seed, "generator seed");
    gen->add_option("--diameter", gen_spec.diameter, "polygon diameter");
    gen->add_option("--box", box_half, "circle centers lie in [-box, box]^2");
    gen->add_option("--rmin", gen_spec.radius_min, "minimum radius");
    gen->add_option("--rmax", gen_spec.radius_max, "maximum radius");
    gen->add_option("--out", gen_out, "scene file")->required();

    // ingest
    std::string geojson_path;
    std::string ring_text = "largest";
    std::string preset;
    std::uint64_t ingest_seed = 42;
    double degrees_per_km = scenario::kDegreesPerKm;
    std::string ingest_out;
    auto* ingest = app.add_subcommand("ingest", "extract a polygon ring from GeoJSON");
    ingest->add_option("--geojson", geojson_path, "GeoJSON file")->required()->check(CLI::ExistingFile);
    ingest->add_option("--select", ring_text, "\"largest\" or a ring index");
    ingest->add_option("--preset", preset, "deploy circles: caribbean-preset")
        ->check(CLI::IsMember({"caribbean-preset"}));
    ingest->add_option("--seed", ingest_seed, "deployment seed");
    ingest->add_option("--deg-per-km", degrees_per_km, "degrees per kilometre for preset radii");
    ingest->add_option("--out", ingest_out, "scene file")->required();

    // compute
    std::string scene_path;
    std::string method_text = "aqbf";
    bench::BenchParams compute_params;
    bool compute_no_timing = false;
    std::string compute_out;
    auto* compute = app.add_subcommand("compute", "compute the covered area of a scene");
    compute->add_option("--scene", scene_path, "scene file")->required()->check(CLI::ExistingFile);
    compute->add_option("--method", method_text, "aqbf|mc|ug|as|gi|tri|bi");
    add_aqbf_options(compute, compute_params.aqbf);
    compute->add_option("--seed", compute_params.aqbf.seed, "sampling seed");
    add_baseline_options(compute, compute_params.baselines);
    compute->add_flag("--no-timing", compute_no_timing, "write 0 for wall time");
    compute->add_option("--out", compute_out, "result file (stdout if omitted)");

    // bench
    int case_id = 1;
    std::size_t trials = 100;
    std::string bench_methods = "aqbf,mc,ug,as,gi,tri";
    std::uint64_t bench_seed = 42;
    bench::BenchParams bench_params;
    bool bench_no_timing = false;
    std::string bench_out;
    std::string summary_out;
    std::string significance_out;
    auto* bench_cmd = app.add_subcommand("bench", "run a synthetic benchmark case");
    bench_cmd->add_option("--case", case_id, "1: vary vertices, 2: vary circles")->check(CLI::IsMember({1, 2}));
    bench_cmd->add_option("--trials", trials, "trials per configuration")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--methods", bench_methods, "comma-separated methods");
    bench_cmd->add_option("--seed", bench_seed, "master seed");
    add_aqbf_options(bench_cmd, bench_params.aqbf);
    add_baseline_options(bench_cmd, bench_params.baselines);
    bench_cmd->add_flag("--no-timing", bench_no_timing, "write 0 in the time column");
    bench_cmd->add_option("--summary", summary_out, "per-configuration means");
    bench_cmd->add_option("--significance", significance_out, "Friedman and Wilcoxon report");
    bench_cmd->add_option("--out", bench_out, "CSV file")->required();

    // sweep
    std::string axis_text = "C";
    std::string grid_text = "0.1:7.0:0.1";
    std::string sweep_scene;
    aqbf::AqbfParams sweep_params;
    bool sweep_no_timing = false;
    std::string sweep_out;
    auto* sweep_cmd = app.add_subcommand("sweep", "vary one aqbf parameter on a scene");
    sweep_cmd->add_option("--axis", axis_text, "C|N_min|epsilon|eps-part|eps-samp");
    sweep_cmd->add_option("--grid", grid_text, "start:stop:step or a comma list");
    sweep_cmd->add_option("--scene", sweep_scene, "scene file")->required()->check(CLI::ExistingFile);
    add_aqbf_options(sweep_cmd, sweep_params);
    sweep_cmd->add_option("--seed", sweep_params.seed, "sampling seed");
    sweep_cmd->add_flag("--no-timing", sweep_no_timing, "write 0 in the time column");
    sweep_cmd->add_option("--out", sweep_out, "CSV file")->required();

    // trace
    std::string trace_scene;
    std::string trace_method = "mc";
    std::size_t checkpoints = 8;
    bench::BenchParams trace_params;
    trace_params.baselines = {1000, 16, 16, 2};
    trace_params.aqbf.epsilon_partition = trace_params.aqbf.epsilon_sampling = 1e-2;
    std::string trace_out;
    auto* trace = app.add_subcommand("trace", "error at doubling refinement checkpoints");
    trace->add_option("--scene", trace_scene, "scene file")->required()->check(CLI::ExistingFile);
    trace->add_option("--method", trace_method, "aqbf|mc|ug|as|gi|tri|bi");
    trace->add_option("--checkpoints", checkpoints, "number of checkpoints")->check(CLI::PositiveNumber);
    add_aqbf_options(trace, trace_params.aqbf);
    trace->add_option("--seed", trace_params.aqbf.seed, "sampling seed");
    add_baseline_options(trace, trace_params.baselines);
    trace->add_option("--out", trace_out, "CSV file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            gen_spec.center_box = {-box_half, box_half, -box_half, box_half};
            scenario::save_scene(scenario::gen_scene(gen_spec), gen_out);
        } else if (*ingest) {
            Polygon polygon = scenario::ingest_geojson(geojson_path, scenario::RingSelector::parse(ring_text));
            std::vector<Circle> circles;
            if (preset == "caribbean-preset") {
                circles = scenario::deploy_circles(scenario::caribbean_regions(), ingest_seed, degrees_per_km);
            }
            std::cerr << "ring with " << polygon.size() << " vertices, " << circles.size() << " circles\n";
            scenario::save_scene(make_scene(std::move(polygon), std::move(circles)), ingest_out);
        } else if (*compute) {
            const auto loaded = scenario::load_scene(scene_path);
            print_notes(loaded);
            compute_params.record_time = !compute_no_timing;
            const bench::Method method = bench::parse_method(method_text);
            const bench::MethodRun run =
                bench::run_method(loaded.scene, method, compute_params, compute_params.aqbf.seed);
            nlohmann::json diag = {{"n_leaf", 0},      {"n_boundary", 0},         {"total_subsamples", run.samples},
                                   {"max_depth", 0},   {"wall_time_s", run.time_s}};
            if (run.diagnostics) {
                diag["n_leaf"] = run.diagnostics->n_leaf;
                diag["n_boundary"] = run.diagnostics->n_boundary;
                diag["total_subsamples"] = run.diagnostics->total_subsamples;
                diag["max_depth"] = run.diagnostics->max_depth_reached;
            }
            const nlohmann::json result = {
                {"area", run.area}, {"method", std::string(bench::method_name(method))}, {"diagnostics", diag}};
            const std::string text = result.dump(2) + "\n";
            if (compute_out.empty()) {
                std::cout << text;
            } else {
                open_output(compute_out) << text;
            }
        } else if (*bench_cmd) {
            bench_params.record_time = !bench_no_timing;
            const auto methods = bench::parse_methods(bench_methods);
            const auto records = bench::run_case(case_id, trials, methods, bench_params, bench_seed);
            for (const auto& r : records) {
                if (!r.error.empty()) {
                    std::cerr << "case " << r.case_id << " trial " << r.trial << " " << r.method << ": " << r.error
                              << '\n';
                }
            }
            auto out = open_output(bench_out);
            bench::write_csv(out, records);
            if (!summary_out.empty()) {
                auto s = open_output(summary_out);
                bench::write_summary_csv(s, bench::summarize(records));
            }
            if (!significance_out.empty()) {
                auto s = open_output(significance_out);
                bench::write_significance(s, bench::significance(records));
            }
        } else if (*sweep_cmd) {
            const auto loaded = scenario::load_scene(sweep_scene);
            print_notes(loaded);
            const auto grid = bench::parse_grid(grid_text);
            const auto rows =
                bench::sweep(loaded.scene, bench::parse_axis(axis_text), grid, sweep_params, !sweep_no_timing);
            auto out = open_output(sweep_out);
            bench::write_sweep_csv(out, rows);
        } else if (*trace) {
            const auto loaded = scenario::load_scene(trace_scene);
            print_notes(loaded);
            const auto rows = bench::convergence_trace(loaded.scene, bench::parse_method(trace_method), checkpoints,
                                                       trace_params, trace_params.aqbf.seed);
            auto out = open_output(trace_out);
            bench::write_trace_csv(out, rows);
        }
    } catch (const cover::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 3;
    } catch (const cover::Error& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
