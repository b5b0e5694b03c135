#pragma once

// Experiment harness: runs methods against the exact oracle and emits CSV.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cover/aqbf.hpp"
#include "cover/geometry.hpp"
#include "cover/stats.hpp"

namespace cover::bench {

enum class Method { Aqbf, Mc, Ug, As, Gi, Tri, Bi };

std::string_view method_name(Method m);
/// Throws std::invalid_argument for unknown names.
Method parse_method(std::string_view name);
/// Comma-separated list, e.g. "aqbf,mc,ug".
std::vector<Method> parse_methods(std::string_view list);

struct BaselineParams {
    std::uint64_t mc_samples = 1'000'000;
    std::size_t ug_resolution = 1000;
    std::size_t gi_resolution = 200;
    int as_max_depth = 10;
};

struct BenchParams {
    aqbf::AqbfParams aqbf;
    BaselineParams baselines;
    /// When false every time column is written as 0 so output is byte-reproducible.
    bool record_time = true;
};

struct MethodRun {
    double area = 0.0;
    double time_s = 0.0;
    std::optional<aqbf::AreaResult> diagnostics;  // aqbf only
    std::uint64_t samples = 0;                    // mc sample count
};

/// Runs one method; `seed` overrides the sampling seed of aqbf and mc.
MethodRun run_method(const Scene& scene, Method method, const BenchParams& params, std::uint64_t seed);

struct TrialRecord {
    int case_id = 0;
    std::size_t trial = 0;
    std::string method;
    std::size_t n_vertices = 0;
    std::size_t n_circles = 0;
    double param_value = 0.0;
    double area = 0.0;
    double exact_area = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;
    double time_s = 0.0;
    std::uint64_t seed = 0;
    std::string error;  // non-empty when the method threw
};

/// |area − exact| / exact; falls back to the absolute error when exact is 0.
double relative_error(double area, double exact);

/// One record per method; the oracle is evaluated once and bi rows carry zero error.
/// A method that throws yields a record with NaN area and the message in `error`.
std::vector<TrialRecord> run_comparison(const Scene& scene, std::span<const Method> methods, const BenchParams& params,
                                        std::uint64_t seed, int case_id = 0, std::size_t trial = 0,
                                        double param_value = 0.0);

/// Per-trial seed for a (case, configuration, trial) triple.
std::uint64_t trial_seed(std::uint64_t master, int case_id, std::size_t config, std::size_t trial);

/// Case 1: vertices 3..50 with 30 circles. Case 2: circles 1..30 with 50 vertices.
/// Rows are ordered by (configuration, trial, method).
std::vector<TrialRecord> run_case(int case_id, std::size_t trials, std::span<const Method> methods,
                                  const BenchParams& params, std::uint64_t master_seed);

/// Number of configurations swept by a case.
std::size_t case_configurations(int case_id);

inline constexpr const char* kCsvHeader =
    "case_id,trial,method,n_vertices,n_circles,param_value,area,exact_area,abs_error,rel_error,time_s,seed";

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

void write_csv(std::ostream& out, std::span<const TrialRecord> records);

struct ConfigSummary {
    int case_id = 0;
    double param_value = 0.0;
    std::string method;
    double mean_rel_error = 0.0;
    double mean_time_s = 0.0;
    std::size_t trials = 0;
};

std::vector<ConfigSummary> summarize(std::span<const TrialRecord> records);
void write_summary_csv(std::ostream& out, std::span<const ConfigSummary> rows);

struct Significance {
    std::string metric;  // "rel_error" or "time_s"
    std::optional<stats::TestResult> friedman;
    std::vector<std::pair<std::string, stats::TestResult>> wilcoxon;  // reference vs each method
};

/// Friedman across all non-oracle methods and Wilcoxon of `reference` against each other,
/// with blocks = (case, configuration, trial). Tests that cannot run are omitted.
std::vector<Significance> significance(std::span<const TrialRecord> records, std::string_view reference = "aqbf");
void write_significance(std::ostream& out, std::span<const Significance> results);

enum class SweepAxis { C, NMin, Epsilon, EpsilonPartition, EpsilonSampling };

SweepAxis parse_axis(std::string_view name);
std::string_view axis_name(SweepAxis axis);

/// "start:stop:step" (inclusive, decimal-exact) or a comma-separated list.
std::vector<double> parse_grid(std::string_view text);

struct SweepRow {
    std::string axis;
    double param_value = 0.0;
    double area = 0.0;
    double exact_area = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;
    double time_s = 0.0;
    std::uint64_t total_subsamples = 0;
};

/// Runs aqbf once per grid value with `fixed` otherwise unchanged. The epsilon axis sets both
/// tolerances; eps-part / eps-samp set one each.
std::vector<SweepRow> sweep(const Scene& scene, SweepAxis axis, std::span<const double> grid,
                            const aqbf::AqbfParams& fixed, bool record_time = true);

inline constexpr const char* kSweepHeader = "axis,param_value,area,exact_area,abs_error,rel_error,time_s,total_subsamples";

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// Error at successive refinement checkpoints of one method: mc samples and ug/gi resolution
/// double, as depth grows by one, aqbf's ε is quartered. tri and bi give a single checkpoint.
struct TraceRow {
    std::string method;
    std::size_t checkpoint = 0;
    double param_value = 0.0;  // samples, resolution, depth or ε
    double area = 0.0;
    double exact_area = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;
};

std::vector<TraceRow> convergence_trace(const Scene& scene, Method method, std::size_t checkpoints,
                                        const BenchParams& params, std::uint64_t seed);

inline constexpr const char* kTraceHeader = "method,checkpoint,param_value,area,exact_area,abs_error,rel_error";

void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows);

}  // namespace cover::bench
