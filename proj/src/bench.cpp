#include "cover/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "cover/baselines.hpp"
#include "cover/exact_boundary.hpp"
#include "cover/rng.hpp"
#include "cover/scenario.hpp"

namespace cover::bench {

namespace {

constexpr std::pair<Method, std::string_view> kMethodNames[] = {
    {Method::Aqbf, "aqbf"}, {Method::Mc, "mc"},   {Method::Ug, "ug"}, {Method::As, "as"},
    {Method::Gi, "gi"},     {Method::Tri, "tri"}, {Method::Bi, "bi"},
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text) {
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw std::invalid_argument("not a number: \"" + std::string(text) + "\"");
    }
    return v;
}

}  // namespace

std::string_view method_name(Method m) {
    for (const auto& [method, name] : kMethodNames) {
        if (method == m) return name;
    }
    return "?";
}

Method parse_method(std::string_view name) {
    name = trim(name);
    for (const auto& [method, n] : kMethodNames) {
        if (n == name) return method;
    }
    throw std::invalid_argument("unknown method \"" + std::string(name) + "\" (expected aqbf|mc|ug|as|gi|tri|bi)");
}

std::vector<Method> parse_methods(std::string_view list) {
    std::vector<Method> out;
    while (!list.empty()) {
        const auto comma = list.find(',');
        const auto item = list.substr(0, comma);
        if (!trim(item).empty()) out.push_back(parse_method(item));
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
    }
    if (out.empty()) throw std::invalid_argument("empty method list");
    return out;
}

MethodRun run_method(const Scene& scene, Method method, const BenchParams& params, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    const unsigned threads = params.aqbf.threads;
    MethodRun run;
    switch (method) {
        case Method::Aqbf: {
            aqbf::AqbfParams p = params.aqbf;
            p.seed = seed;
            run.diagnostics = aqbf::compute_area(scene, p);
            run.area = run.diagnostics->area;
            break;
        }
        case Method::Mc: {
            const auto est = baselines::monte_carlo(scene, params.baselines.mc_samples, seed, threads);
            run.area = est.area;
            run.samples = est.n_samples;
            break;
        }
        case Method::Ug: run.area = baselines::uniform_grid(scene, params.baselines.ug_resolution, threads); break;
        case Method::As: run.area = baselines::adaptive_subdivision(scene, params.baselines.as_max_depth); break;
        case Method::Gi: run.area = baselines::grid_integration(scene, params.baselines.gi_resolution, threads); break;
        case Method::Tri: run.area = baselines::triangulation(scene); break;
        case Method::Bi: run.area = exact::exact_area(scene); break;
    }
    run.time_s = params.record_time ? seconds_since(start) : 0.0;
    if (run.diagnostics && !params.record_time) run.diagnostics->wall_time_seconds = 0.0;
    return run;
}

double relative_error(double area, double exact) {
    const double abs_error = std::abs(area - exact);
    return exact > 0.0 ? abs_error / exact : abs_error;
}

std::vector<TrialRecord> run_comparison(const Scene& scene, std::span<const Method> methods, const BenchParams& params,
                                        std::uint64_t seed, int case_id, std::size_t trial, double param_value) {
    const auto oracle_start = std::chrono::steady_clock::now();
    const double exact = exact::exact_area(scene);
    const double oracle_time = params.record_time ? seconds_since(oracle_start) : 0.0;

    std::vector<TrialRecord> records;
    records.reserve(methods.size());
    for (Method method : methods) {
        TrialRecord rec;
        rec.case_id = case_id;
        rec.trial = trial;
        rec.method = std::string(method_name(method));
        rec.n_vertices = scene.polygon.size();
        rec.n_circles = scene.circles.size();
        rec.param_value = param_value;
        rec.exact_area = exact;
        rec.seed = seed;
        if (method == Method::Bi) {
            rec.area = exact;
            rec.time_s = oracle_time;
        } else {
            try {
                const MethodRun run = run_method(scene, method, params, seed);
                rec.area = run.area;
                rec.time_s = run.time_s;
            } catch (const std::exception& e) {
                rec.area = std::numeric_limits<double>::quiet_NaN();
                rec.abs_error = rec.rel_error = std::numeric_limits<double>::quiet_NaN();
                rec.error = e.what();
                records.push_back(std::move(rec));
                continue;
            }
        }
        rec.abs_error = std::abs(rec.area - exact);
        rec.rel_error = method == Method::Bi ? 0.0 : relative_error(rec.area, exact);
        records.push_back(std::move(rec));
    }
    return records;
}

std::uint64_t trial_seed(std::uint64_t master, int case_id, std::size_t config, std::size_t trial) {
    return derive_seed(derive_seed(derive_seed(master, static_cast<std::uint64_t>(case_id)), config), trial);
}

std::size_t case_configurations(int case_id) {
    switch (case_id) {
        case 1: return 50 - 3 + 1;
        case 2: return 30;
        default: throw std::invalid_argument("case must be 1 or 2");
    }
}

std::vector<TrialRecord> run_case(int case_id, std::size_t trials, std::span<const Method> methods,
                                  const BenchParams& params, std::uint64_t master_seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const std::size_t configs = case_configurations(case_id);
    std::vector<TrialRecord> records;
    records.reserve(configs * trials * methods.size());
    for (std::size_t c = 0; c < configs; ++c) {
        scenario::GenSpec spec;
        std::size_t value = 0;
        if (case_id == 1) {
            spec.n_vertices = value = 3 + c;
            spec.n_circles = 30;
        } else {
            spec.n_vertices = 50;
            spec.n_circles = value = 1 + c;
        }
        for (std::size_t t = 0; t < trials; ++t) {
            spec.seed = trial_seed(master_seed, case_id, c, t);
            const Scene scene = scenario::gen_scene(spec);
            auto rows = run_comparison(scene, methods, params, spec.seed, case_id, t, static_cast<double>(value));
            std::move(rows.begin(), rows.end(), std::back_inserter(records));
        }
    }
    return records;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_csv(std::ostream& out, std::span<const TrialRecord> records) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.case_id << ',' << r.trial << ',' << r.method << ',' << r.n_vertices << ',' << r.n_circles << ','
            << format_double(r.param_value) << ',' << format_double(r.area) << ',' << format_double(r.exact_area)
            << ',' << format_double(r.abs_error) << ',' << format_double(r.rel_error) << ','
            << format_double(r.time_s) << ',' << r.seed << '\n';
    }
}

std::vector<ConfigSummary> summarize(std::span<const TrialRecord> records) {
    using Key = std::tuple<int, double, std::string>;
    std::map<Key, ConfigSummary> groups;
    std::vector<Key> order;
    for (const auto& r : records) {
        if (!r.error.empty()) continue;
        const Key key{r.case_id, r.param_value, r.method};
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) {
            it->second.case_id = r.case_id;
            it->second.param_value = r.param_value;
            it->second.method = r.method;
            order.push_back(key);
        }
        it->second.mean_rel_error += r.rel_error;
        it->second.mean_time_s += r.time_s;
        ++it->second.trials;
    }
    std::vector<ConfigSummary> out;
    for (const auto& key : order) {
        ConfigSummary s = groups.at(key);
        s.mean_rel_error /= static_cast<double>(s.trials);
        s.mean_time_s /= static_cast<double>(s.trials);
        out.push_back(s);
    }
    return out;
}

void write_summary_csv(std::ostream& out, std::span<const ConfigSummary> rows) {
    out << "case_id,param_value,method,mean_rel_error,mean_time_s,trials\n";
    for (const auto& s : rows) {
        out << s.case_id << ',' << format_double(s.param_value) << ',' << s.method << ','
            << format_double(s.mean_rel_error) << ',' << format_double(s.mean_time_s) << ',' << s.trials << '\n';
    }
}

std::vector<Significance> significance(std::span<const TrialRecord> records, std::string_view reference) {
    using Block = std::tuple<int, double, std::size_t>;
    std::vector<std::string> methods;
    std::map<Block, std::map<std::string, const TrialRecord*>> blocks;
    for (const auto& r : records) {
        if (r.method == "bi" || !r.error.empty()) continue;
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
        blocks[{r.case_id, r.param_value, r.trial}][r.method] = &r;
    }
    std::vector<Significance> out;
    for (const std::string metric : {"rel_error", "time_s"}) {
        auto value = [&](const TrialRecord* r) { return metric == "rel_error" ? r->rel_error : r->time_s; };
        Significance sig;
        sig.metric = metric;
        std::vector<std::vector<double>> matrix;
        for (const auto& [key, row] : blocks) {
            if (row.size() != methods.size()) continue;
            std::vector<double> values;
            for (const auto& m : methods) values.push_back(value(row.at(m)));
            matrix.push_back(std::move(values));
        }
        if (methods.size() >= 3 && matrix.size() >= 2) sig.friedman = stats::friedman_test(matrix);
        const auto ref = std::find(methods.begin(), methods.end(), std::string(reference));
        if (ref != methods.end()) {
            const std::size_t ref_col = static_cast<std::size_t>(ref - methods.begin());
            for (std::size_t j = 0; j < methods.size(); ++j) {
                if (j == ref_col) continue;
                std::vector<double> x;
                std::vector<double> y;
                for (const auto& row : matrix) {
                    x.push_back(row[ref_col]);
                    y.push_back(row[j]);
                }
                try {
                    sig.wilcoxon.emplace_back(methods[j], stats::wilcoxon_signed_rank(x, y));
                } catch (const std::exception&) {
                    // Too few informative pairs; nothing to report for this method.
                }
            }
        }
        out.push_back(std::move(sig));
    }
    return out;
}

void write_significance(std::ostream& out, std::span<const Significance> results) {
    for (const auto& sig : results) {
        out << "[" << sig.metric << "]\n";
        if (sig.friedman) {
            out << "  friedman chi2=" << format_double(sig.friedman->statistic)
                << " p=" << format_double(sig.friedman->p_value) << " blocks=" << sig.friedman->n << '\n';
        }
        for (const auto& [method, res] : sig.wilcoxon) {
            out << "  wilcoxon vs " << method << " W=" << format_double(res.statistic)
                << " p=" << format_double(res.p_value) << " n=" << res.n << '\n';
        }
    }
}

SweepAxis parse_axis(std::string_view name) {
    name = trim(name);
    if (name == "C" || name == "c") return SweepAxis::C;
    if (name == "N_min" || name == "nmin" || name == "n_min") return SweepAxis::NMin;
    if (name == "epsilon" || name == "eps") return SweepAxis::Epsilon;
    if (name == "eps-part" || name == "epsilon_partition") return SweepAxis::EpsilonPartition;
    if (name == "eps-samp" || name == "epsilon_sampling") return SweepAxis::EpsilonSampling;
    throw std::invalid_argument("unknown sweep axis \"" + std::string(name) + "\" (expected C|N_min|epsilon)");
}

std::string_view axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::C: return "C";
        case SweepAxis::NMin: return "N_min";
        case SweepAxis::Epsilon: return "epsilon";
        case SweepAxis::EpsilonPartition: return "eps-part";
        case SweepAxis::EpsilonSampling: return "eps-samp";
    }
    return "?";
}

namespace {

// Digits after the decimal point of a plain decimal literal, or -1 for exponent notation.
int decimal_places(std::string_view s) {
    if (s.find_first_of("eE") != std::string_view::npos) return -1;
    const auto dot = s.find('.');
    return dot == std::string_view::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
    text = trim(text);
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        std::vector<std::string_view> parts;
        std::string_view rest = text;
        while (true) {
            const auto colon = rest.find(':');
            parts.push_back(trim(rest.substr(0, colon)));
            if (colon == std::string_view::npos) break;
            rest.remove_prefix(colon + 1);
        }
        if (parts.size() != 3) throw std::invalid_argument("range grid must be start:stop:step");
        const double start = parse_number(parts[0]);
        const double stop = parse_number(parts[1]);
        const double step = parse_number(parts[2]);
        if (!(step > 0.0) || stop < start) throw std::invalid_argument("range grid needs step > 0 and stop >= start");
        const int places = std::max({decimal_places(parts[0]), decimal_places(parts[1]), decimal_places(parts[2])});
        if (places >= 0 && places <= 9 &&
            std::min({decimal_places(parts[0]), decimal_places(parts[1]), decimal_places(parts[2])}) >= 0) {
            // Integer arithmetic in units of the finest decimal place avoids drift like 0.30000000000000004.
            const double scale = std::pow(10.0, places);
            const long long a = std::llround(start * scale);
            const long long b = std::llround(stop * scale);
            const long long s = std::llround(step * scale);
            for (long long v = a; v <= b; v += s) out.push_back(static_cast<double>(v) / scale);
        } else {
            const auto count = static_cast<std::size_t>(std::floor((stop - start) / step * (1.0 + 1e-12))) + 1;
            for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
        }
    } else {
        std::string_view rest = text;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            out.push_back(parse_number(rest.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
    }
    if (out.empty()) throw std::invalid_argument("empty grid");
    return out;
}

std::vector<SweepRow> sweep(const Scene& scene, SweepAxis axis, std::span<const double> grid,
                            const aqbf::AqbfParams& fixed, bool record_time) {
    if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
    const double exact = exact::exact_area(scene);
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double value : grid) {
        aqbf::AqbfParams p = fixed;
        switch (axis) {
            case SweepAxis::C: p.c = value; break;
            case SweepAxis::NMin:
                p.n_min = static_cast<std::uint64_t>(std::llround(value));
                p.n_max = std::max(p.n_max, p.n_min);
                break;
            case SweepAxis::Epsilon: p.epsilon_partition = p.epsilon_sampling = value; break;
            case SweepAxis::EpsilonPartition: p.epsilon_partition = value; break;
            case SweepAxis::EpsilonSampling: p.epsilon_sampling = value; break;
        }
        const auto result = aqbf::compute_area(scene, p);
        SweepRow row;
        row.axis = std::string(axis_name(axis));
        row.param_value = value;
        row.area = result.area;
        row.exact_area = exact;
        row.abs_error = std::abs(result.area - exact);
        row.rel_error = relative_error(result.area, exact);
        row.time_s = record_time ? result.wall_time_seconds : 0.0;
        row.total_subsamples = result.total_subsamples;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << kSweepHeader << '\n';
    for (const auto& r : rows) {
        out << r.axis << ',' << format_double(r.param_value) << ',' << format_double(r.area) << ','
            << format_double(r.exact_area) << ',' << format_double(r.abs_error) << ',' << format_double(r.rel_error)
            << ',' << format_double(r.time_s) << ',' << r.total_subsamples << '\n';
    }
}

}  // namespace cover::bench

namespace cover::bench {

std::vector<TraceRow> convergence_trace(const Scene& scene, Method method, std::size_t checkpoints,
                                        const BenchParams& params, std::uint64_t seed) {
    if (checkpoints < 1) throw std::invalid_argument("checkpoints must be >= 1");
    if (method == Method::Tri || method == Method::Bi) checkpoints = 1;
    const double exact = exact::exact_area(scene);
    std::vector<TraceRow> rows;
    BenchParams p = params;
    p.record_time = false;
    for (std::size_t i = 0; i < checkpoints; ++i) {
        double value = 0.0;
        switch (method) {
            case Method::Mc: value = static_cast<double>(p.baselines.mc_samples); break;
            case Method::Ug: value = static_cast<double>(p.baselines.ug_resolution); break;
            case Method::Gi: value = static_cast<double>(p.baselines.gi_resolution); break;
            case Method::As: value = p.baselines.as_max_depth; break;
            case Method::Aqbf: value = p.aqbf.epsilon_sampling; break;
            case Method::Tri:
            case Method::Bi: break;
        }
        const MethodRun run = run_method(scene, method, p, seed);
        TraceRow row;
        row.method = std::string(method_name(method));
        row.checkpoint = i;
        row.param_value = value;
        row.area = run.area;
        row.exact_area = exact;
        row.abs_error = std::abs(run.area - exact);
        row.rel_error = relative_error(run.area, exact);
        rows.push_back(std::move(row));

        p.baselines.mc_samples *= 2;
        p.baselines.ug_resolution *= 2;
        p.baselines.gi_resolution *= 2;
        p.baselines.as_max_depth += 1;
        p.aqbf.epsilon_partition /= 4.0;
        p.aqbf.epsilon_sampling /= 4.0;
    }
    return rows;
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows) {
    out << kTraceHeader << '\n';
    for (const auto& r : rows) {
        out << r.method << ',' << r.checkpoint << ',' << format_double(r.param_value) << ',' << format_double(r.area)
            << ',' << format_double(r.exact_area) << ',' << format_double(r.abs_error) << ','
            << format_double(r.rel_error) << '\n';
    }
}

}  // namespace cover::bench
