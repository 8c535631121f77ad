#pragma once

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "qcosym/config.hpp"
#include "qcosym/csv.hpp"
#include "qcosym/derived_fields.hpp"
#include "qcosym/svg.hpp"
#include "qcosym/validate.hpp"

namespace qcosym::cli {

namespace detail {

// QCOSYM_SEED environment variable overrides the configured sampler seed.
inline long long effective_seed(long long configured) {
    const char* env = std::getenv("QCOSYM_SEED");
    if (!env || !*env) return configured;
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v < 0)
        throw ConfigValidationError("QCOSYM_SEED must be a nonnegative integer");
    return v;
}

inline QCosymplecticStructure structure_for(const fastslow::ScenarioConfig& sc) {
    if (sc.scenario_case == fastslow::Case::standard_example) return standard_structure(sc.n, sc.q);
    return fastslow::build_structure();
}

inline std::string artifact_path(const std::string& dir, const char* name) {
    return (std::filesystem::path(dir) / name).string();
}

inline void ensure_output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
}

inline std::vector<double> state_component(const flow::Trajectory& tr, int index) {
    std::vector<double> out;
    out.reserve(tr.states.size());
    for (const Vec& x : tr.states) out.push_back(x[index]);
    return out;
}

// Header s,t,tau,q,p,Q,P,I,J,H: integration parameter, the six state
// coordinates, then the recorded monitors.
inline void write_full_artifacts(const std::string& dir, const char* csv_name, const char* svg_name,
                                 const flow::Trajectory& tr, int precision, bool emit_svg) {
    std::vector<std::vector<double>> cols;
    cols.push_back(tr.times);
    for (int c = 0; c < fastslow::state_dim; ++c) cols.push_back(state_component(tr, c));
    for (const auto& mon : tr.monitors) cols.push_back(mon.second);
    io::write_csv(artifact_path(dir, csv_name), {"s", "t", "tau", "q", "p", "Q", "P", "I", "J", "H"},
                  cols, precision);
    if (emit_svg)
        io::write_line_plot(artifact_path(dir, svg_name), "slow variables and fast action", tr.times,
                            {{"Q", cols[1 + fastslow::iQ]}, {"P", cols[1 + fastslow::iP]}, {"I", cols[7]}});
}

// Header s,tau,Q,P,I for the reduced system (tau, Q, P) with frozen I.
inline void write_averaged_artifacts(const std::string& dir, const char* csv_name, const char* svg_name,
                                     const flow::Trajectory& tr, double i0, int precision,
                                     bool emit_svg) {
    std::vector<std::vector<double>> cols;
    cols.push_back(tr.times);
    for (int c = 0; c < 3; ++c) cols.push_back(state_component(tr, c));
    cols.emplace_back(tr.times.size(), i0);
    io::write_csv(artifact_path(dir, csv_name), {"s", "tau", "Q", "P", "I"}, cols, precision);
    if (emit_svg)
        io::write_line_plot(artifact_path(dir, svg_name), "averaged slow variables", tr.times,
                            {{"Q", cols[2]}, {"P", cols[3]}});
}

inline int run_validate(const CliConfig& cfg, long long seed) {
    const QCosymplecticStructure s = structure_for(cfg.scenario);
    const auto points =
        sample_cube(s.chart.dim, 2.0, cfg.scenario.sample_points, static_cast<std::uint64_t>(seed));
    const ValidationReport report = validate_structure(s, points, s.fd);
    std::cout << report.to_json() << "\n";
    std::cerr << report.to_table();
    return report.pass ? 0 : 1;
}

inline int run_simulate(const CliConfig& cfg) {
    if (cfg.scenario.scenario_case == fastslow::Case::case_b_averaged)
        throw ConfigValidationError("scenario.case 'case-b-averaged' runs under the average command");
    const fastslow::ScenarioResult res = fastslow::run_scenario(cfg.scenario);
    write_full_artifacts(cfg.output_dir, "trajectory.csv", "trajectory.svg", res.trajectory,
                         cfg.csv_precision, cfg.emit_svg);
    std::cout << res.report.to_json() << "\n";
    return 0;
}

inline int run_average(const CliConfig& cfg) {
    if (cfg.scenario.scenario_case != fastslow::Case::case_b_averaged)
        throw ConfigValidationError("average command requires scenario.case 'case-b-averaged'");
    const fastslow::ScenarioResult res = fastslow::run_scenario(cfg.scenario);
    write_averaged_artifacts(cfg.output_dir, "trajectory.csv", "trajectory.svg", res.trajectory,
                             res.i0, cfg.csv_precision, cfg.emit_svg);
    std::cout << res.report.to_json() << "\n";
    return 0;
}

inline int run_compare(const CliConfig& cfg) {
    const fastslow::ComparisonResult res = fastslow::compare_full_vs_averaged(cfg.scenario);
    write_full_artifacts(cfg.output_dir, "trajectory_full.csv", "trajectory_full.svg", res.full,
                         cfg.csv_precision, cfg.emit_svg);
    write_averaged_artifacts(cfg.output_dir, "trajectory_averaged.csv", "trajectory_averaged.svg",
                             res.averaged, res.i0, cfg.csv_precision, cfg.emit_svg);
    io::write_csv(artifact_path(cfg.output_dir, "deviation.csv"), {"s", "dQ", "dP"},
                  {res.full.times, res.dq, res.dp}, cfg.csv_precision);
    if (cfg.emit_svg)
        io::write_line_plot(artifact_path(cfg.output_dir, "deviation.svg"),
                            "full minus averaged slow variables", res.full.times,
                            {{"dQ", res.dq}, {"dP", res.dp}});
    std::cout << res.report.to_json() << "\n";
    return 0;
}

inline int run_brackets(const CliConfig& cfg, long long seed) {
    if (cfg.scenario.bracket_pairs.empty())
        throw ConfigValidationError("brackets command requires a non-empty scenario.pairs list");
    const QCosymplecticStructure s = structure_for(cfg.scenario);
    const auto points =
        sample_cube(s.chart.dim, 2.0, cfg.scenario.sample_points, static_cast<std::uint64_t>(seed));
    auto coordinate = [&s](const std::string& name) {
        for (std::size_t k = 0; k < s.chart.names.size(); ++k)
            if (s.chart.names[k] == name) return coordinate_function(s.chart.dim, static_cast<int>(k));
        throw ConfigValidationError("unknown coordinate '" + name + "' in scenario.pairs");
    };
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %-10s %16s %16s %16s", "f", "g", "min", "mean", "max");
    std::cout << line << "\n" << std::string(72, '-') << "\n";
    for (const auto& [fname, gname] : cfg.scenario.bracket_pairs) {
        const ScalarField f = coordinate(fname);
        const ScalarField g = coordinate(gname);
        double mn = std::numeric_limits<double>::infinity(), mx = -mn, sum = 0.0;
        for (const Vec& x : points) {
            const double v = poisson_bracket(s, f, g, x);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
            sum += v;
        }
        std::snprintf(line, sizeof line, "%-10s %-10s %16.8g %16.8g %16.8g", fname.c_str(),
                      gname.c_str(), mn, sum / static_cast<double>(points.size()), mx);
        std::cout << line << "\n";
    }
    return 0;
}

}  // namespace detail

// Dispatch a parsed configuration. Exit status: 0 success, 1 structure
// validation reported failures, 2 configuration or runtime error.
inline int execute(const CliConfig& cfg) {
    try {
        cfg.require_valid();
        const long long seed = detail::effective_seed(cfg.scenario.seed);
        if (cfg.command != Command::validate && cfg.command != Command::brackets)
            detail::ensure_output_dir(cfg.output_dir);
        switch (cfg.command) {
            case Command::validate: return detail::run_validate(cfg, seed);
            case Command::simulate: return detail::run_simulate(cfg);
            case Command::average: return detail::run_average(cfg);
            case Command::compare: return detail::run_compare(cfg);
            case Command::brackets: return detail::run_brackets(cfg, seed);
        }
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace qcosym::cli
