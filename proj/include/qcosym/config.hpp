#pragma once

#include <initializer_list>
#include <string>

#include "json.hpp"
#include "qcosym/scenario.hpp"

namespace qcosym::cli {

enum class Command { validate, simulate, average, compare, brackets };

inline std::string command_name(Command c) {
    switch (c) {
        case Command::validate: return "validate";
        case Command::simulate: return "simulate";
        case Command::average: return "average";
        case Command::compare: return "compare";
        case Command::brackets: return "brackets";
    }
    return "?";
}

inline Command command_from_name(const std::string& name) {
    if (name == "validate") return Command::validate;
    if (name == "simulate") return Command::simulate;
    if (name == "average") return Command::average;
    if (name == "compare") return Command::compare;
    if (name == "brackets") return Command::brackets;
    throw ConfigValidationError("unknown command '" + name +
                                "' (expected validate, simulate, average, compare, brackets)");
}

struct CliConfig {
    Command command = Command::validate;
    fastslow::ScenarioConfig scenario;
    std::string output_dir = ".";
    bool emit_svg = false;
    int csv_precision = 12;  // significant digits

    void require_valid() const {
        if (csv_precision < 6 || csv_precision > 17)
            throw ConfigValidationError("output.precision must be in [6, 17]");
        if (output_dir.empty()) throw ConfigValidationError("output.dir must be non-empty");
        scenario.require_valid();
        const auto& ic = scenario.integrator;
        if (!(ic.dt > 0.0)) throw ConfigValidationError("integrator.dt must be > 0");
        if (!(ic.rtol > 0.0)) throw ConfigValidationError("integrator.rtol must be > 0");
        if (!(ic.atol > 0.0)) throw ConfigValidationError("integrator.atol must be > 0");
        if (ic.record_every < 1) throw ConfigValidationError("integrator.record_every must be >= 1");
    }
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void parse_fail(const std::string& text, std::size_t byte, const char* what) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    throw ConfigParseError("config parse error at line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what);
}

inline void reject_unknown_keys(const json& obj, const char* where,
                                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigParseError("unknown key '" + item.key() + "' in " + where);
    }
}

inline const json& member(const json& obj, const char* key) { return obj.at(key); }

inline double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigValidationError(path + " must be a number");
    return v.get<double>();
}

inline long long as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigValidationError(path + " must be an integer");
    return v.get<long long>();
}

inline bool as_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) throw ConfigValidationError(path + " must be a boolean");
    return v.get<bool>();
}

inline std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigValidationError(path + " must be a string");
    return v.get<std::string>();
}

inline void parse_scenario(const json& obj, fastslow::ScenarioConfig& sc) {
    if (!obj.is_object()) throw ConfigValidationError("scenario must be an object");
    reject_unknown_keys(obj, "scenario",
                        {"case", "eps", "omega0", "x0", "t_max", "seed", "i0", "secular", "nodes",
                         "n", "q", "points", "pairs", "eps_pair"});
    if (obj.contains("case")) sc.scenario_case = fastslow::case_from_name(as_string(member(obj, "case"), "scenario.case"));
    if (sc.scenario_case == fastslow::Case::custom)
        throw ConfigValidationError("scenario.case 'custom' is programmatic only, not configurable");
    if (obj.contains("eps")) sc.eps = as_number(member(obj, "eps"), "scenario.eps");
    if (obj.contains("omega0")) sc.omega0 = as_number(member(obj, "omega0"), "scenario.omega0");
    if (obj.contains("t_max")) sc.t_max = as_number(member(obj, "t_max"), "scenario.t_max");
    if (obj.contains("seed")) sc.seed = as_integer(member(obj, "seed"), "scenario.seed");
    if (obj.contains("i0")) sc.i0_override = as_number(member(obj, "i0"), "scenario.i0");
    if (obj.contains("secular")) sc.secular_tau_average = as_bool(member(obj, "secular"), "scenario.secular");
    if (obj.contains("nodes")) sc.nodes = static_cast<int>(as_integer(member(obj, "nodes"), "scenario.nodes"));
    if (obj.contains("n")) sc.n = static_cast<int>(as_integer(member(obj, "n"), "scenario.n"));
    if (obj.contains("q")) sc.q = static_cast<int>(as_integer(member(obj, "q"), "scenario.q"));
    if (obj.contains("points"))
        sc.sample_points = static_cast<int>(as_integer(member(obj, "points"), "scenario.points"));
    if (obj.contains("x0")) {
        const json& arr = member(obj, "x0");
        if (!arr.is_array() || arr.size() != 6)
            throw ConfigValidationError("scenario.x0 must be an array of 6 numbers (t, tau, q, p, Q, P)");
        Vec x0(6);
        for (int k = 0; k < 6; ++k) x0[k] = as_number(arr.at(k), "scenario.x0[" + std::to_string(k) + "]");
        sc.x0 = x0;
    }
    if (obj.contains("pairs")) {
        const json& arr = member(obj, "pairs");
        if (!arr.is_array()) throw ConfigValidationError("scenario.pairs must be an array of [f, g] name pairs");
        sc.bracket_pairs.clear();
        for (const json& pair : arr) {
            if (!pair.is_array() || pair.size() != 2)
                throw ConfigValidationError("scenario.pairs entries must be [f, g] name pairs");
            sc.bracket_pairs.emplace_back(as_string(pair.at(0), "scenario.pairs[][0]"),
                                          as_string(pair.at(1), "scenario.pairs[][1]"));
        }
    }
    if (obj.contains("eps_pair")) {
        const json& arr = member(obj, "eps_pair");
        if (!arr.is_array() || arr.size() != 2)
            throw ConfigValidationError("scenario.eps_pair must be an array of 2 numbers");
        sc.eps_pair = std::make_pair(as_number(arr.at(0), "scenario.eps_pair[0]"),
                                     as_number(arr.at(1), "scenario.eps_pair[1]"));
    }
}

inline void parse_integrator(const json& obj, flow::IntegratorConfig& ic) {
    if (!obj.is_object()) throw ConfigValidationError("integrator must be an object");
    reject_unknown_keys(obj, "integrator", {"method", "dt", "rtol", "atol", "record_every"});
    if (obj.contains("method")) {
        const std::string m = as_string(member(obj, "method"), "integrator.method");
        if (m == "rk4")
            ic.method = flow::IntegratorConfig::Method::rk4_fixed;
        else if (m == "rk45")
            ic.method = flow::IntegratorConfig::Method::rk45_adaptive;
        else
            throw ConfigValidationError("integrator.method must be 'rk4' or 'rk45'");
    }
    if (obj.contains("dt")) ic.dt = as_number(member(obj, "dt"), "integrator.dt");
    if (obj.contains("rtol")) ic.rtol = as_number(member(obj, "rtol"), "integrator.rtol");
    if (obj.contains("atol")) ic.atol = as_number(member(obj, "atol"), "integrator.atol");
    if (obj.contains("record_every"))
        ic.record_every = static_cast<int>(as_integer(member(obj, "record_every"), "integrator.record_every"));
}

inline void parse_output(const json& obj, CliConfig& cfg) {
    if (!obj.is_object()) throw ConfigValidationError("output must be an object");
    reject_unknown_keys(obj, "output", {"dir", "svg", "precision"});
    if (obj.contains("dir")) cfg.output_dir = as_string(member(obj, "dir"), "output.dir");
    if (obj.contains("svg")) cfg.emit_svg = as_bool(member(obj, "svg"), "output.svg");
    if (obj.contains("precision"))
        cfg.csv_precision = static_cast<int>(as_integer(member(obj, "precision"), "output.precision"));
}

}  // namespace detail

// Strict parser for the documented schema: top-level keys command,
// scenario, output, integrator; unknown keys rejected, missing keys
// defaulted, out-of-range values reported by field path.
inline CliConfig parse_config(const std::string& text) {
    detail::json doc;
    try {
        doc = detail::json::parse(text);
    } catch (const detail::json::parse_error& e) {
        detail::parse_fail(text, e.byte, e.what());
    }
    if (!doc.is_object()) throw ConfigParseError("config root must be a JSON object");
    detail::reject_unknown_keys(doc, "the top level", {"command", "scenario", "output", "integrator"});
    if (!doc.contains("command")) throw ConfigParseError("missing required key 'command'");

    CliConfig cfg;
    cfg.command = command_from_name(detail::as_string(doc.at("command"), "command"));
    if (doc.contains("scenario")) detail::parse_scenario(doc.at("scenario"), cfg.scenario);
    if (doc.contains("integrator")) detail::parse_integrator(doc.at("integrator"), cfg.scenario.integrator);
    if (doc.contains("output")) detail::parse_output(doc.at("output"), cfg);
    cfg.require_valid();
    return cfg;
}

}  // namespace qcosym::cli
