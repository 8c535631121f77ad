#pragma once

#include <optional>
#include <sstream>

#include "qcosym/fastslow.hpp"
#include "qcosym/flow.hpp"

namespace qcosym::fastslow {

enum class Case { case_a, case_b, case_b_averaged, standard_example, custom };

inline std::string case_name(Case c) {
    switch (c) {
        case Case::case_a: return "case-a";
        case Case::case_b: return "case-b";
        case Case::case_b_averaged: return "case-b-averaged";
        case Case::standard_example: return "standard-example";
        case Case::custom: return "custom";
    }
    return "?";
}

inline Case case_from_name(const std::string& name) {
    if (name == "case-a") return Case::case_a;
    if (name == "case-b") return Case::case_b;
    if (name == "case-b-averaged") return Case::case_b_averaged;
    if (name == "standard-example") return Case::standard_example;
    if (name == "custom") return Case::custom;
    throw ConfigValidationError("unknown scenario case '" + name +
                                "' (expected case-a, case-b, case-b-averaged, standard-example)");
}

inline Vec default_x0() {
    Vec x0(state_dim);
    x0 << 0.0, 0.0, 1.0, 0.0, 1.0, 0.0;  // (t, tau, q, p, Q, P)
    return x0;
}

struct ScenarioConfig {
    Case scenario_case = Case::case_b;
    double eps = 0.05;
    double omega0 = 1.0;  // fast frequency for case-a
    Vec x0 = default_x0();
    double t_max = 200.0;
    flow::IntegratorConfig integrator{};  // integrator.t_max is overwritten by t_max
    long long seed = 12345;
    std::optional<double> i0_override;   // frozen action for averaged runs; default from x0
    bool secular_tau_average = true;     // averaged runs: also average the drift over tau
    int nodes = 256;                     // Simpson nodes for angle averages
    int n = 1, q = 1;                    // standard-example chart dimensions
    int sample_points = 64;              // validate / brackets sampling
    std::vector<std::pair<std::string, std::string>> bracket_pairs;  // brackets command
    std::optional<std::pair<double, double>> eps_pair;  // compare legs; default (eps, eps/2)
    std::optional<FastSlowModel> custom_model;          // required for Case::custom

    void require_valid() const {
        if (!(eps >= 0.0)) throw ConfigValidationError("scenario.eps must be >= 0");
        if (!(omega0 > 0.0)) throw ConfigValidationError("scenario.omega0 must be > 0");
        if (!(t_max > 0.0)) throw ConfigValidationError("scenario.t_max must be > 0");
        if (x0.size() != state_dim)
            throw ConfigValidationError("scenario.x0 must have 6 entries (t, tau, q, p, Q, P)");
        if (i0_override && !(*i0_override >= 0.0))
            throw ConfigValidationError("scenario.i0 must be >= 0");
        if (nodes < 8 || nodes % 2 != 0)
            throw ConfigValidationError("scenario.nodes must be even and >= 8");
        if (n < 1 || q < 1) throw ConfigValidationError("scenario.n and scenario.q must be >= 1");
        if (sample_points < 1) throw ConfigValidationError("scenario.points must be >= 1");
        if (seed < 0) throw ConfigValidationError("scenario.seed must be >= 0");
        if (eps_pair && !(eps_pair->first > 0.0 && eps_pair->second > 0.0 &&
                          eps_pair->first != eps_pair->second))
            throw ConfigValidationError("scenario.eps_pair entries must be positive and distinct");
        if (scenario_case == Case::custom && !custom_model)
            throw ConfigValidationError("custom scenarios require a programmatic model");
    }
};

inline FastSlowModel model_for(const ScenarioConfig& cfg) {
    switch (cfg.scenario_case) {
        case Case::case_a: return case_a_model(cfg.eps, cfg.omega0);
        case Case::case_b:
        case Case::case_b_averaged: return case_b_model(cfg.eps);
        case Case::custom:
            if (!cfg.custom_model)
                throw ConfigValidationError("custom scenarios require a programmatic model");
            return *cfg.custom_model;
        case Case::standard_example: break;
    }
    throw ConfigValidationError("scenario case '" + case_name(cfg.scenario_case) +
                                "' has no fast-slow dynamics (use validate or brackets)");
}

namespace detail {
inline void json_kv(std::ostringstream& os, const char* key, double v, bool last = false) {
    os << "  \"" << key << "\": " << v << (last ? "\n" : ",\n");
}
inline double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    if (x.size() < 2 || x.size() != y.size()) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sx += x[k];
        sy += y[k];
        sxx += x[k] * x[k];
        sxy += x[k] * y[k];
    }
    const double denom = n * sxx - sx * sx;
    return denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
}
}  // namespace detail

// Post-hoc summary of one run. Drift fields are 0 where not applicable
// (J/H drift for averaged runs, whose action is frozen by construction).
struct DiagnosticsReport {
    std::string scenario;   // case name
    bool averaged = false;
    double eps = 0.0;
    double t_max = 0.0;
    long long samples = 0;  // recorded rows
    double i0 = 0.0;              // fast action at the initial state (or override)
    double adiabatic_drift = 0.0; // max_t |I(t) - I(0)|
    double j_rel_drift = 0.0;     // max_t |J(t) - J(0)| / max(|J(0)|, 1e-12)
    double h_rel_drift = 0.0;     // same for H
    double q_slow_max_dev = 0.0;  // max_t |Q(t) - Q(0)|
    double p_slope = 0.0;         // least-squares slope of P against run time

    std::string to_json() const {
        std::ostringstream os;
        os.precision(12);
        os << "{\n  \"scenario\": \"" << scenario << "\",\n"
           << "  \"averaged\": " << (averaged ? "true" : "false") << ",\n";
        detail::json_kv(os, "eps", eps);
        detail::json_kv(os, "t_max", t_max);
        os << "  \"samples\": " << samples << ",\n";
        detail::json_kv(os, "i0", i0);
        detail::json_kv(os, "adiabatic_drift", adiabatic_drift);
        detail::json_kv(os, "j_rel_drift", j_rel_drift);
        detail::json_kv(os, "h_rel_drift", h_rel_drift);
        detail::json_kv(os, "q_slow_max_dev", q_slow_max_dev);
        detail::json_kv(os, "p_slope", p_slope, true);
        os << "}";
        return os.str();
    }
};

struct ScenarioResult {
    flow::Trajectory trajectory;  // full: 6-dim states; averaged: (tau, Q, P)
    DiagnosticsReport report;
    bool averaged = false;
    double i0 = 0.0;
};

inline double initial_action(const ScenarioConfig& cfg, const FastSlowModel& m) {
    if (cfg.i0_override) return *cfg.i0_override;
    return to_action_angle(cfg.x0[iq], cfg.x0[ip], cfg.x0[iQ], m).I;
}

// Reduced system on (tau, Q, P): taudot = eps, (Qdot, Pdot) from the
// averaged drift with frozen action.
inline VectorFieldRepr averaged_rhs(const FastSlowModel& m, bool secular, double I, int nodes) {
    auto slow = averaged_slow_field(m, secular, I, nodes);
    return {[m, slow](const Vec& y) -> Vec {
        const Eigen::Vector2d d = slow(y[1], y[2], y[0]);
        Vec dy(3);
        dy << m.eps, d[0], d[1];
        return dy;
    }};
}

inline ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    cfg.require_valid();
    const FastSlowModel model = model_for(cfg);
    flow::IntegratorConfig icfg = cfg.integrator;
    icfg.t_max = cfg.t_max;
    icfg.require_valid();

    ScenarioResult result;
    result.averaged = (cfg.scenario_case == Case::case_b_averaged);
    result.i0 = initial_action(cfg, model);
    result.report.scenario = case_name(cfg.scenario_case);
    result.report.averaged = result.averaged;
    result.report.eps = model.eps;
    result.report.t_max = cfg.t_max;
    result.report.i0 = result.i0;

    if (result.averaged) {
        Vec y0(3);
        y0 << cfg.x0[itau], cfg.x0[iQ], cfg.x0[iP];
        result.trajectory =
            flow::integrate(averaged_rhs(model, cfg.secular_tau_average, result.i0, cfg.nodes), y0, icfg);
        const auto& tr = result.trajectory;
        std::vector<double> pvals;
        pvals.reserve(tr.states.size());
        for (const Vec& y : tr.states) {
            result.report.q_slow_max_dev = std::max(result.report.q_slow_max_dev, std::abs(y[1] - y0[1]));
            pvals.push_back(y[2]);
        }
        result.report.p_slope = detail::least_squares_slope(tr.times, pvals);
    } else {
        const ScalarField H = hamiltonian(model);
        const ScalarField J = momentum_map_case_b(model);  // = momentum_map_case_a when omega' = 0
        flow::Monitors monitors;
        monitors.emplace_back("I", ScalarField{[model](const Vec& x) {
                                                   return to_action_angle(x[iq], x[ip], x[iQ], model).I;
                                               },
                                               {}});
        monitors.emplace_back("J", J);
        monitors.emplace_back("H", H);
        result.trajectory = flow::integrate(full_field(model), cfg.x0, icfg, monitors);
        const auto& tr = result.trajectory;
        const auto& ivals = tr.monitors[0].second;
        const auto& jvals = tr.monitors[1].second;
        const auto& hvals = tr.monitors[2].second;
        std::vector<double> pvals;
        pvals.reserve(tr.states.size());
        for (std::size_t k = 0; k < tr.states.size(); ++k) {
            result.report.adiabatic_drift =
                std::max(result.report.adiabatic_drift, std::abs(ivals[k] - ivals[0]));
            result.report.j_rel_drift = std::max(
                result.report.j_rel_drift, std::abs(jvals[k] - jvals[0]) / std::max(std::abs(jvals[0]), 1e-12));
            result.report.h_rel_drift = std::max(
                result.report.h_rel_drift, std::abs(hvals[k] - hvals[0]) / std::max(std::abs(hvals[0]), 1e-12));
            result.report.q_slow_max_dev =
                std::max(result.report.q_slow_max_dev, std::abs(tr.states[k][iQ] - cfg.x0[iQ]));
            pvals.push_back(tr.states[k][iP]);
        }
        result.report.p_slope = detail::least_squares_slope(tr.times, pvals);
    }
    result.report.samples = static_cast<long long>(result.trajectory.states.size());
    return result;
}

struct ComparisonLeg {
    double eps = 0.0;
    double q_dev = 0.0;   // sup_t |Q_full - Q_av|
    double p_dev = 0.0;   // sup_t |P_full - P_av|
    double qp_dev = 0.0;  // max of the two
    double i_dev = 0.0;   // sup_t |I_full(t) - I(0)| (adiabatic drift, diagnostic)
};

struct ComparisonReport {
    ComparisonLeg first;   // larger eps
    ComparisonLeg second;  // smaller eps
    double ratio = 0.0;             // first.qp_dev / second.qp_dev
    double scaling_exponent = 0.0;  // log(dev ratio) / log(eps ratio)
    double i_dev_ratio = 0.0;       // first.i_dev / second.i_dev

    std::string to_json() const {
        auto leg = [](std::ostringstream& os, const char* key, const ComparisonLeg& l, bool last) {
            os << "    \"" << key << "\": {\"eps\": " << l.eps << ", \"q_dev\": " << l.q_dev
               << ", \"p_dev\": " << l.p_dev << ", \"qp_dev\": " << l.qp_dev
               << ", \"i_dev\": " << l.i_dev << "}" << (last ? "\n" : ",\n");
        };
        std::ostringstream os;
        os.precision(12);
        os << "{\n  \"legs\": {\n";
        leg(os, "first", first, false);
        leg(os, "second", second, true);
        os << "  },\n";
        detail::json_kv(os, "ratio", ratio);
        detail::json_kv(os, "scaling_exponent", scaling_exponent);
        detail::json_kv(os, "i_dev_ratio", i_dev_ratio, true);
        os << "}";
        return os.str();
    }
};

struct ComparisonResult {
    ComparisonReport report;
    // First-leg trajectories on a shared fixed-step grid, for serialization.
    flow::Trajectory full;
    flow::Trajectory averaged;
    std::vector<double> dq;  // |Q_full - Q_av| per recorded sample
    std::vector<double> dp;
    double i0 = 0.0;  // frozen action used by the first-leg averaged system
};

// Full vs averaged dynamics over t in [0, 1/eps] for two eps values
// (default eps and eps/2). Both systems run fixed-step RK4 on identical
// time grids (dt and record_every from cfg.integrator) so deviations are
// sampled without interpolation. The comparator keeps the tau-dependence
// of the averaged drift (no secular average): tau advances only one
// radian over [0, 1/eps], so the tau-averaged system solves a different
// problem on this horizon.
inline ComparisonResult compare_full_vs_averaged(const ScenarioConfig& cfg) {
    cfg.require_valid();
    if (cfg.scenario_case != Case::case_b && cfg.scenario_case != Case::case_b_averaged &&
        cfg.scenario_case != Case::custom)
        throw ConfigValidationError("compare requires a case-b family scenario");

    const std::pair<double, double> eps_pair =
        cfg.eps_pair ? *cfg.eps_pair : std::make_pair(cfg.eps, 0.5 * cfg.eps);

    ComparisonResult out;
    bool first_leg = true;
    for (double e : {eps_pair.first, eps_pair.second}) {
        ScenarioConfig leg_cfg = cfg;
        leg_cfg.eps = e;
        leg_cfg.eps_pair.reset();
        FastSlowModel model = model_for(leg_cfg);
        model.eps = e;  // keep a custom model consistent with the leg
        const double i0 = initial_action(leg_cfg, model);

        flow::IntegratorConfig icfg = cfg.integrator;
        icfg.method = flow::IntegratorConfig::Method::rk4_fixed;
        icfg.t_max = 1.0 / e;
        icfg.require_valid();

        flow::Monitors monitors;
        monitors.emplace_back("I", ScalarField{[model](const Vec& x) {
                                                   return to_action_angle(x[iq], x[ip], x[iQ], model).I;
                                               },
                                               {}});
        monitors.emplace_back("J", momentum_map_case_b(model));
        monitors.emplace_back("H", hamiltonian(model));
        flow::Trajectory full = flow::integrate(full_field(model), cfg.x0, icfg, monitors);
        Vec y0(3);
        y0 << cfg.x0[itau], cfg.x0[iQ], cfg.x0[iP];
        flow::Trajectory avg =
            flow::integrate(averaged_rhs(model, /*secular=*/false, i0, cfg.nodes), y0, icfg);
        if (full.times.size() != avg.times.size())
            throw Error("compare_full_vs_averaged: mismatched sample grids");

        ComparisonLeg leg;
        leg.eps = e;
        std::vector<double> dq(full.times.size()), dp(full.times.size());
        for (std::size_t k = 0; k < full.times.size(); ++k) {
            dq[k] = std::abs(full.states[k][iQ] - avg.states[k][1]);
            dp[k] = std::abs(full.states[k][iP] - avg.states[k][2]);
            leg.q_dev = std::max(leg.q_dev, dq[k]);
            leg.p_dev = std::max(leg.p_dev, dp[k]);
            leg.i_dev = std::max(leg.i_dev, std::abs(full.monitors[0].second[k] - full.monitors[0].second[0]));
        }
        leg.qp_dev = std::max(leg.q_dev, leg.p_dev);

        if (first_leg) {
            out.report.first = leg;
            out.full = std::move(full);
            out.averaged = std::move(avg);
            out.dq = std::move(dq);
            out.dp = std::move(dp);
            out.i0 = i0;
            first_leg = false;
        } else {
            out.report.second = leg;
        }
    }
    const auto& r1 = out.report.first;
    const auto& r2 = out.report.second;
    out.report.ratio = r2.qp_dev > 0.0 ? r1.qp_dev / r2.qp_dev
                                       : std::numeric_limits<double>::infinity();
    const double eps_ratio = r1.eps / r2.eps;
    out.report.scaling_exponent =
        (out.report.ratio > 0.0 && std::isfinite(out.report.ratio) && eps_ratio != 1.0)
            ? std::log(out.report.ratio) / std::log(eps_ratio)
            : 0.0;
    out.report.i_dev_ratio =
        r2.i_dev > 0.0 ? r1.i_dev / r2.i_dev : std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace qcosym::fastslow
