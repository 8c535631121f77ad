#include "helpers.hpp"

#include <cmath>

using namespace qcosym;
using namespace qcosym::fastslow;

namespace {

ScenarioConfig base_config(Case c, double t_max) {
    ScenarioConfig cfg;
    cfg.scenario_case = c;
    cfg.t_max = t_max;
    return cfg;
}

}  // namespace

TEST_CASE("full oscillating run reports clocks and action faithfully") {
    auto cfg = base_config(Case::case_b, 5.0);
    const auto res = run_scenario(cfg);
    REQUIRE_FALSE(res.averaged);
    REQUIRE(std::abs(res.i0 - std::sqrt(2.0) / 2.0) < 1e-14);
    REQUIRE(res.report.scenario == "case-b");
    REQUIRE(res.report.samples == static_cast<long long>(res.trajectory.times.size()));

    // The clock coordinates integrate exactly: t(s) = s and tau(s) = eps s.
    for (std::size_t k = 0; k < res.trajectory.times.size(); ++k) {
        const double s = res.trajectory.times[k];
        REQUIRE(std::abs(res.trajectory.states[k][it] - s) < 1e-9);
        REQUIRE(std::abs(res.trajectory.states[k][itau] - cfg.eps * s) < 1e-9);
    }
    REQUIRE(res.trajectory.monitors.size() == 3);
    REQUIRE(res.trajectory.monitors[0].first == "I");
    REQUIRE(res.trajectory.monitors[1].first == "J");
    REQUIRE(res.trajectory.monitors[2].first == "H");
}

TEST_CASE("fixed-frequency run conserves its momentum map and energy") {
    auto cfg = base_config(Case::case_a, 50.0);
    const auto res = run_scenario(cfg);
    REQUIRE(std::abs(res.i0 - 0.5) < 1e-14);
    INFO("J drift " << res.report.j_rel_drift << ", H drift " << res.report.h_rel_drift);
    REQUIRE(res.report.j_rel_drift < 1e-6);
    REQUIRE(res.report.h_rel_drift < 1e-6);
    // The slow pair genuinely moves, so conservation is not vacuous.
    REQUIRE(res.report.q_slow_max_dev > 1e-3);
}

TEST_CASE("action drift shrinks with the coupling strength") {
    auto strong = base_config(Case::case_b, 20.0);
    strong.eps = 0.05;
    auto weak = base_config(Case::case_b, 40.0);
    weak.eps = 0.025;
    const double d1 = run_scenario(strong).report.adiabatic_drift;
    const double d2 = run_scenario(weak).report.adiabatic_drift;
    INFO("drift " << d1 << " vs " << d2);
    REQUIRE(d1 > 0.0);
    REQUIRE(d2 > 0.0);
    const double ratio = d1 / d2;
    REQUIRE(ratio > 1.2);
    REQUIRE(ratio < 3.2);
}

TEST_CASE("averaged run freezes the action and drifts linearly") {
    auto cfg = base_config(Case::case_b_averaged, 200.0);
    const auto res = run_scenario(cfg);
    REQUIRE(res.averaged);
    REQUIRE(res.report.averaged);
    REQUIRE(std::abs(res.i0 - std::sqrt(2.0) / 2.0) < 1e-14);
    // Q stays put and P falls at slope -omega'(1) I = -1/2.
    REQUIRE(res.report.q_slow_max_dev < 1e-9);
    REQUIRE(std::abs(res.report.p_slope + 0.5) < 0.005);
    const auto& states = res.trajectory.states;
    for (std::size_t k = 1; k < states.size(); ++k) REQUIRE(states[k][2] < states[k - 1][2]);
}

TEST_CASE("frozen-action override changes the averaged slope") {
    auto cfg = base_config(Case::case_b_averaged, 200.0);
    cfg.i0_override = 0.5;
    const auto res = run_scenario(cfg);
    REQUIRE(res.i0 == 0.5);
    const double expected = -0.5 / std::sqrt(2.0);  // -omega'(1) * 0.5
    INFO("slope " << res.report.p_slope << " expected " << expected);
    REQUIRE(std::abs(res.report.p_slope - expected) < 0.01 * std::abs(expected));
}

TEST_CASE("diagnostics serialize to JSON") {
    auto cfg = base_config(Case::case_b_averaged, 50.0);
    const auto res = run_scenario(cfg);
    const std::string json = res.report.to_json();
    REQUIRE(json.find("\"scenario\": \"case-b-averaged\"") != std::string::npos);
    REQUIRE(json.find("\"p_slope\"") != std::string::npos);
    REQUIRE(json.find("\"i0\"") != std::string::npos);
}

TEST_CASE("full and averaged systems stay close over one slow unit") {
    ScenarioConfig cfg;
    cfg.scenario_case = Case::case_b;
    cfg.eps_pair = std::make_pair(0.05, 0.025);
    cfg.nodes = 64;
    cfg.integrator.dt = 1e-2;
    cfg.integrator.record_every = 5;
    const auto res = compare_full_vs_averaged(cfg);

    REQUIRE(res.report.first.eps == 0.05);
    REQUIRE(res.report.second.eps == 0.025);
    REQUIRE(std::abs(res.i0 - std::sqrt(2.0) / 2.0) < 1e-14);

    // Matched sample grids for the stored first leg.
    REQUIRE(res.full.times.size() == res.averaged.times.size());
    REQUIRE(res.dq.size() == res.full.times.size());
    REQUIRE(res.dp.size() == res.full.times.size());
    REQUIRE(res.full.monitors.size() == 3);

    // Deviations are genuine but bounded on the slow timescale.
    REQUIRE(res.report.first.q_dev > 0.0);
    REQUIRE(res.report.first.p_dev > 0.0);
    REQUIRE(res.report.first.qp_dev == std::max(res.report.first.q_dev, res.report.first.p_dev));
    REQUIRE(res.report.first.qp_dev < 1.0);

    // The action drift is adiabatic: it halves with the coupling.
    const double r = res.report.i_dev_ratio;
    INFO("i_dev ratio " << r);
    REQUIRE(r > 1.5);
    REQUIRE(r < 2.6);

    const std::string json = res.report.to_json();
    REQUIRE(json.find("\"ratio\"") != std::string::npos);
    REQUIRE(json.find("\"scaling_exponent\"") != std::string::npos);
}

TEST_CASE("comparison rejects scenarios without a slow family") {
    ScenarioConfig cfg;
    cfg.scenario_case = Case::case_a;
    REQUIRE_THROWS_AS(compare_full_vs_averaged(cfg), ConfigValidationError);
    cfg.scenario_case = Case::standard_example;
    REQUIRE_THROWS_AS(compare_full_vs_averaged(cfg), ConfigValidationError);
}

TEST_CASE("scenario runs are deterministic") {
    auto cfg = base_config(Case::case_b, 10.0);
    const auto a = run_scenario(cfg);
    const auto b = run_scenario(cfg);
    REQUIRE(a.trajectory.times == b.trajectory.times);
    for (std::size_t k = 0; k < a.trajectory.states.size(); ++k)
        REQUIRE(qtest::max_abs_diff(a.trajectory.states[k], b.trajectory.states[k]) == 0.0);
    REQUIRE(a.report.to_json() == b.report.to_json());
}

TEST_CASE("scenario configuration is validated") {
    ScenarioConfig cfg;
    cfg.eps = -0.1;
    REQUIRE_THROWS_AS(cfg.require_valid(), ConfigValidationError);
    cfg = {};
    cfg.x0 = Vec::Zero(4);
    REQUIRE_THROWS_AS(cfg.require_valid(), ConfigValidationError);
    cfg = {};
    cfg.nodes = 9;
    REQUIRE_THROWS_AS(cfg.require_valid(), ConfigValidationError);
    cfg = {};
    cfg.nodes = 4;
    REQUIRE_THROWS_AS(cfg.require_valid(), ConfigValidationError);
    cfg = {};
    cfg.scenario_case = Case::custom;
    REQUIRE_THROWS_AS(cfg.require_valid(), ConfigValidationError);
    cfg = {};
    cfg.eps_pair = std::make_pair(0.05, 0.05);
    REQUIRE_THROWS_AS(cfg.require_valid(), ConfigValidationError);
    cfg = {};
    cfg.t_max = 0.0;
    REQUIRE_THROWS_AS(cfg.require_valid(), ConfigValidationError);
    cfg = {};
    cfg.omega0 = 0.0;
    REQUIRE_THROWS_AS(cfg.require_valid(), ConfigValidationError);
    cfg = {};
    cfg.seed = -1;
    REQUIRE_THROWS_AS(cfg.require_valid(), ConfigValidationError);
    cfg = {};
    cfg.i0_override = -0.25;
    REQUIRE_THROWS_AS(cfg.require_valid(), ConfigValidationError);
    cfg = {};
    REQUIRE_NOTHROW(cfg.require_valid());
}

TEST_CASE("case names round-trip") {
    for (Case c : {Case::case_a, Case::case_b, Case::case_b_averaged, Case::standard_example,
                   Case::custom})
        REQUIRE(case_from_name(case_name(c)) == c);
    REQUIRE_THROWS_AS(case_from_name("case-c"), ConfigValidationError);
}

TEST_CASE("a custom model runs through the scenario and comparison paths") {
    ScenarioConfig cfg;
    cfg.scenario_case = Case::custom;
    cfg.custom_model = case_b_model(0.05);
    cfg.t_max = 5.0;
    const auto res = run_scenario(cfg);
    REQUIRE(res.report.scenario == "custom");
    REQUIRE(res.trajectory.states.back()[it] > 4.99);

    cfg.integrator.dt = 5e-2;
    cfg.nodes = 32;
    cfg.eps_pair = std::make_pair(0.2, 0.1);
    const auto cmp = compare_full_vs_averaged(cfg);
    REQUIRE(cmp.report.first.eps == 0.2);
    // Each leg must rescale the model coupling: tau advances to eps * (1/eps) = 1.
    REQUIRE(std::abs(cmp.full.states.back()[itau] - 1.0) < 1e-9);
    REQUIRE(std::abs(cmp.averaged.states.back()[0] - 1.0) < 1e-9);
}
