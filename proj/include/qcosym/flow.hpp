#pragma once

#include <algorithm>
#include <limits>
#include <utility>

#include "qcosym/field_types.hpp"

namespace qcosym::flow {

struct IntegratorConfig {
    enum class Method { rk4_fixed, rk45_adaptive };
    Method method = Method::rk45_adaptive;
    double dt = 1e-3;     // fixed-step size (rk4_fixed)
    double rtol = 1e-9;   // adaptive tolerances (rk45_adaptive)
    double atol = 1e-12;
    double t_max = 1.0;
    int record_every = 1; // thinning of recorded accepted steps

    void require_valid() const {
        if (!(t_max > 0.0)) throw std::invalid_argument("IntegratorConfig: t_max must be positive");
        if (record_every < 1) throw std::invalid_argument("IntegratorConfig: record_every must be >= 1");
        if (method == Method::rk4_fixed && (!(dt > 0.0) || !(dt < t_max)))
            throw std::invalid_argument("IntegratorConfig: need 0 < dt < t_max");
        if (method == Method::rk45_adaptive && (!(rtol > 0.0) || !(atol > 0.0)))
            throw std::invalid_argument("IntegratorConfig: tolerances must be positive");
    }
};

// Sampled integral curve. times[k] is the curve parameter s of states[k];
// monitors hold one value per recorded sample, in the order given to
// integrate().
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    std::vector<std::pair<std::string, std::vector<double>>> monitors;
};

using Monitors = std::vector<std::pair<std::string, ScalarField>>;

namespace detail {

inline void rk4_step(const VectorFieldRepr& X, double h, const Vec& y, Vec& out) {
    const Vec k1 = X.eval(y);
    const Vec k2 = X.eval(y + 0.5 * h * k1);
    const Vec k3 = X.eval(y + 0.5 * h * k2);
    const Vec k4 = X.eval(y + h * k3);
    out = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

inline bool finite(const Vec& y) { return y.allFinite(); }

}  // namespace detail

// Classical RK4 (fixed step) or Dormand-Prince 5(4) with PI step-size
// control. Records the initial state, every record_every-th accepted step,
// and always the final state at t_max.
inline Trajectory integrate(const VectorFieldRepr& X, const Vec& x0, const IntegratorConfig& cfg,
                            const Monitors& monitors = {}) {
    cfg.require_valid();
    if (!detail::finite(x0)) throw std::invalid_argument("integrate: x0 must be finite");

    Trajectory traj;
    traj.monitors.reserve(monitors.size());
    for (const auto& m : monitors) traj.monitors.push_back({m.first, {}});
    auto record = [&](double t, const Vec& y) {
        traj.times.push_back(t);
        traj.states.push_back(y);
        for (std::size_t i = 0; i < monitors.size(); ++i)
            traj.monitors[i].second.push_back(monitors[i].second.eval(y));
    };

    Vec y = x0;
    record(0.0, y);

    if (cfg.method == IntegratorConfig::Method::rk4_fixed) {
        const long nfull = static_cast<long>(std::floor(cfg.t_max / cfg.dt + 1e-12));
        const double rem = cfg.t_max - static_cast<double>(nfull) * cfg.dt;
        Vec ynext(y.size());
        for (long k = 1; k <= nfull; ++k) {
            detail::rk4_step(X, cfg.dt, y, ynext);
            y.swap(ynext);
            if (!detail::finite(y)) throw NonFiniteState("integrate: non-finite state at s = " +
                                                         std::to_string(static_cast<double>(k) * cfg.dt));
            if (k % cfg.record_every == 0 && !(k == nfull && rem <= 1e-12 * cfg.t_max))
                record(static_cast<double>(k) * cfg.dt, y);
        }
        if (rem > 1e-12 * cfg.t_max) {
            detail::rk4_step(X, rem, y, ynext);
            y.swap(ynext);
            if (!detail::finite(y)) throw NonFiniteState("integrate: non-finite state at s = t_max");
        }
        record(cfg.t_max, y);
        return traj;
    }

    // Dormand-Prince 5(4), FSAL, PI controller.
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                            a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    const double h_min = 1e-14 * cfg.t_max;
    double t = 0.0;
    double h = 1e-3 * cfg.t_max;
    double errold = 1e-4;
    Vec k1 = X.eval(y);
    if (!detail::finite(k1)) throw NonFiniteState("integrate: non-finite field at x0");
    long accepted = 0;
    bool last_recorded = true;

    while (t < cfg.t_max) {
        if (h < h_min) throw StepSizeUnderflow("integrate: step " + std::to_string(h) +
                                               " below 1e-14 * t_max at s = " + std::to_string(t));
        bool hit_end = false;
        if (t + h >= cfg.t_max) {
            h = cfg.t_max - t;
            hit_end = true;
        }

        const Vec k2 = X.eval(y + h * (a21 * k1));
        const Vec k3 = X.eval(y + h * (a31 * k1 + a32 * k2));
        const Vec k4 = X.eval(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Vec k5 = X.eval(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Vec k6 = X.eval(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Vec y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Vec k7 = X.eval(y5);
        const Vec err_vec = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double err_sq = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double scale = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            const double e = err_vec[i] / scale;
            err_sq += e * e;
        }
        const double err = std::sqrt(err_sq / static_cast<double>(y.size()));

        if (!std::isfinite(err)) {  // overflow inside the attempt: retry smaller
            h *= 0.5;
            continue;
        }
        if (err <= 1.0) {
            t = hit_end ? cfg.t_max : t + h;
            y = y5;
            if (!detail::finite(y)) throw NonFiniteState("integrate: non-finite state at s = " +
                                                         std::to_string(t));
            k1 = k7;
            ++accepted;
            last_recorded = (accepted % cfg.record_every == 0) || t >= cfg.t_max;
            if (last_recorded) record(t, y);
            const double fac = 0.9 * std::pow(err > 0.0 ? err : 1e-16, -0.17) * std::pow(errold, 0.04);
            h *= std::clamp(fac, 0.2, 5.0);
            errold = std::max(err, 1e-4);
        } else {
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        }
    }
    if (!last_recorded) record(cfg.t_max, y);
    return traj;
}

// Richardson-style global-order estimate at t_end: fixed-step RK4 runs for
// each dt against a reference at min(dt)/4, slope of log error vs log dt.
struct OrderEstimate {
    double order = 0.0;
    bool exact = false;               // all errors at rounding level; order meaningless
    std::vector<double> errors;       // one per dt, same ordering as input
};

inline OrderEstimate convergence_order(const VectorFieldRepr& X, const Vec& x0, double t_end,
                                       const std::vector<double>& dt_list) {
    if (dt_list.size() < 3) throw std::invalid_argument("convergence_order: need at least 3 step sizes");
    IntegratorConfig cfg;
    cfg.method = IntegratorConfig::Method::rk4_fixed;
    cfg.t_max = t_end;
    cfg.record_every = std::numeric_limits<int>::max();  // endpoints only

    cfg.dt = *std::min_element(dt_list.begin(), dt_list.end()) / 4.0;
    const Vec ref = integrate(X, x0, cfg).states.back();
    const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());

    OrderEstimate out;
    std::vector<double> ln_dt, ln_err;
    for (double dt : dt_list) {
        cfg.dt = dt;
        const Vec end = integrate(X, x0, cfg).states.back();
        const double err = (end - ref).cwiseAbs().maxCoeff();
        out.errors.push_back(err);
        if (err > 1e-13 * scale) {
            ln_dt.push_back(std::log(dt));
            ln_err.push_back(std::log(err));
        }
    }
    if (ln_dt.size() < 2) {
        out.exact = true;
        out.order = std::numeric_limits<double>::infinity();
        return out;
    }
    const auto n = static_cast<double>(ln_dt.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < ln_dt.size(); ++k) {
        sx += ln_dt[k];
        sy += ln_err[k];
        sxx += ln_dt[k] * ln_dt[k];
        sxy += ln_dt[k] * ln_err[k];
    }
    out.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

}  // namespace qcosym::flow
