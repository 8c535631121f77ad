#pragma once

#include "qcosym/derived_fields.hpp"
#include "qcosym/validate.hpp"

namespace qcosym::fastslow {

// State layout on R^6: (t, tau, q, p, Q, P).
inline constexpr int it = 0, itau = 1, iq = 2, ip = 3, iQ = 4, iP = 5;
inline constexpr int state_dim = 6;

inline constexpr double two_pi = 6.28318530717958647692528676655900577;

// One fast oscillator (q, p) with Q-dependent frequency, one slow pair
// (Q, P), two clock coordinates (t, tau); H = p^2/2 + omega(Q)^2 q^2/2
// + eps * V(q, Q, P, tau).
struct FastSlowModel {
    std::function<double(double)> omega;        // Q -> omega(Q)
    std::function<double(double)> omega_prime;  // domega/dQ
    std::function<double(double, double, double, double)> V;       // (q, Q, P, tau)
    std::function<double(double, double, double, double)> dV_dq;
    std::function<double(double, double, double, double)> dV_dQ;
    std::function<double(double, double, double, double)> dV_dP;
    std::function<double(double, double, double, double)> dV_dtau;
    double eps = 0.05;
    double omega_min = 1e-6;  // hard floor; action-angle variables are singular at omega = 0
};

inline double checked_omega(const FastSlowModel& m, double Q) {
    const double w = m.omega(Q);
    if (!(w >= m.omega_min))
        throw OmegaTooSmall("omega(Q) = " + std::to_string(w) + " below floor " +
                            std::to_string(m.omega_min) + " at Q = " + std::to_string(Q));
    return w;
}

// omega = omega0 constant; the slow potential (Q^2 + P^2)/2 makes (Q, P)
// circle at angular frequency eps and keeps H invariant under the fast
// elliptic rotations, so the fast energy is a conserved momentum map.
inline FastSlowModel case_a_model(double eps, double omega0 = 1.0) {
    if (!(omega0 > 0.0)) throw std::invalid_argument("case_a_model: omega0 must be positive");
    FastSlowModel m;
    m.omega = [omega0](double) { return omega0; };
    m.omega_prime = [](double) { return 0.0; };
    m.V = [](double, double Q, double P, double) { return 0.5 * (Q * Q + P * P); };
    m.dV_dq = [](double, double, double, double) { return 0.0; };
    m.dV_dQ = [](double, double Q, double, double) { return Q; };
    m.dV_dP = [](double, double, double P, double) { return P; };
    m.dV_dtau = [](double, double, double, double) { return 0.0; };
    m.eps = eps;
    return m;
}

// omega(Q) = sqrt(1 + Q^2), V = Q P cos(tau).
inline FastSlowModel case_b_model(double eps) {
    FastSlowModel m;
    m.omega = [](double Q) { return std::sqrt(1.0 + Q * Q); };
    m.omega_prime = [](double Q) { return Q / std::sqrt(1.0 + Q * Q); };
    m.V = [](double, double Q, double P, double tau) { return Q * P * std::cos(tau); };
    m.dV_dq = [](double, double, double, double) { return 0.0; };
    m.dV_dQ = [](double, double, double P, double tau) { return P * std::cos(tau); };
    m.dV_dP = [](double, double Q, double, double tau) { return Q * std::cos(tau); };
    m.dV_dtau = [](double, double Q, double P, double tau) { return -Q * P * std::sin(tau); };
    m.eps = eps;
    return m;
}

// The 2-cosymplectic structure on R^6: lambda_1 = dt, lambda_2 = dtau,
// Omega = dq^dp + dQ^dP; Reeb fields d/dt, d/dtau.
inline QCosymplecticStructure build_structure(FDConfig fd = {}) {
    Mat W = Mat::Zero(state_dim, state_dim);
    W(iq, ip) = 1.0;
    W(ip, iq) = -1.0;
    W(iQ, iP) = 1.0;
    W(iP, iQ) = -1.0;
    std::vector<OneFormField> lambdas{constant_one_form(Vec::Unit(state_dim, it)),
                                      constant_one_form(Vec::Unit(state_dim, itau))};
    return make_structure(Chart(2, 2, {"t", "tau", "q", "p", "Q", "P"}), constant_two_form(std::move(W)),
                          std::move(lambdas), fd);
}

inline ScalarField hamiltonian(const FastSlowModel& m) {
    ScalarField H;
    H.eval = [m](const Vec& x) {
        const double w = checked_omega(m, x[iQ]);
        return 0.5 * x[ip] * x[ip] + 0.5 * w * w * x[iq] * x[iq] +
               m.eps * m.V(x[iq], x[iQ], x[iP], x[itau]);
    };
    H.grad = [m](const Vec& x) -> Vec {
        const double w = checked_omega(m, x[iQ]);
        const double wp = m.omega_prime(x[iQ]);
        Vec d(state_dim);
        d[it] = 0.0;
        d[itau] = m.eps * m.dV_dtau(x[iq], x[iQ], x[iP], x[itau]);
        d[iq] = w * w * x[iq] + m.eps * m.dV_dq(x[iq], x[iQ], x[iP], x[itau]);
        d[ip] = x[ip];
        d[iQ] = w * wp * x[iq] * x[iq] + m.eps * m.dV_dQ(x[iq], x[iQ], x[iP], x[itau]);
        d[iP] = m.eps * m.dV_dP(x[iq], x[iQ], x[iP], x[itau]);
        return d;
    };
    return H;
}

// Hand-written multi-time Hamilton equations with clock weights (1, eps):
// tdot = 1, taudot = eps, qdot = p, pdot = -omega^2 q - eps dV/dq,
// Qdot = eps dV/dP, Pdot = -omega omega' q^2 - eps dV/dQ.
// Independent of the musical-matrix pipeline; the two paths are compared
// in the tests.
inline VectorFieldRepr full_field(const FastSlowModel& m) {
    return {[m](const Vec& x) -> Vec {
        const double w = checked_omega(m, x[iQ]);
        const double wp = m.omega_prime(x[iQ]);
        Vec dx(state_dim);
        dx[it] = 1.0;
        dx[itau] = m.eps;
        dx[iq] = x[ip];
        dx[ip] = -w * w * x[iq] - m.eps * m.dV_dq(x[iq], x[iQ], x[iP], x[itau]);
        dx[iQ] = m.eps * m.dV_dP(x[iq], x[iQ], x[iP], x[itau]);
        dx[iP] = -w * wp * x[iq] * x[iq] - m.eps * m.dV_dQ(x[iq], x[iQ], x[iP], x[itau]);
        return dx;
    }};
}

struct ActionAngle {
    double I = 0.0;      // fast action, >= 0
    double theta = 0.0;  // fast angle in (-pi, pi]
};

// I = (p^2 + omega^2 q^2) / (2 omega); theta fixed by the inverse map
// q = sqrt(2I/omega) sin(theta), p = sqrt(2 I omega) cos(theta), i.e.
// theta = atan2(omega q, p).
inline ActionAngle to_action_angle(double q, double p, double Q, const FastSlowModel& m) {
    const double w = checked_omega(m, Q);
    ActionAngle aa;
    aa.I = (p * p + w * w * q * q) / (2.0 * w);
    aa.theta = (aa.I > 0.0) ? std::atan2(w * q, p) : 0.0;
    return aa;
}

inline std::pair<double, double> from_action_angle(double I, double theta, double Q,
                                                   const FastSlowModel& m) {
    if (I < 0.0) throw std::invalid_argument("from_action_angle: I must be nonnegative");
    const double w = checked_omega(m, Q);
    return {std::sqrt(2.0 * I / w) * std::sin(theta), std::sqrt(2.0 * I * w) * std::cos(theta)};
}

// (1/2pi) Integral_0^{2pi} F(q(I,theta,Q), Q, P, tau) dtheta by composite
// Simpson; nodes must be even and >= 8. Spectrally accurate for smooth F
// (periodic integrand).
template <class F>
double theta_average(F&& f, double I, double Q, double P, double tau, const FastSlowModel& m,
                     int nodes = 256) {
    if (nodes < 8 || nodes % 2 != 0) throw std::invalid_argument("theta_average: nodes must be even and >= 8");
    const double w = checked_omega(m, Q);
    const double amp = std::sqrt(2.0 * std::max(I, 0.0) / w);
    const double h = two_pi / nodes;
    auto eval = [&](int k) { return f(amp * std::sin(k * h), Q, P, tau); };
    double sum = eval(0) + eval(nodes);
    for (int k = 1; k < nodes; k += 2) sum += 4.0 * eval(k);
    for (int k = 2; k < nodes; k += 2) sum += 2.0 * eval(k);
    return sum * h / 3.0 / two_pi;
}

// H_av(I, Q, P, tau) = omega(Q) I + eps <V>.
inline std::function<double(double, double, double, double)> averaged_hamiltonian(const FastSlowModel& m,
                                                                                  int nodes = 256) {
    return [m, nodes](double I, double Q, double P, double tau) {
        return checked_omega(m, Q) * I + m.eps * theta_average(m.V, I, Q, P, tau, m, nodes);
    };
}

// Reduced slow field with frozen action I:
//   Qdot = eps d<V>/dP, Pdot = -omega'(Q) I - eps d<V>/dQ.
// The partials are averaged analytically: d<V>/dP = <dV/dP> and
// d<V>/dQ = <dV/dQ - (omega'/2omega) q dV/dq> (q depends on Q at fixed I).
// With secular_tau_average the averages run over tau in [0, 2pi) as well
// (same Simpson rule), matching a reduction that drops all tau-periodic
// forcing; the returned field then ignores its tau argument.
inline std::function<Eigen::Vector2d(double, double, double)> averaged_slow_field(
    const FastSlowModel& m, bool secular_tau_average, double I, int nodes = 256) {
    auto drift = [m, I, nodes](double Q, double P, double tau) -> Eigen::Vector2d {
        const double w = checked_omega(m, Q);
        const double wp = m.omega_prime(Q);
        const double dP = theta_average(m.dV_dP, I, Q, P, tau, m, nodes);
        const double dQ = theta_average(
            [&m, w, wp](double q, double Qq, double Pp, double tt) {
                return m.dV_dQ(q, Qq, Pp, tt) - 0.5 * (wp / w) * q * m.dV_dq(q, Qq, Pp, tt);
            },
            I, Q, P, tau, m, nodes);
        return {m.eps * dP, -wp * I - m.eps * dQ};
    };
    if (!secular_tau_average)
        return [drift](double Q, double P, double tau) { return drift(Q, P, tau); };
    return [drift, nodes](double Q, double P, double) -> Eigen::Vector2d {
        const double h = two_pi / nodes;
        Eigen::Vector2d sum = drift(Q, P, 0.0) + drift(Q, P, two_pi);
        for (int k = 1; k < nodes; k += 2) sum += 4.0 * drift(Q, P, k * h);
        for (int k = 2; k < nodes; k += 2) sum += 2.0 * drift(Q, P, k * h);
        return sum * (h / 3.0 / two_pi);
    };
}

// Momentum map of the elliptic rotations in the (q, p)-plane at fixed
// frequency omega0: J = (p^2 + omega0^2 q^2)/2, with dJ = i_{xi} Omega for
// the generator xi = p d_q - omega0^2 q d_p.
inline ScalarField momentum_map_case_a(double omega0) {
    if (!(omega0 > 0.0)) throw std::invalid_argument("momentum_map_case_a: omega0 must be positive");
    ScalarField J;
    J.eval = [omega0](const Vec& x) { return 0.5 * (x[ip] * x[ip] + omega0 * omega0 * x[iq] * x[iq]); };
    J.grad = [omega0](const Vec& x) -> Vec {
        Vec d = Vec::Zero(state_dim);
        d[iq] = omega0 * omega0 * x[iq];
        d[ip] = x[ip];
        return d;
    };
    return J;
}

inline VectorFieldRepr generator_case_a(double omega0) {
    return {[omega0](const Vec& x) -> Vec {
        Vec v = Vec::Zero(state_dim);
        v[iq] = x[ip];
        v[ip] = -omega0 * omega0 * x[iq];
        return v;
    }};
}

// Q-dependent version: J = (p^2 + omega(Q)^2 q^2)/2 = omega(Q) I, with
// generator xi = p d_q - omega^2 q d_p - omega omega' q^2 d_P.
inline ScalarField momentum_map_case_b(const FastSlowModel& m) {
    ScalarField J;
    J.eval = [m](const Vec& x) {
        const double w = checked_omega(m, x[iQ]);
        return 0.5 * (x[ip] * x[ip] + w * w * x[iq] * x[iq]);
    };
    J.grad = [m](const Vec& x) -> Vec {
        const double w = checked_omega(m, x[iQ]);
        const double wp = m.omega_prime(x[iQ]);
        Vec d = Vec::Zero(state_dim);
        d[iq] = w * w * x[iq];
        d[ip] = x[ip];
        d[iQ] = w * wp * x[iq] * x[iq];
        return d;
    };
    return J;
}

inline VectorFieldRepr generator_case_b(const FastSlowModel& m) {
    return {[m](const Vec& x) -> Vec {
        const double w = checked_omega(m, x[iQ]);
        const double wp = m.omega_prime(x[iQ]);
        Vec v = Vec::Zero(state_dim);
        v[iq] = x[ip];
        v[ip] = -w * w * x[iq];
        v[iP] = -w * wp * x[iq] * x[iq];
        return v;
    }};
}

}  // namespace qcosym::fastslow
