#pragma once

#include "qcosym/structure.hpp"

namespace qcosym {

// grad f = B^{-1} df. Satisfies lambda_i(grad f) = R_i(f).
inline VectorFieldRepr gradient_field(const QCosymplecticStructure& s, ScalarField f) {
    return {[omega = s.omega, lambdas = s.lambdas, fd = s.fd, f = std::move(f)](const Vec& x) -> Vec {
        const MusicalPoint mp = musical_point(omega, lambdas, fd, x);
        return mp.lu.solve(differential(f, x, fd));
    }};
}

// X_f = B^{-1}(df - sum_i R_i(f) lambda_i). Horizontal: lambda_i(X_f) = 0.
inline VectorFieldRepr hamiltonian_field(const QCosymplecticStructure& s, ScalarField f) {
    return {[omega = s.omega, lambdas = s.lambdas, fd = s.fd, f = std::move(f)](const Vec& x) -> Vec {
        const MusicalPoint mp = musical_point(omega, lambdas, fd, x);
        const Vec df = differential(f, x, fd);
        Vec rhs = df;
        for (std::size_t i = 0; i < mp.reeb.size(); ++i) rhs -= df.dot(mp.reeb[i]) * mp.lambda[i];
        return mp.lu.solve(rhs);
    }};
}

// E = sum_i weights_i R_i + X_f; lambda_i(E) = weights_i. Empty weights
// mean all-ones.
inline VectorFieldRepr evolution_field(const QCosymplecticStructure& s, ScalarField f, Vec weights = {}) {
    if (weights.size() == 0) weights = Vec::Ones(s.chart.q);
    if (weights.size() != s.chart.q)
        throw std::invalid_argument("evolution_field: expected " + std::to_string(s.chart.q) + " weights");
    return {[omega = s.omega, lambdas = s.lambdas, fd = s.fd, f = std::move(f),
             weights = std::move(weights)](const Vec& x) -> Vec {
        const MusicalPoint mp = musical_point(omega, lambdas, fd, x);
        const Vec df = differential(f, x, fd);
        Vec rhs = df;
        for (std::size_t i = 0; i < mp.reeb.size(); ++i) rhs -= df.dot(mp.reeb[i]) * mp.lambda[i];
        Vec E = mp.lu.solve(rhs);
        for (std::size_t i = 0; i < mp.reeb.size(); ++i) E += weights[static_cast<Eigen::Index>(i)] * mp.reeb[i];
        return E;
    }};
}

// {f, g} = Omega(X_f, X_g) = df(X_g), computed in the symmetrized form
// (df(X_g) - dg(X_f)) / 2 so that swapping the arguments negates the
// result exactly in floating point.
inline double poisson_bracket(const QCosymplecticStructure& s, const ScalarField& f, const ScalarField& g,
                              const Vec& x) {
    const MusicalPoint mp = musical_point(s.omega, s.lambdas, s.fd, x);
    const Vec df = differential(f, x, s.fd);
    const Vec dg = differential(g, x, s.fd);
    auto hamiltonian_vec = [&mp](const Vec& d) -> Vec {
        Vec rhs = d;
        for (std::size_t i = 0; i < mp.reeb.size(); ++i) rhs -= d.dot(mp.reeb[i]) * mp.lambda[i];
        return mp.lu.solve(rhs);
    };
    const Vec Xf = hamiltonian_vec(df);
    const Vec Xg = hamiltonian_vec(dg);
    return 0.5 * (df.dot(Xg) - dg.dot(Xf));
}

// [X, Y](x) = J_Y(x) X(x) - J_X(x) Y(x), Jacobians by central differences.
inline Vec lie_bracket(const VectorFieldRepr& X, const VectorFieldRepr& Y, const Vec& x, const FDConfig& cfg) {
    const Mat JX = fd_jacobian(X.eval, x, cfg.step);
    const Mat JY = fd_jacobian(Y.eval, x, cfg.step);
    return JY * X.eval(x) - JX * Y.eval(x);
}

// True iff L_X Omega = 0 and L_X lambda_i = 0 (finite differences) at every
// sample point, to tol_closed.
inline bool check_automorphism(const QCosymplecticStructure& s, const VectorFieldRepr& X,
                               const std::vector<Vec>& points, const FDConfig& cfg) {
    cfg.require_valid();
    for (const Vec& x : points) {
        const Eigen::Index dim = x.size();
        const Vec Xx = X.eval(x);
        const Mat JX = fd_jacobian(X.eval, x, cfg.step);  // JX(c, a) = d X^c / d x_a

        // (L_X W)_ab = X^c d_c W_ab + W_cb d_a X^c + W_ac d_b X^c
        Mat LW = JX.transpose() * s.omega.eval(x) + s.omega.eval(x) * JX;
        Vec xs = x;
        for (Eigen::Index c = 0; c < dim; ++c) {
            const double h = fd_step(cfg.step, x[c]);
            xs[c] = x[c] + h;
            const Mat Wp = s.omega.eval(xs);
            xs[c] = x[c] - h;
            const Mat Wm = s.omega.eval(xs);
            xs[c] = x[c];
            LW += Xx[c] * (Wp - Wm) / (2.0 * h);
        }
        if (LW.cwiseAbs().maxCoeff() > cfg.tol_closed) return false;

        for (const auto& l : s.lambdas) {
            const Mat Jl = fd_jacobian(l.eval, x, cfg.step);  // Jl(a, c) = d lambda_a / d x_c
            const Vec Ll = Jl * Xx + JX.transpose() * l.eval(x);
            if (Ll.cwiseAbs().maxCoeff() > cfg.tol_closed) return false;
        }
    }
    return true;
}

// True iff the covector field b(X) = B X is closed (finite-difference curl
// test) at every sample point; such X are locally gradient fields.
inline bool is_local_gradient(const QCosymplecticStructure& s, const VectorFieldRepr& X,
                              const std::vector<Vec>& points, const FDConfig& cfg) {
    cfg.require_valid();
    auto flat = [&s, &cfg, &X](const Vec& y) -> Vec {
        const MusicalPoint mp = musical_point(s.omega, s.lambdas, cfg, y);
        return mp.B * X.eval(y);
    };
    for (const Vec& x : points)
        if (max_curl_residual(flat, x, cfg.step) > cfg.tol_closed) return false;
    return true;
}

// Omega' = Omega + dH' ^ (sum_i lambda_i) with the lambdas unchanged.
// H' must be clock-invariant — R_i(H') = 0, checked at the sample points —
// or the result is not q-cosymplectic; then R_i' = R_i + X_{H'} and
// X_f' = X_f.
inline QCosymplecticStructure deform_structure(const QCosymplecticStructure& s, ScalarField hprime,
                                               const std::vector<Vec>& points, const FDConfig& cfg) {
    cfg.require_valid();
    for (const Vec& x : points) {
        const MusicalPoint mp = musical_point(s.omega, s.lambdas, cfg, x);
        const Vec dh = differential(hprime, x, cfg);
        for (std::size_t i = 0; i < mp.reeb.size(); ++i) {
            const double rih = dh.dot(mp.reeb[i]);
            if (std::abs(rih) > cfg.tol_linear)
                throw ReebInvarianceViolated("deform_structure: R_" + std::to_string(i + 1) +
                                             "(H') = " + std::to_string(rih) + " at a sample point");
        }
    }
    TwoFormField omega_prime{[omega = s.omega, lambdas = s.lambdas, fd = s.fd,
                              hprime](const Vec& x) -> Mat {
        const Vec g = differential(hprime, x, fd);
        Vec L = Vec::Zero(x.size());
        for (const auto& l : lambdas) L += l.eval(x);
        return omega.eval(x) + g * L.transpose() - L * g.transpose();
    }};
    return make_structure(s.chart, std::move(omega_prime), s.lambdas, s.fd);
}

}  // namespace qcosym
