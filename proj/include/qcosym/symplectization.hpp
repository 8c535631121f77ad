#pragma once

#include "qcosym/derived_fields.hpp"
#include "qcosym/validate.hpp"

namespace qcosym::sympl {

// (R^q x M, omega_hat) with omega_hat = pr*Omega + sum_i ds_i ^ pr*lambda_i,
// coordinates ordered (s_1..s_q, base coordinates). In this module the
// contraction convention is i_X omega_hat := omega_hat(., X) = W_hat X, so
// that i_{R_i} omega_hat = +ds_i and X_{s_i} = R_i.
struct SymplecticStructure {
    Chart chart;              // dim = 2n + 2q, q member set to 0 (plain symplectic chart)
    TwoFormField omega_hat;   // W_hat(a, b) = omega_hat(e_a, e_b)
    int base_n = 0;
    int base_q = 0;
    FDConfig fd;
};

inline Vec base_point(const SymplecticStructure& S, const Vec& xhat) {
    return xhat.tail(xhat.size() - S.base_q);
}

inline SymplecticStructure symplectize(const QCosymplecticStructure& s) {
    const int q = s.chart.q;
    const int dim_base = s.chart.dim;
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(q + dim_base));
    for (int i = 1; i <= q; ++i) names.push_back("s" + std::to_string(i));
    names.insert(names.end(), s.chart.names.begin(), s.chart.names.end());

    TwoFormField omega_hat{[omega = s.omega, lambdas = s.lambdas, q, dim_base](const Vec& xhat) -> Mat {
        const Vec x = xhat.tail(dim_base);
        Mat What = Mat::Zero(q + dim_base, q + dim_base);
        What.bottomRightCorner(dim_base, dim_base) = omega.eval(x);
        for (int i = 0; i < q; ++i) {
            const Vec li = lambdas[static_cast<std::size_t>(i)].eval(x);
            What.row(i).tail(dim_base) = li.transpose();
            What.col(i).tail(dim_base) = -li;
        }
        return What;
    }};

    return SymplecticStructure{Chart(s.chart.n + q, 0, std::move(names)), std::move(omega_hat),
                               s.chart.n, q, s.fd};
}

// Lift of a base scalar field through the projection pr(s, x) = x.
inline ScalarField lift_through_projection(const ScalarField& f, const SymplecticStructure& S) {
    const int q = S.base_q;
    ScalarField F;
    F.eval = [f, q](const Vec& xhat) { return f.eval(xhat.tail(xhat.size() - q)); };
    if (f.grad)
        F.grad = [f, q](const Vec& xhat) -> Vec {
            Vec d = Vec::Zero(xhat.size());
            d.tail(xhat.size() - q) = f.grad(xhat.tail(xhat.size() - q));
            return d;
        };
    return F;
}

// Standard symplectic bracket upstairs: solve W_hat X_F = dF, then
// {F, K} = omega_hat(X_F, X_K) = dK . X_F.
inline double symplectic_bracket(const SymplecticStructure& S, const ScalarField& F, const ScalarField& K,
                                 const Vec& xhat) {
    const Mat What = S.omega_hat.eval(xhat);
    const auto lu = factor_musical(What, S.fd.cond_max);
    const Vec XF = lu.solve(differential(F, xhat, S.fd));
    return differential(K, xhat, S.fd).dot(XF);
}

// True iff {f o pr, k o pr}_omega_hat matches {f, k} o pr at every point,
// to tol (the projection is a Poisson morphism).
inline bool check_poisson_morphism(const QCosymplecticStructure& s, const ScalarField& f,
                                   const ScalarField& k, const std::vector<Vec>& points_hat,
                                   double tol = 1e-8) {
    const SymplecticStructure S = symplectize(s);
    const ScalarField F = lift_through_projection(f, S);
    const ScalarField K = lift_through_projection(k, S);
    for (const Vec& xhat : points_hat) {
        const double up = symplectic_bracket(S, F, K, xhat);
        const double down = poisson_bracket(s, f, k, base_point(S, xhat));
        if (std::abs(up - down) > tol) return false;
    }
    return true;
}

// True iff i_{R_i} omega_hat = ds_i componentwise at every point, to tol;
// the Reeb fields are extended by zero in the s-slots.
inline bool extended_reeb_check(const QCosymplecticStructure& s, const std::vector<Vec>& points_hat,
                                double tol = 1e-10) {
    const SymplecticStructure S = symplectize(s);
    for (const Vec& xhat : points_hat) {
        const Vec x = base_point(S, xhat);
        const Mat What = S.omega_hat.eval(xhat);
        for (int i = 0; i < S.base_q; ++i) {
            Vec Rhat = Vec::Zero(xhat.size());
            Rhat.tail(x.size()) = s.reeb[static_cast<std::size_t>(i)].eval(x);
            const Vec residual = What * Rhat - Vec(Vec::Unit(xhat.size(), i));
            if (residual.cwiseAbs().maxCoeff() > tol) return false;
        }
    }
    return true;
}

// Nondegeneracy and closedness diagnostics used by the validation layer.
struct SymplecticChecks {
    bool nondegenerate = true;
    double min_abs_det = std::numeric_limits<double>::infinity();
    bool closed = true;
    double worst_closedness = 0.0;
};

inline SymplecticChecks check_symplectic(const SymplecticStructure& S, const std::vector<Vec>& points_hat,
                                         const FDConfig& cfg) {
    SymplecticChecks out;
    for (const Vec& xhat : points_hat) {
        const Mat What = S.omega_hat.eval(xhat);
        const double det = What.determinant();
        out.min_abs_det = std::min(out.min_abs_det, std::abs(det));
        if (!(std::abs(det) > 0.0)) out.nondegenerate = false;
        out.worst_closedness =
            std::max(out.worst_closedness, max_closedness_residual(S.omega_hat.eval, xhat, cfg.step));
    }
    if (out.worst_closedness > cfg.tol_closed) out.closed = false;
    return out;
}

}  // namespace qcosym::sympl
