#pragma once

#include <limits>
#include <utility>

#include "qcosym/chart.hpp"
#include "qcosym/field_types.hpp"

namespace qcosym {

// Coordinate-chart description of (Omega, lambda_1..lambda_q) with the Reeb
// fields cached at construction. All members are immutable after
// make_structure; closures are safe for concurrent evaluation.
struct QCosymplecticStructure {
    Chart chart;
    TwoFormField omega;
    std::vector<OneFormField> lambdas;
    FDConfig fd;
    std::vector<VectorFieldRepr> reeb;  // R_i with b(R_i) = lambda_i
};

// B = W^T + sum_i lambda_i lambda_i^T, so that (B v)_a = Omega(v, e_a)
// + sum_i lambda_i(v) lambda_i_a. Invertible exactly when the structure is
// q-cosymplectic at x.
inline Mat musical_matrix_from(const Mat& W, const std::vector<Vec>& lambda_values) {
    Mat B = W.transpose();
    for (const Vec& l : lambda_values) B += l * l.transpose();
    return B;
}

inline Mat musical_matrix(const QCosymplecticStructure& s, const Vec& x) {
    std::vector<Vec> lam;
    lam.reserve(s.lambdas.size());
    for (const auto& l : s.lambdas) lam.push_back(l.eval(x));
    return musical_matrix_from(s.omega.eval(x), lam);
}

// Pivoted LU with a cheap 1-norm condition estimate; degeneracy surfaces as
// SingularMusicalMatrix instead of NaNs downstream.
inline Eigen::PartialPivLU<Mat> factor_musical(const Mat& B, double cond_max) {
    Eigen::PartialPivLU<Mat> lu(B);
    // rcond() is undefined for singular input (an exactly zero pivot can
    // still yield a benign estimate), so check the pivot magnitudes too.
    const Vec pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double pivot_max = pivots.maxCoeff();
    const double pivot_ratio = pivot_max > 0.0 ? pivot_max / pivots.minCoeff()
                                               : std::numeric_limits<double>::infinity();
    const double rcond = lu.rcond();
    const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    if (!(std::max(cond, pivot_ratio) <= cond_max))
        throw SingularMusicalMatrix("musical matrix condition estimate " + std::to_string(std::max(cond, pivot_ratio)) +
                                    " exceeds cond_max " + std::to_string(cond_max));
    return lu;
}

// Everything the derived-field formulas need at one point: lambda values,
// the factored musical matrix, and the Reeb vectors B^{-1} lambda_i.
struct MusicalPoint {
    Mat B;
    Eigen::PartialPivLU<Mat> lu;
    std::vector<Vec> lambda;
    std::vector<Vec> reeb;
};

inline MusicalPoint musical_point(const TwoFormField& omega, const std::vector<OneFormField>& lambdas,
                                  const FDConfig& fd, const Vec& x) {
    MusicalPoint mp;
    mp.lambda.reserve(lambdas.size());
    for (const auto& l : lambdas) mp.lambda.push_back(l.eval(x));
    mp.B = musical_matrix_from(omega.eval(x), mp.lambda);
    mp.lu = factor_musical(mp.B, fd.cond_max);
    mp.reeb.reserve(lambdas.size());
    for (const Vec& l : mp.lambda) mp.reeb.push_back(mp.lu.solve(l));
    return mp;
}

inline QCosymplecticStructure make_structure(Chart chart, TwoFormField omega,
                                             std::vector<OneFormField> lambdas, FDConfig fd = {}) {
    fd.require_valid();
    if (chart.q < 1) throw std::invalid_argument("make_structure: q-cosymplectic structure needs q >= 1");
    if (static_cast<int>(lambdas.size()) != chart.q)
        throw std::invalid_argument("make_structure: expected " + std::to_string(chart.q) + " one-forms");
    if (!omega.eval) throw std::invalid_argument("make_structure: omega.eval is empty");
    for (const auto& l : lambdas)
        if (!l.eval) throw std::invalid_argument("make_structure: lambda.eval is empty");

    QCosymplecticStructure s{std::move(chart), std::move(omega), std::move(lambdas), fd, {}};
    s.reeb.reserve(static_cast<std::size_t>(s.chart.q));
    for (int i = 0; i < s.chart.q; ++i)
        s.reeb.push_back({[omega = s.omega, lambdas = s.lambdas, fd, i](const Vec& x) -> Vec {
            return musical_point(omega, lambdas, fd, x).reeb[static_cast<std::size_t>(i)];
        }});
    return s;
}

// The Reeb fields R_i = B^{-1} lambda_i, cached on the structure.
inline const std::vector<VectorFieldRepr>& reeb_fields(const QCosymplecticStructure& s) {
    return s.reeb;
}

// R^{2n+q} with coordinates (q1, p1, ..., qn, pn, z1, ..., zq),
// Omega = sum_j dq_j ^ dp_j and lambda_i = dz_i; Reeb fields are d/dz_i.
inline QCosymplecticStructure standard_structure(int n, int q, FDConfig fd = {}) {
    if (n < 1 || q < 1) throw std::invalid_argument("standard_structure: need n, q >= 1");
    const int dim = 2 * n + q;
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(dim));
    for (int j = 1; j <= n; ++j) {
        names.push_back("q" + std::to_string(j));
        names.push_back("p" + std::to_string(j));
    }
    for (int i = 1; i <= q; ++i) names.push_back("z" + std::to_string(i));

    Mat W = Mat::Zero(dim, dim);
    for (int j = 0; j < n; ++j) {
        W(2 * j, 2 * j + 1) = 1.0;
        W(2 * j + 1, 2 * j) = -1.0;
    }
    std::vector<OneFormField> lambdas;
    lambdas.reserve(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) lambdas.push_back(constant_one_form(Vec::Unit(dim, 2 * n + i)));

    return make_structure(Chart(n, q, std::move(names)), constant_two_form(std::move(W)),
                          std::move(lambdas), fd);
}

}  // namespace qcosym
