#pragma once

#include "qcosym/core.hpp"

namespace qcosym {

// Smooth function on the chart. `grad` is optional; when absent, consumers
// fall back to central finite differences with FDConfig::step.
struct ScalarField {
    std::function<double(const Vec&)> eval;
    std::function<Vec(const Vec&)> grad;
};

struct OneFormField {
    std::function<Vec(const Vec&)> eval;
};

// W(a, b) = Omega(e_a, e_b); antisymmetric at every evaluated point.
struct TwoFormField {
    std::function<Mat(const Vec&)> eval;
};

// Vector field as point -> coefficient vector in chart coordinates.
struct VectorFieldRepr {
    std::function<Vec(const Vec&)> eval;
};

inline Vec differential(const ScalarField& f, const Vec& x, const FDConfig& cfg) {
    return f.grad ? f.grad(x) : fd_gradient(f.eval, x, cfg.step);
}

inline ScalarField coordinate_function(int dim, int index) {
    if (index < 0 || index >= dim) throw std::invalid_argument("coordinate_function: index out of range");
    return {
        [index](const Vec& x) { return x[index]; },
        [dim, index](const Vec&) { return Vec(Vec::Unit(dim, index)); },
    };
}

inline ScalarField constant_function(int dim, double value) {
    return {
        [value](const Vec&) { return value; },
        [dim](const Vec&) { return Vec(Vec::Zero(dim)); },
    };
}

inline OneFormField constant_one_form(Vec covector) {
    return {[c = std::move(covector)](const Vec&) { return c; }};
}

inline TwoFormField constant_two_form(Mat W) {
    return {[W = std::move(W)](const Vec&) { return W; }};
}

inline VectorFieldRepr constant_vector_field(Vec v) {
    return {[v = std::move(v)](const Vec&) { return v; }};
}

// Curl residual max_{a<b} |d_a beta_b - d_b beta_a| of a one-form by
// central differences; zero for closed forms.
template <class F>
double max_curl_residual(F&& beta, const Vec& x, double step) {
    const Mat J = fd_jacobian(beta, x, step);  // J(b, a) = d beta_b / d x_a
    double worst = 0.0;
    for (Eigen::Index a = 0; a < J.rows(); ++a)
        for (Eigen::Index b = a + 1; b < J.rows(); ++b)
            worst = std::max(worst, std::abs(J(b, a) - J(a, b)));
    return worst;
}

// Closedness residual of a two-form: max over index triples of the cyclic
// sum d_a W_bc + d_b W_ca + d_c W_ab, derivatives by central differences.
template <class F>
double max_closedness_residual(F&& omega, const Vec& x, double step) {
    const Eigen::Index dim = x.size();
    std::vector<Mat> dW(static_cast<std::size_t>(dim));
    Vec xs = x;
    for (Eigen::Index a = 0; a < dim; ++a) {
        const double h = fd_step(step, x[a]);
        xs[a] = x[a] + h;
        const Mat Wp = omega(xs);
        xs[a] = x[a] - h;
        const Mat Wm = omega(xs);
        xs[a] = x[a];
        dW[static_cast<std::size_t>(a)] = (Wp - Wm) / (2.0 * h);
    }
    double worst = 0.0;
    for (Eigen::Index a = 0; a < dim; ++a)
        for (Eigen::Index b = a + 1; b < dim; ++b)
            for (Eigen::Index c = b + 1; c < dim; ++c) {
                const double cyc = dW[static_cast<std::size_t>(a)](b, c) +
                                   dW[static_cast<std::size_t>(b)](c, a) +
                                   dW[static_cast<std::size_t>(c)](a, b);
                worst = std::max(worst, std::abs(cyc));
            }
    return worst;
}

}  // namespace qcosym
