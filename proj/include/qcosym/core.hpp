#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcosym {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Musical matrix condition number exceeded cond_max: the structure is
// degenerate (or not q-cosymplectic) at the queried point.
struct SingularMusicalMatrix : Error { using Error::Error; };

// deform_structure hypothesis R_i(H') = 0 fails at a sample point.
struct ReebInvarianceViolated : Error { using Error::Error; };

// Fast frequency dropped below the model floor; action-angle variables
// are singular there.
struct OmegaTooSmall : Error { using Error::Error; };

// Adaptive step shrank below 1e-14 * t_max.
struct StepSizeUnderflow : Error { using Error::Error; };

// NaN or Inf entered the integration state.
struct NonFiniteState : Error { using Error::Error; };

struct ConfigParseError : Error { using Error::Error; };
struct ConfigValidationError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// Finite-difference and degeneracy-gate settings shared by all operations
// that differentiate fields or invert the musical matrix.
struct FDConfig {
    double step = 1e-5;        // relative central-difference step
    double tol_closed = 1e-6;  // closedness / Lie-derivative residual gate
    double tol_linear = 1e-10; // pointwise linear-identity residual gate
    double cond_max = 1e12;    // musical-matrix condition rejection threshold

    void require_valid() const {
        if (!(step > 0.0) || !(tol_closed > 0.0) || !(tol_linear > 0.0) || !(cond_max > 0.0))
            throw std::invalid_argument("FDConfig fields must be strictly positive");
    }
};

// Per-coordinate step, relative to the coordinate scale.
inline double fd_step(double step, double coord) {
    return step * std::max(1.0, std::abs(coord));
}

template <class F>
Vec fd_gradient(F&& f, const Vec& x, double step) {
    Vec g(x.size());
    Vec xs = x;
    for (Eigen::Index a = 0; a < x.size(); ++a) {
        const double h = fd_step(step, x[a]);
        xs[a] = x[a] + h;
        const double fp = f(xs);
        xs[a] = x[a] - h;
        const double fm = f(xs);
        xs[a] = x[a];
        g[a] = (fp - fm) / (2.0 * h);
    }
    return g;
}

// J(i, a) = d field_i / d x_a by central differences.
template <class F>
Mat fd_jacobian(F&& field, const Vec& x, double step) {
    Vec xs = x;
    Mat J;
    for (Eigen::Index a = 0; a < x.size(); ++a) {
        const double h = fd_step(step, x[a]);
        xs[a] = x[a] + h;
        const Vec fp = field(xs);
        xs[a] = x[a] - h;
        const Vec fm = field(xs);
        xs[a] = x[a];
        if (J.size() == 0) J.resize(fp.size(), x.size());
        J.col(a) = (fp - fm) / (2.0 * h);
    }
    return J;
}

// Deterministic uniform sample of `count` points in the box [lo, hi];
// a fixed (seed, count, dim) always reproduces the same points.
inline std::vector<Vec> sample_box(const Vec& lo, const Vec& hi, int count, std::uint64_t seed) {
    if (lo.size() != hi.size()) throw std::invalid_argument("sample_box: lo/hi dimension mismatch");
    if (count < 1) throw std::invalid_argument("sample_box: count must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vec> pts(static_cast<std::size_t>(count), Vec(lo.size()));
    for (auto& p : pts)
        for (Eigen::Index a = 0; a < lo.size(); ++a) p[a] = lo[a] + (hi[a] - lo[a]) * u(rng);
    return pts;
}

inline std::vector<Vec> sample_cube(int dim, double half_width, int count, std::uint64_t seed) {
    return sample_box(Vec::Constant(dim, -half_width), Vec::Constant(dim, half_width), count, seed);
}

}  // namespace qcosym
