#pragma once

#include <sstream>

#include "qcosym/structure.hpp"

namespace qcosym {

// One structural check aggregated over all sample points. `worst` is the
// least favourable observed value; its meaning is per check (residual for
// closedness/antisymmetry/Reeb checks, singular-value ratio for the rank
// and independence checks, condition number for invertibility).
struct CheckSummary {
    bool pass = true;
    double worst = 0.0;
};

struct ValidationReport {
    int points = 0;
    int dim = 0, n = 0, q = 0;
    CheckSummary antisymmetry;       // max |W + W^T|
    CheckSummary omega_rank;         // rank(W) == 2n via singular values
    CheckSummary lambda_independent; // sigma_q / sigma_1 of stacked lambdas
    CheckSummary lambda_closed;      // max curl residual over all lambda_i
    CheckSummary omega_closed;       // max cyclic-sum residual
    CheckSummary musical_invertible; // max cond(B)
    CheckSummary reeb_relations;     // max |lambda_j(R_i) - delta_ij|, |Omega(R_i, .)|
    bool pass = false;

    std::string to_json() const {
        auto emit = [](std::ostringstream& os, const char* name, const CheckSummary& c, bool last = false) {
            os << "    \"" << name << "\": {\"pass\": " << (c.pass ? "true" : "false")
               << ", \"worst\": " << c.worst << "}" << (last ? "\n" : ",\n");
        };
        std::ostringstream os;
        os.precision(12);
        os << "{\n  \"pass\": " << (pass ? "true" : "false") << ",\n  \"points\": " << points
           << ",\n  \"dim\": " << dim << ",\n  \"n\": " << n << ",\n  \"q\": " << q
           << ",\n  \"checks\": {\n";
        emit(os, "antisymmetry", antisymmetry);
        emit(os, "omega_rank", omega_rank);
        emit(os, "lambda_independent", lambda_independent);
        emit(os, "lambda_closed", lambda_closed);
        emit(os, "omega_closed", omega_closed);
        emit(os, "musical_invertible", musical_invertible);
        emit(os, "reeb_relations", reeb_relations, true);
        os << "  }\n}\n";
        return os.str();
    }

    std::string to_table() const {
        auto row = [](std::ostringstream& os, const char* name, const CheckSummary& c) {
            os << "  " << (c.pass ? "PASS" : "FAIL") << "  " << name;
            for (std::size_t k = std::string(name).size(); k < 22; ++k) os << ' ';
            os << "worst = " << c.worst << "\n";
        };
        std::ostringstream os;
        os.precision(6);
        os << "structure validation: dim=" << dim << " n=" << n << " q=" << q
           << " points=" << points << "\n";
        row(os, "antisymmetry", antisymmetry);
        row(os, "omega_rank", omega_rank);
        row(os, "lambda_independent", lambda_independent);
        row(os, "lambda_closed", lambda_closed);
        row(os, "omega_closed", omega_closed);
        row(os, "musical_invertible", musical_invertible);
        row(os, "reeb_relations", reeb_relations);
        os << "  overall: " << (pass ? "PASS" : "FAIL") << "\n";
        return os.str();
    }
};

// Sample-based check of the structure axioms. Failures are reported, never
// thrown; a singular musical matrix marks the affected checks failed.
inline ValidationReport validate_structure(const QCosymplecticStructure& s,
                                           const std::vector<Vec>& sample_points,
                                           const FDConfig& cfg) {
    cfg.require_valid();
    if (sample_points.empty()) throw std::invalid_argument("validate_structure: need at least one sample point");

    // Relative singular-value cutoff for the rank and independence checks.
    constexpr double kRankTol = 1e-8;

    ValidationReport r;
    r.points = static_cast<int>(sample_points.size());
    r.dim = s.chart.dim;
    r.n = s.chart.n;
    r.q = s.chart.q;
    r.lambda_independent.worst = std::numeric_limits<double>::infinity();  // tracks a minimum

    for (const Vec& x : sample_points) {
        const Mat W = s.omega.eval(x);
        std::vector<Vec> lam;
        lam.reserve(s.lambdas.size());
        for (const auto& l : s.lambdas) lam.push_back(l.eval(x));

        r.antisymmetry.worst = std::max(r.antisymmetry.worst, (W + W.transpose()).cwiseAbs().maxCoeff());

        {
            Eigen::JacobiSVD<Mat> svd(W);
            const Vec sv = svd.singularValues();
            const double top = sv[0];
            const double smallest_kept = top > 0.0 ? sv[2 * s.chart.n - 1] / top : 0.0;
            const double largest_dropped = (2 * s.chart.n < s.chart.dim && top > 0.0)
                                               ? sv[2 * s.chart.n] / top
                                               : 0.0;
            if (smallest_kept <= kRankTol || largest_dropped > kRankTol) r.omega_rank.pass = false;
            r.omega_rank.worst = std::max(r.omega_rank.worst, largest_dropped);
        }

        {
            Mat L(s.chart.q, s.chart.dim);
            for (int i = 0; i < s.chart.q; ++i) L.row(i) = lam[static_cast<std::size_t>(i)];
            Eigen::JacobiSVD<Mat> svd(L);
            const Vec sv = svd.singularValues();
            const double ratio = sv[0] > 0.0 ? sv[s.chart.q - 1] / sv[0] : 0.0;
            r.lambda_independent.worst = std::min(r.lambda_independent.worst, ratio);
            if (ratio <= kRankTol) r.lambda_independent.pass = false;
        }

        for (const auto& l : s.lambdas)
            r.lambda_closed.worst = std::max(r.lambda_closed.worst, max_curl_residual(l.eval, x, cfg.step));
        r.omega_closed.worst = std::max(r.omega_closed.worst, max_closedness_residual(s.omega.eval, x, cfg.step));

        try {
            const MusicalPoint mp = musical_point(s.omega, s.lambdas, cfg, x);
            const double rcond = mp.lu.rcond();
            r.musical_invertible.worst = std::max(r.musical_invertible.worst, 1.0 / rcond);
            double reeb_res = 0.0;
            for (int i = 0; i < s.chart.q; ++i) {
                const Vec& Ri = mp.reeb[static_cast<std::size_t>(i)];
                reeb_res = std::max(reeb_res, (W.transpose() * Ri).cwiseAbs().maxCoeff());
                for (int j = 0; j < s.chart.q; ++j) {
                    const double pairing = lam[static_cast<std::size_t>(j)].dot(Ri);
                    reeb_res = std::max(reeb_res, std::abs(pairing - (i == j ? 1.0 : 0.0)));
                }
            }
            r.reeb_relations.worst = std::max(r.reeb_relations.worst, reeb_res);
        } catch (const SingularMusicalMatrix&) {
            r.musical_invertible.pass = false;
            r.musical_invertible.worst = std::numeric_limits<double>::infinity();
            r.reeb_relations.pass = false;
            r.reeb_relations.worst = std::numeric_limits<double>::infinity();
        }
    }

    if (r.antisymmetry.worst > cfg.tol_linear) r.antisymmetry.pass = false;
    if (r.lambda_closed.worst > cfg.tol_closed) r.lambda_closed.pass = false;
    if (r.omega_closed.worst > cfg.tol_closed) r.omega_closed.pass = false;
    if (r.musical_invertible.worst > cfg.cond_max) r.musical_invertible.pass = false;
    if (r.reeb_relations.worst > cfg.tol_linear) r.reeb_relations.pass = false;

    r.pass = r.antisymmetry.pass && r.omega_rank.pass && r.lambda_independent.pass &&
             r.lambda_closed.pass && r.omega_closed.pass && r.musical_invertible.pass &&
             r.reeb_relations.pass;
    return r;
}

}  // namespace qcosym
