#include "helpers.hpp"

using namespace qcosym;

TEST_CASE("musical matrix of the standard chart matches the hand value") {
    const auto s = standard_structure(1, 1);
    const Vec x = Vec::Zero(3);
    Mat expected(3, 3);
    expected << 0, -1, 0, 1, 0, 0, 0, 0, 1;
    REQUIRE((musical_matrix(s, x) - expected).cwiseAbs().maxCoeff() == 0.0);

    // Same matrix at any point: the standard forms are constant.
    for (const Vec& p : sample_cube(3, 2.0, 8, 11))
        REQUIRE((musical_matrix(s, p) - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("musical matrix solves reproduce the defining relations") {
    for (int n = 1; n <= 3; ++n)
        for (int q = 1; q <= 3; ++q) {
            const auto s = standard_structure(n, q);
            const Vec x = sample_cube(s.chart.dim, 1.0, 1, 5)[0];
            const Mat B = musical_matrix(s, x);
            for (int i = 0; i < q; ++i) {
                const Vec li = s.lambdas[static_cast<std::size_t>(i)].eval(x);
                const Vec Ri = factor_musical(B, s.fd.cond_max).solve(li);
                // b(R_i) = lambda_i by construction.
                REQUIRE(qtest::max_abs_diff(B * Ri, li) < 1e-14);
            }
        }
}

TEST_CASE("dependent clock one-form makes the musical matrix singular") {
    // lambda = dq lies in the image of Omega = dq^dp: B = W^T + l l^T is
    // singular everywhere, so factoring must be refused.
    const auto s = qtest::degenerate_structure();
    const Vec x = Vec::Zero(3);
    Mat expected(3, 3);
    expected << 1, -1, 0, 1, 0, 0, 0, 0, 0;
    REQUIRE((musical_matrix(s, x) - expected).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE_THROWS_AS(factor_musical(musical_matrix(s, x), s.fd.cond_max), SingularMusicalMatrix);
    REQUIRE_THROWS_AS(reeb_fields(s)[0].eval(x), SingularMusicalMatrix);

    const auto report = validate_structure(s, sample_cube(3, 2.0, 16, 3), s.fd);
    REQUIRE_FALSE(report.pass);
    REQUIRE_FALSE(report.musical_invertible.pass);
    REQUIRE_FALSE(report.reeb_relations.pass);
}

TEST_CASE("standard-chart Reeb fields are the clock axes") {
    for (int n = 1; n <= 3; ++n)
        for (int q = 1; q <= 3; ++q) {
            const auto s = standard_structure(n, q);
            for (const Vec& x : sample_cube(s.chart.dim, 2.0, 16, 17)) {
                for (int i = 0; i < q; ++i) {
                    const Vec Ri = reeb_fields(s)[static_cast<std::size_t>(i)].eval(x);
                    REQUIRE(qtest::max_abs_diff(Ri, Vec::Unit(s.chart.dim, 2 * n + i)) < 1e-12);
                }
            }
        }
}

TEST_CASE("curved two-form Reeb field matches its closed form") {
    const auto s = qtest::curved_structure();
    for (const Vec& x : sample_cube(3, 1.5, 50, 23)) {
        const Vec R = reeb_fields(s)[0].eval(x);
        REQUIRE(qtest::max_abs_diff(R, qtest::curved_reeb_oracle(x)) < 1e-10);
        // Defining relations directly: lambda(R) = 1 and i_R Omega = 0.
        REQUIRE(std::abs(R[2] - 1.0) < 1e-12);
        REQUIRE((s.omega.eval(x).transpose() * R).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("non-constant closed clock form Reeb field matches its closed form") {
    const auto s = qtest::curved_lambda_structure();
    for (const Vec& x : sample_cube(3, 2.0, 50, 29))
        REQUIRE(qtest::max_abs_diff(reeb_fields(s)[0].eval(x), Vec::Unit(3, 2)) < 1e-10);
}

TEST_CASE("validation passes on the standard charts and the fast-slow chart") {
    for (int n = 1; n <= 3; ++n)
        for (int q = 1; q <= 3; ++q) {
            const auto s = standard_structure(n, q);
            const auto report = validate_structure(s, sample_cube(s.chart.dim, 2.0, 64, 41), s.fd);
            INFO("n=" << n << " q=" << q << "\n" << report.to_table());
            REQUIRE(report.pass);
            REQUIRE(report.n == n);
            REQUIRE(report.q == q);
        }
    const auto fs = fastslow::build_structure();
    const auto report = validate_structure(fs, sample_cube(6, 2.0, 64, 43), fs.fd);
    REQUIRE(report.pass);
}

TEST_CASE("validation passes on the curved example structures") {
    for (const auto& s : {qtest::curved_structure(), qtest::curved_lambda_structure()}) {
        const auto report = validate_structure(s, sample_cube(3, 1.5, 32, 47), s.fd);
        INFO(report.to_table());
        REQUIRE(report.pass);
    }
}

TEST_CASE("a non-closed two-form fails the closedness check") {
    // Omega = (1 + z) dq^dp: d Omega = dz^dq^dp, residual exactly 1.
    TwoFormField omega{[](const Vec& x) -> Mat {
        Mat W = Mat::Zero(3, 3);
        W(0, 1) = 1.0 + x[2];
        W(1, 0) = -W(0, 1);
        return W;
    }};
    const auto s = make_structure(Chart(1, 1, {"q", "p", "z"}), std::move(omega),
                                  {constant_one_form(Vec::Unit(3, 2))});
    // Stay clear of z = -1 where the rank drops; closedness is the target.
    const auto points = sample_box(Vec::Constant(3, -0.5), Vec::Constant(3, 0.5), 32, 53);
    const auto report = validate_structure(s, points, s.fd);
    REQUIRE_FALSE(report.pass);
    REQUIRE_FALSE(report.omega_closed.pass);
    REQUIRE(report.omega_closed.worst > 0.5);
    REQUIRE(report.lambda_closed.pass);
    REQUIRE(report.antisymmetry.pass);
}

TEST_CASE("a non-closed clock form fails the closedness check") {
    // lambda = dz + z dq has d lambda = dz^dq != 0.
    Mat W = Mat::Zero(3, 3);
    W(0, 1) = 1.0;
    W(1, 0) = -1.0;
    OneFormField lambda{[](const Vec& x) -> Vec {
        Vec l(3);
        l << x[2], 0.0, 1.0;
        return l;
    }};
    const auto s = make_structure(Chart(1, 1, {"q", "p", "z"}), constant_two_form(std::move(W)), {lambda});
    const auto report = validate_structure(s, sample_cube(3, 1.0, 32, 59), s.fd);
    REQUIRE_FALSE(report.pass);
    REQUIRE_FALSE(report.lambda_closed.pass);
}

TEST_CASE("rank and antisymmetry defects are detected") {
    SECTION("zero two-form has rank 0, not 2n") {
        const auto s = make_structure(Chart(1, 1, {"q", "p", "z"}), constant_two_form(Mat::Zero(3, 3)),
                                      {constant_one_form(Vec::Unit(3, 2))});
        const auto report = validate_structure(s, sample_cube(3, 1.0, 8, 61), s.fd);
        REQUIRE_FALSE(report.pass);
        REQUIRE_FALSE(report.omega_rank.pass);
    }
    SECTION("symmetric matrix fails antisymmetry") {
        Mat W = Mat::Zero(3, 3);
        W(0, 1) = 1.0;
        W(1, 0) = 1.0;  // wrong sign
        const auto s = make_structure(Chart(1, 1, {"q", "p", "z"}), constant_two_form(std::move(W)),
                                      {constant_one_form(Vec::Unit(3, 2))});
        const auto report = validate_structure(s, sample_cube(3, 1.0, 8, 67), s.fd);
        REQUIRE_FALSE(report.pass);
        REQUIRE_FALSE(report.antisymmetry.pass);
    }
    SECTION("parallel clock forms fail independence") {
        const auto s = standard_structure(1, 2);
        // Override lambda_2 = lambda_1.
        auto bad = make_structure(s.chart, s.omega,
                                  {s.lambdas[0], OneFormField{s.lambdas[0].eval}});
        const auto report = validate_structure(bad, sample_cube(4, 1.0, 8, 71), bad.fd);
        REQUIRE_FALSE(report.pass);
        REQUIRE_FALSE(report.lambda_independent.pass);
    }
}

TEST_CASE("validation report serializes to JSON and a table") {
    const auto s = standard_structure(1, 1);
    const auto report = validate_structure(s, sample_cube(3, 2.0, 8, 73), s.fd);
    const std::string json = report.to_json();
    REQUIRE(json.find("\"pass\": true") != std::string::npos);
    REQUIRE(json.find("\"omega_closed\"") != std::string::npos);
    const std::string table = report.to_table();
    REQUIRE(table.find("overall: PASS") != std::string::npos);
}

TEST_CASE("chart and construction preconditions") {
    REQUIRE_THROWS_AS(Chart(0, 1, {"z"}), std::invalid_argument);
    REQUIRE_THROWS_AS(Chart(1, 1, {"a", "b"}), std::invalid_argument);
    REQUIRE_THROWS_AS(Chart(1, 1, {"a", "a", "b"}), std::invalid_argument);
    REQUIRE(Chart(1, 1, {"a", "b", "c"}).index_of("c") == 2);
    REQUIRE(Chart(1, 1, {"a", "b", "c"}).index_of("d") == -1);

    Mat W = Mat::Zero(2, 2);
    W(0, 1) = 1.0;
    W(1, 0) = -1.0;
    REQUIRE_THROWS_AS(make_structure(Chart(1, 0, {"a", "b"}), constant_two_form(W), {}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(make_structure(Chart(1, 1, {"a", "b", "c"}), constant_two_form(W), {}),
                      std::invalid_argument);

    FDConfig bad;
    bad.step = 0.0;
    REQUIRE_THROWS_AS(bad.require_valid(), std::invalid_argument);

    REQUIRE_THROWS_AS(standard_structure(0, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(validate_structure(standard_structure(1, 1), {}, FDConfig{}),
                      std::invalid_argument);
}

TEST_CASE("sampling is deterministic in the seed") {
    const auto a = sample_cube(4, 2.0, 16, 99);
    const auto b = sample_cube(4, 2.0, 16, 99);
    const auto c = sample_cube(4, 2.0, 16, 100);
    for (std::size_t k = 0; k < a.size(); ++k) REQUIRE(qtest::max_abs_diff(a[k], b[k]) == 0.0);
    REQUIRE(qtest::max_abs_diff(a[0], c[0]) > 0.0);
    REQUIRE_THROWS_AS(sample_cube(3, 1.0, 0, 1), std::invalid_argument);
}
