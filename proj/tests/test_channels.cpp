#include "support/oracles.hpp"

#include <qcovert/channels.hpp>
#include <qcovert/errors.hpp>

#include <doctest.h>

#include <array>
#include <cmath>

using namespace qcovert;

namespace {

Matrix diag2(double a, double b) { return HermitianOperator::diagonal({a, b}).matrix(); }

const std::array<double, 9> kNoiseGrid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

}  // namespace

TEST_SUITE("channels") {

TEST_CASE("channel spec validation") {
    CHECK_THROWS_AS(ChannelSpec(-0.1, Scenario::E1Only), ValidationError);
    CHECK_THROWS_AS(ChannelSpec(1.1, Scenario::E1Only), ValidationError);
    CHECK(ChannelSpec(0.0, Scenario::AllEnv).is_boundary());
    CHECK(ChannelSpec(1.0, Scenario::AllEnv).is_boundary());
    CHECK_FALSE(ChannelSpec(0.5, Scenario::AllEnv).is_boundary());
    CHECK(ChannelSpec(0.5, Scenario::AllEnv).warden_dim() == 4);
    CHECK(ChannelSpec(0.5, Scenario::E2Only).warden_dim() == 2);
    CHECK(parse_scenario("1") == Scenario::AllEnv);
    CHECK(parse_scenario("E2Only") == Scenario::E2Only);
    CHECK(parse_scenario("3") == Scenario::E1Only);
    CHECK_THROWS_AS(parse_scenario("4"), ValidationError);
}

TEST_CASE("depolarize examples") {
    const auto mixed = DensityOperator::maximally_mixed(2);
    for (double q : {0.0, 0.3, 1.0}) CHECK(max_abs_diff(depolarize(mixed, q).matrix(), mixed.matrix()) < 1e-16);
    const auto zero = DensityOperator::basis_state(2, 0);
    CHECK(max_abs_diff(depolarize(zero, 0.0).matrix(), zero.matrix()) == 0.0);
    CHECK(max_abs_diff(depolarize(zero, 0.5).matrix(), diag2(0.75, 0.25)) < 1e-16);
    CHECK_THROWS_AS(depolarize(zero, 1.5), ValidationError);
    CHECK_THROWS_AS(depolarize(DensityOperator::maximally_mixed(4), 0.5), ShapeError);
}

TEST_CASE("property: pauli twirl equals the mixing form") {
    oracle::Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const DensityOperator rho(oracle::random_density(2, rng));
        const double q = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        CHECK(max_abs_diff(depolarize(rho, q).matrix(), depolarize_pauli(rho, q).matrix()) <= 1e-14);
    }
}

TEST_CASE("stinespring isometry") {
    const auto v0 = stinespring_isometry(0.0);
    Matrix expected = Matrix::Zero(8, 2);
    expected(0, 0) = 1.0;  // |0>_B |00>_E
    expected(4, 1) = 1.0;  // |1>_B |00>_E
    CHECK(max_abs_diff(v0.matrix(), expected) == 0.0);

    const auto v = stinespring_isometry(0.37);
    CHECK(max_abs_diff(v.matrix().adjoint() * v.matrix(), Matrix::Identity(2, 2)) <= 1e-15);
    CHECK_THROWS_AS(stinespring_isometry(-0.01), ValidationError);
    CHECK_THROWS_AS(Isometry(Matrix::Zero(8, 2)), DomainError);
    CHECK_THROWS_AS(Isometry(Matrix::Zero(4, 2)), ShapeError);
}

TEST_CASE("dilated output examples") {
    const auto out = dilated_output(DensityOperator::basis_state(2, 0), 0.0);
    CHECK(max_abs_diff(out.matrix(), DensityOperator::basis_state(8, 0).matrix()) == 0.0);
    CHECK(max_abs_diff(bob_marginal(DensityOperator::basis_state(2, 0), 0.5).matrix(), diag2(0.75, 0.25)) < 1e-15);
    CHECK(out.op().trace() == doctest::Approx(1.0));
}

TEST_CASE("property: dilation reproduces the channel") {
    oracle::Rng rng(202);
    for (double q : kNoiseGrid) {
        for (int trial = 0; trial < 50; ++trial) {
            const DensityOperator rho(oracle::random_density(2, rng));
            CHECK(trace_distance(bob_marginal(rho, q), depolarize(rho, q)) <= 1e-12);
        }
    }
}

TEST_CASE("E2 marginal is input independent") {
    const ChannelSpec spec(0.5, Scenario::E2Only);
    const auto w1 = willie_marginal(DensityOperator::basis_state(2, 1), spec);
    CHECK(max_abs_diff(w1.matrix(), diag2(0.75, 0.25)) < 1e-15);
    CHECK(willie_output(0, spec) == willie_output(1, spec));
}

TEST_CASE("E1 marginal matches its closed form") {
    for (double q : kNoiseGrid) {
        const ChannelSpec spec(q, Scenario::E1Only);
        const auto w0 = willie_output(0, spec);
        const auto w1 = willie_output(1, spec);
        CHECK(max_abs_diff(w0.matrix(), oracle::e1_output(0, q)) < 1e-15);
        CHECK(max_abs_diff(w1.matrix(), oracle::e1_output(1, q)) < 1e-15);
        const Matrix z = pauli_z();
        CHECK(max_abs_diff(w1.matrix(), z * w0.matrix() * z) < 1e-15);
    }
    const auto w0 = willie_output(0, ChannelSpec(0.5, Scenario::E1Only));
    CHECK(w0.matrix()(0, 1).real() == doctest::Approx(std::sqrt(0.625 * 0.125)).epsilon(1e-14));
    CHECK(w0.matrix()(0, 1).imag() == doctest::Approx(-0.125).epsilon(1e-14));
}

TEST_CASE("property: closed-form marginals agree with the dilation on general inputs") {
    oracle::Rng rng(303);
    for (double q : kNoiseGrid) {
        for (int trial = 0; trial < 20; ++trial) {
            const DensityOperator rho(oracle::random_density(2, rng));
            CHECK(max_abs_diff(closed_form::willie_e2(rho, q),
                               willie_marginal(rho, ChannelSpec(q, Scenario::E2Only)).matrix()) <= 1e-14);
            CHECK(max_abs_diff(closed_form::willie_e1(rho, q),
                               willie_marginal(rho, ChannelSpec(q, Scenario::E1Only)).matrix()) <= 1e-14);
        }
    }
}

TEST_CASE("property: warden marginals are states") {
    oracle::Rng rng(404);
    for (Scenario s : {Scenario::AllEnv, Scenario::E2Only, Scenario::E1Only}) {
        for (double q : kNoiseGrid) {
            const DensityOperator rho(oracle::random_density(2, rng));
            const auto w = willie_marginal(rho, ChannelSpec(q, s));
            CHECK(std::abs(w.op().trace() - 1.0) <= 1e-14);
            CHECK(oracle::reference_eigenvalues(w.matrix()).front() >= -1e-10);
        }
    }
}

TEST_CASE("all-environment marginal equals the tabulated matrices up to relabeling") {
    const Matrix p = closed_form::tabulated_to_dilation_basis();
    CHECK(max_abs_diff(p * p, Matrix::Identity(4, 4)) == 0.0);
    for (double q : kNoiseGrid) {
        const ChannelSpec spec(q, Scenario::AllEnv);
        for (int x : {0, 1}) {
            const Matrix tab = closed_form::willie_all_env_tabulated(x, q);
            CHECK(max_abs_diff(p * tab * p, willie_output(x, spec).matrix()) <= 1e-15);
        }
    }
    // |0> input at q = 0.5: weight 1 - 3q/4 on |00>, couplings sqrt(q/4 (1 - 3q/4)).
    const Matrix tab = closed_form::willie_all_env_tabulated(0, 0.5);
    CHECK(tab(0, 0).real() == doctest::Approx(0.625));
    CHECK(tab(0, 3).real() == doctest::Approx(std::sqrt(0.125 * 0.625)));
}

TEST_CASE("all-environment null vectors") {
    const double q = 0.5;
    const ChannelSpec spec(q, Scenario::AllEnv);
    const auto w0 = willie_output(0, spec);
    const auto w1 = willie_output(1, spec);
    const Vector e0 = closed_form::null_vector(0);
    const Vector e1 = closed_form::null_vector(1);
    CHECK(std::abs(w0.op().expectation(e0)) < 1e-16);
    CHECK(std::abs(w1.op().expectation(e1)) < 1e-16);
    CHECK(std::abs(e0.dot(e1)) < 1e-16);
    CHECK(w1.op().expectation(e0) == doctest::Approx(q / 2.0).epsilon(1e-14));

    const Vector t0 = closed_form::tabulated_null_vector(0);
    CHECK(std::abs(t0(1) - Complex(0.0, 1.0 / std::sqrt(2.0))) < 1e-16);
    CHECK(std::abs(t0(2) - 1.0 / std::sqrt(2.0)) < 1e-16);
    const Matrix tab0 = closed_form::willie_all_env_tabulated(0, q);
    CHECK(std::abs((t0.adjoint() * tab0 * t0)(0, 0)) < 1e-16);
}

TEST_CASE("support report verdicts") {
    const auto all = scenario_support_report(ChannelSpec(0.5, Scenario::AllEnv));
    CHECK_FALSE(all.support_contained);
    CHECK(all.verdict == Verdict::Impossible);
    REQUIRE(all.null_vector_overlap.has_value());
    CHECK(*all.null_vector_overlap == doctest::Approx(0.25).epsilon(1e-14));
    // Independent dilation oracle: 5/12 leakage, trace distance 0.809016994374947.
    CHECK(all.kernel_leakage == doctest::Approx(5.0 / 12.0).epsilon(1e-12));
    CHECK(all.trace_distance == doctest::Approx(0.8090169943749475).epsilon(1e-12));
    CHECK(std::abs(all.det_omega0) < 1e-15);

    const auto e2 = scenario_support_report(ChannelSpec(0.3, Scenario::E2Only));
    CHECK(e2.verdict == Verdict::Trivial);
    CHECK(e2.trace_distance == 0.0);
    CHECK(e2.support_contained);

    const auto e1 = scenario_support_report(ChannelSpec(0.5, Scenario::E1Only));
    CHECK(e1.verdict == Verdict::Nontrivial);
    CHECK(e1.support_contained);
    CHECK(e1.trace_distance > 0.0);
    CHECK_FALSE(e1.null_vector_overlap.has_value());
    CHECK(e1.det_omega0 == doctest::Approx(0.09375).epsilon(1e-14));
    CHECK(e1.det_omega1 == doctest::Approx(0.09375).epsilon(1e-14));
}

TEST_CASE("E1 determinant follows q(2-q)/8") {
    for (double q : kNoiseGrid) {
        const auto rep = scenario_support_report(ChannelSpec(q, Scenario::E1Only));
        // 2x2 determinant straight from the closed-form entries.
        const Matrix m = oracle::e1_output(0, q);
        const double direct = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
        CHECK(rep.det_omega0 == doctest::Approx(direct).epsilon(1e-13));
        CHECK(closed_form::e1_determinant(q) == doctest::Approx(direct).epsilon(1e-13));
    }
}

TEST_CASE("all-environment leakage across noise levels") {
    const std::array<std::pair<double, double>, 3> expected{{{0.25, 0.2321428571428571},
                                                              {0.5, 0.41666666666666685},
                                                              {0.75, 0.525}}};
    for (auto [q, leak] : expected) {
        const auto rep = scenario_support_report(ChannelSpec(q, Scenario::AllEnv));
        CHECK(rep.kernel_leakage == doctest::Approx(leak).epsilon(1e-12));
        CHECK(*rep.null_vector_overlap >= q / 2.0 - 1e-10);
    }
}

TEST_CASE("boundary noise is flagged degenerate") {
    for (Scenario s : {Scenario::AllEnv, Scenario::E2Only, Scenario::E1Only}) {
        for (double q : {0.0, 1.0}) {
            const auto rep = scenario_support_report(ChannelSpec(q, s));
            CHECK(rep.verdict == Verdict::Degenerate);
            CHECK_FALSE(rep.annotation.empty());
        }
    }
}

}  // TEST_SUITE
