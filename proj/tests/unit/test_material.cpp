#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "sbplate/material.hpp"

using namespace sbplate;

TEST_CASE("volume fraction follows the power law") {
    CHECK(volume_fraction_ceramic(0.5, 1.0, 1.0) == doctest::Approx(0.5));
    CHECK(volume_fraction_ceramic(0.25, 1.0, 2.0) == doctest::Approx(0.0625));
    // exponent-zero convention: pure ceramic everywhere, including x = 0
    CHECK(volume_fraction_ceramic(0.0, 1.0, 0.0) == 1.0);
    CHECK(volume_fraction_ceramic(0.7, 1.0, 0.0) == 1.0);

    CHECK_THROWS_AS(volume_fraction_ceramic(-0.1, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(volume_fraction_ceramic(1.1, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(volume_fraction_ceramic(0.5, 0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(volume_fraction_ceramic(0.5, 1.0, -1.0), ConfigError);
}

TEST_CASE("volume fraction is strictly increasing and hits the endpoints") {
    for (double n : {0.5, 1.0, 2.0, 10.0}) {
        CHECK(volume_fraction_ceramic(0.0, 1.0, n) == doctest::Approx(0.0));
        CHECK(volume_fraction_ceramic(1.0, 1.0, n) == doctest::Approx(1.0));
        double prev = 0.0;
        for (int i = 1; i <= 20; ++i) {
            const double v = volume_fraction_ceramic(i / 20.0, 1.0, n);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("rule of mixtures reproduces the phases and their mean") {
    const MaterialPair pair = MaterialPair::si3n4_sus304(1.0);

    const PhaseProperties at_end = effective_properties(pair, 1.0, 1.0); // V_c = 1
    CHECK(at_end.E == doctest::Approx(pair.ceramic.E));
    CHECK(at_end.nu == doctest::Approx(pair.ceramic.nu));
    CHECK(at_end.rho == doctest::Approx(pair.ceramic.rho));

    const PhaseProperties at_start = effective_properties(pair, 0.0, 1.0); // V_c = 0
    CHECK(at_start.E == doctest::Approx(pair.metal.E));
    CHECK(at_start.nu == doctest::Approx(pair.metal.nu));
    CHECK(at_start.rho == doctest::Approx(pair.metal.rho));

    // arithmetic mean of the reference constants at V_c = 0.5
    const PhaseProperties mid = effective_properties(pair, 0.5, 1.0);
    CHECK(mid.E == doctest::Approx(274.735e9).epsilon(1e-12));
    CHECK(mid.nu == doctest::Approx(0.2831).epsilon(1e-12));
    CHECK(mid.rho == doctest::Approx(5268.0).epsilon(1e-12));
}

TEST_CASE("effective properties stay inside the phase bounds") {
    for (double n : {0.3, 1.0, 4.0}) {
        const MaterialPair pair = MaterialPair::si3n4_sus304(n);
        for (int i = 0; i <= 10; ++i) {
            const PhaseProperties p = effective_properties(pair, i / 10.0, 1.0);
            CHECK(p.E >= pair.metal.E - 1e-3);
            CHECK(p.E <= pair.ceramic.E + 1e-3);
            CHECK(p.nu >= pair.ceramic.nu - 1e-12);
            CHECK(p.nu <= pair.metal.nu + 1e-12);
            CHECK(p.rho >= pair.ceramic.rho - 1e-9);
            CHECK(p.rho <= pair.metal.rho + 1e-9);
        }
    }
}

TEST_CASE("elasticity matrix: nu = 0 decouples the axes") {
    const Eigen::Matrix<double, 6, 6> D = elasticity_matrix_3d(1.0, 0.0);
    Eigen::Matrix<double, 6, 6> expected = Eigen::Matrix<double, 6, 6>::Zero();
    expected.diagonal() << 1.0, 1.0, 1.0, 0.5, 0.5, 0.5;
    CHECK((D - expected).norm() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("elasticity matrix: Lame values at E = 1, nu = 0.25") {
    const Eigen::Matrix<double, 6, 6> D = elasticity_matrix_3d(1.0, 0.25);
    // lambda = 0.4, mu = 0.4: normal block 1.2 / 0.4
    CHECK(D(0, 0) == doctest::Approx(1.2));
    CHECK(D(1, 1) == doctest::Approx(1.2));
    CHECK(D(0, 1) == doctest::Approx(0.4));
    CHECK(D(2, 0) == doctest::Approx(0.4));
    CHECK(D(3, 3) == doctest::Approx(0.4));
    CHECK(D(5, 5) == doctest::Approx(0.4));
}

TEST_CASE("elasticity matrix is symmetric positive definite across nu") {
    for (double nu : {-0.9, -0.3, 0.0, 0.2, 0.3262, 0.49}) {
        const Eigen::Matrix<double, 6, 6> D = elasticity_matrix_3d(2.0e11, nu);
        CHECK((D - D.transpose()).norm() == 0.0);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(D);
        CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
    CHECK_THROWS_AS(elasticity_matrix_3d(1.0, 0.5), DomainError);
    CHECK_THROWS_AS(elasticity_matrix_3d(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(elasticity_matrix_3d(-1.0, 0.3), DomainError);
}

TEST_CASE("D is built from mixed scalars, not mixed entry-wise") {
    const MaterialPair pair = MaterialPair::si3n4_sus304(1.0);
    const PhaseProperties eff = effective_properties(pair, 0.37, 1.0);
    const Eigen::Matrix<double, 6, 6> D_scalar = elasticity_matrix_3d(eff.E, eff.nu);

    // Entry-wise mixing of the two phase matrices differs whenever the
    // Poisson ratios differ; the pipeline must use the scalar path.
    const double vc = volume_fraction_ceramic(0.37, 1.0, 1.0);
    const Eigen::Matrix<double, 6, 6> D_mixed =
        vc * elasticity_matrix_3d(pair.ceramic.E, pair.ceramic.nu) +
        (1.0 - vc) * elasticity_matrix_3d(pair.metal.E, pair.metal.nu);
    CHECK((D_scalar - D_mixed).norm() / D_scalar.norm() > 1e-4);
}
