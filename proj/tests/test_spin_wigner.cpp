#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "elg/error.hpp"
#include "elg/wigner.hpp"
#include "oracles.hpp"

using namespace elg;

TEST_CASE("spin parsing is exact") {
    CHECK(SpinValue::parse("1/2").two_s() == 1);
    CHECK(SpinValue::parse("3/2").two_s() == 3);
    CHECK(SpinValue::parse("2").two_s() == 4);
    CHECK(SpinValue::parse("4/2").two_s() == 4);
    CHECK(SpinValue::parse("3/2").dim() == 4);
    CHECK(SpinValue::parse("3/2").label() == "3/2");
    CHECK(SpinValue(4).label() == "2");

    for (const char* bad : {"0", "0.5", "1/3", "-1/2", "", "x", "1/", "3/2x"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(SpinValue::parse(bad), Error);
    }
    try {
        SpinValue(0);
        FAIL("two_s = 0 accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidSpin);
    }
}

TEST_CASE("outcome labels run from +s down to -s") {
    const SpinValue s(3);
    CHECK(s.twice_m(0) == 3);
    CHECK(s.twice_m(3) == -3);
    CHECK(s.index_of(-1) == 2);
    CHECK(s.mirror(0) == 3);
    CHECK_THROWS_AS((void)s.index_of(2), Error);
    CHECK_THROWS_AS((void)s.index_of(5), Error);
    CHECK(half_integer_label(-3) == "-3/2");
    CHECK(half_integer_label(-2) == "-1");
    CHECK_THROWS_AS(RotationAngle(std::nan("")), Error);
}

TEST_CASE("spin-1/2 d matrix has the closed form") {
    const SpinValue half(1);
    for (double theta : {0.0, 0.3, 1.7, std::numbers::pi, 5.0, -2.2, 11.0}) {
        CAPTURE(theta);
        const auto d = wigner_d(half, RotationAngle(theta));
        const double c = std::cos(theta / 2);
        const double s = std::sin(theta / 2);
        CHECK(d(0, 0) == doctest::Approx(c).epsilon(1e-14));
        CHECK(d(0, 1) == doctest::Approx(-s).epsilon(1e-14));
        CHECK(d(1, 0) == doctest::Approx(s).epsilon(1e-14));
        CHECK(d(1, 1) == doctest::Approx(c).epsilon(1e-14));
        CHECK(d.element(1, -1) == d(0, 1));
    }
}

TEST_CASE("zero rotation is the identity") {
    for (int two_s = 1; two_s <= 12; ++two_s) {
        const auto d = wigner_d(SpinValue(two_s), RotationAngle(0.0));
        CHECK(d.entries().isIdentity(1e-14));
    }
}

TEST_CASE("d^1_00 is cos(theta), also via the matrix exponential") {
    const SpinValue one(2);
    for (double theta : {0.1, 1.0, 2.5, std::numbers::pi, 5.9}) {
        const auto d = wigner_d(one, RotationAngle(theta));
        const auto expm = oracle::rotation_by_expm(one, theta);
        CHECK(std::abs(d(1, 1) - std::cos(theta)) < 1e-14);
        CHECK(std::abs(expm(1, 1).real() - std::cos(theta)) < 1e-12);
    }
}

TEST_CASE("d agrees with the exponential of S_y for s <= 4") {
    for (int two_s = 1; two_s <= 8; ++two_s) {
        const SpinValue spin(two_s);
        for (double theta : {0.0, 0.1, 1.0, 2.5, std::numbers::pi, 5.9}) {
            CAPTURE(two_s);
            CAPTURE(theta);
            const auto d = wigner_d(spin, RotationAngle(theta));
            const auto expm = oracle::rotation_by_expm(spin, theta);
            CHECK(expm.imag().cwiseAbs().maxCoeff() < 1e-12);
            CHECK((d.entries() - expm.real()).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("unitarity, symmetry and group composition") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(0.0, 4 * std::numbers::pi);
    for (int two_s = 1; two_s <= 12; ++two_s) {
        const SpinValue spin(two_s);
        const int dim = spin.dim();
        for (int trial = 0; trial < 50; ++trial) {
            const double theta = angle(rng);
            const auto d = wigner_d(spin, RotationAngle(theta));
            CAPTURE(two_s);
            CAPTURE(theta);
            const Eigen::VectorXd column_norms = d.entries().colwise().squaredNorm();
            CHECK((column_norms.array() - 1.0).abs().maxCoeff() < 1e-12);

            for (int r = 0; r < dim; ++r) {
                for (int c = 0; c < dim; ++c) {
                    // d_{m'm} = (-1)^{m'-m} d_{mm'} = d_{-m,-m'}
                    const int m_prime_minus_m = (spin.twice_m(r) - spin.twice_m(c)) / 2;
                    const double sign = (m_prime_minus_m % 2 == 0) ? 1.0 : -1.0;
                    CHECK(std::abs(d(r, c) - sign * d(c, r)) < 1e-12);
                    CHECK(std::abs(d(r, c) - d(spin.mirror(c), spin.mirror(r))) < 1e-12);
                }
            }
        }
        for (int trial = 0; trial < 5; ++trial) {
            const double a = angle(rng);
            const double b = angle(rng);
            const Eigen::MatrixXd lhs = wigner_d(spin, RotationAngle(a)).entries() * wigner_d(spin, RotationAngle(b)).entries();
            CHECK((lhs - wigner_d(spin, RotationAngle(a + b)).entries()).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("S_y matrix") {
    const auto half = spin_y_matrix(SpinValue(1));
    CHECK(half(0, 0) == std::complex<double>(0, 0));
    CHECK(half(0, 1) == std::complex<double>(0, -0.5));
    CHECK(half(1, 0) == std::complex<double>(0, 0.5));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(spin_y_matrix(SpinValue(2)));
    CHECK(eig.eigenvalues()(0) == doctest::Approx(-1.0));
    CHECK(std::abs(eig.eigenvalues()(1)) < 1e-12);
    CHECK(eig.eigenvalues()(2) == doctest::Approx(1.0));

    for (int two_s = 1; two_s <= 10; ++two_s) {
        const auto sy = spin_y_matrix(SpinValue(two_s));
        CHECK(std::abs(sy.trace()) < 1e-15);
        CHECK((sy - sy.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
}
