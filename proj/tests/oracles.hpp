#pragma once

// Test-only reference computations. Nothing here calls the Wigner sum or the
// entropy module, so agreement with the library is a genuine cross-check.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "elg/spin.hpp"
#include "elg/wigner.hpp"

namespace oracle {

/// exp(-i theta S_y) through the eigendecomposition of the Hermitian S_y.
inline Eigen::MatrixXcd rotation_by_expm(const elg::SpinValue& spin, double theta) {
    const Eigen::MatrixXcd sy = elg::spin_y_matrix(spin);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sy);
    const Eigen::VectorXd lambda = eig.eigenvalues();
    Eigen::VectorXcd phases(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        phases(i) = std::exp(std::complex<double>(0.0, -theta * lambda(i)));
    }
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

/// Binary entropy in bits.
inline double h2(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

/// Spin-1/2 two-time conditional entropy: the outcome flips with probability sin^2(theta/2).
inline double spin_half_pair_entropy(double theta) {
    const double c = std::cos(theta / 2);
    return h2(c * c);
}

/// Random probability vector (exponential spacings), optionally with exact zeros.
inline std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t size, double zero_fraction = 0.0) {
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(size);
    double total = 0.0;
    for (auto& x : p) {
        x = u(rng) < zero_fraction ? 0.0 : expo(rng);
        total += x;
    }
    if (total == 0.0) {
        p[0] = total = 1.0;
    }
    for (auto& x : p) x /= total;
    return p;
}

} // namespace oracle
