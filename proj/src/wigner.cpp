#include "elg/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace elg {

namespace {

std::vector<double> log_factorials(int up_to) {
    std::vector<double> table(static_cast<std::size_t>(up_to) + 1);
    for (int k = 0; k <= up_to; ++k) {
        table[static_cast<std::size_t>(k)] = std::lgamma(static_cast<double>(k) + 1.0);
    }
    return table;
}

double int_pow(double base, int exponent) {
    double result = 1.0;
    for (int i = 0; i < exponent; ++i) {
        result *= base;
    }
    return result;
}

} // namespace

WignerDMatrix::WignerDMatrix(SpinValue spin, RotationAngle theta, Eigen::MatrixXd entries)
    : spin_(spin), theta_(theta), entries_(std::move(entries)) {}

double WignerDMatrix::element(int twice_m_prime, int twice_m) const {
    return entries_(spin_.index_of(twice_m_prime), spin_.index_of(twice_m));
}

WignerDMatrix wigner_d(const SpinValue& spin, RotationAngle theta) {
    const int two_s = spin.two_s();
    const int dim = spin.dim();
    const auto lf = log_factorials(two_s);
    const double c = std::cos(0.5 * theta.radians());
    const double s = std::sin(0.5 * theta.radians());

    // With j = s, m' = s - row, m = s - col the integer combinations are
    //   j + m' = two_s - row, j - m' = row, j + m = two_s - col, j - m = col.
    Eigen::MatrixXd d(dim, dim);
    for (int row = 0; row < dim; ++row) {
        for (int col = 0; col < dim; ++col) {
            const double log_num = 0.5 * (lf[two_s - row] + lf[row] + lf[two_s - col] + lf[col]);
            const int k_min = std::max(0, row - col);
            const int k_max = std::min(two_s - col, row);
            double sum = 0.0;
            for (int k = k_min; k <= k_max; ++k) {
                const double log_den = lf[two_s - col - k] + lf[k] + lf[row - k] + lf[k + col - row];
                const double magnitude = std::exp(log_num - log_den);
                const double sign = ((k + col - row) % 2 == 0) ? 1.0 : -1.0;
                const int cos_power = two_s - 2 * k + row - col;
                const int sin_power = 2 * k + col - row;
                sum += sign * magnitude * int_pow(c, cos_power) * int_pow(s, sin_power);
            }
            d(row, col) = sum;
        }
    }
    return WignerDMatrix(spin, theta, std::move(d));
}

Eigen::MatrixXcd spin_y_matrix(const SpinValue& spin) {
    const int dim = spin.dim();
    const double j = spin.value();
    Eigen::MatrixXcd sy = Eigen::MatrixXcd::Zero(dim, dim);
    // <m+1| S_+ |m> = sqrt(j(j+1) - m(m+1)), S_y = (S_+ - S_-) / 2i.
    for (int col = 1; col < dim; ++col) {
        const double m = 0.5 * spin.twice_m(col);
        const double ladder = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        sy(col - 1, col) = std::complex<double>(0.0, -0.5 * ladder);
        sy(col, col - 1) = std::complex<double>(0.0, 0.5 * ladder);
    }
    return sy;
}

} // namespace elg
