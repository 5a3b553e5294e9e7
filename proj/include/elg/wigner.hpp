#pragma once

#include <Eigen/Dense>

#include "elg/spin.hpp"

namespace elg {

/// Small-d rotation matrix d^s_{m'm}(theta) = <s,m'| exp(-i theta S_y) |s,m>.
///
/// Row index i holds m' = s - i and column index k holds m = s - k, so the
/// (0, 0) entry pairs m' = m = +s.
class WignerDMatrix {
public:
    WignerDMatrix(SpinValue spin, RotationAngle theta, Eigen::MatrixXd entries);

    [[nodiscard]] const SpinValue& spin() const noexcept { return spin_; }
    [[nodiscard]] const RotationAngle& theta() const noexcept { return theta_; }
    [[nodiscard]] const Eigen::MatrixXd& entries() const noexcept { return entries_; }
    [[nodiscard]] int dim() const noexcept { return spin_.dim(); }

    /// Entry by (row, column) index.
    [[nodiscard]] double operator()(int row, int col) const { return entries_(row, col); }
    /// Entry addressed by quantum numbers, given as 2m' and 2m.
    [[nodiscard]] double element(int twice_m_prime, int twice_m) const;

private:
    SpinValue spin_;
    RotationAngle theta_;
    Eigen::MatrixXd entries_;
};

/// Evaluates the explicit Wigner sum with log-factorial prefactors.
WignerDMatrix wigner_d(const SpinValue& spin, RotationAngle theta);

/// S_y in units of hbar, same row/column ordering as WignerDMatrix.
Eigen::MatrixXcd spin_y_matrix(const SpinValue& spin);

} // namespace elg
