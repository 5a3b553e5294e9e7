#pragma once

#include "elg/prob_table.hpp"
#include "elg/spin.hpp"

namespace elg {

/// n equidistant measurements spanning a total rotation angle theta_total.
class MeasurementSchedule {
public:
    /// Requires n >= 2 and a finite total angle.
    MeasurementSchedule(int n, double theta_total);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] double theta_total() const noexcept { return theta_total_; }
    /// Rotation angle between consecutive measurements, theta_total / (n - 1).
    [[nodiscard]] double step() const noexcept { return theta_total_ / (n_ - 1); }

private:
    int n_;
    double theta_total_;
};

// All tables below assume the rotor starts in the maximally mixed state I/(2s+1).

/// P(m_k, m_l) = |d^s_{m_l m_k}(theta)|^2 / (2s+1). Axis 0 is the earlier time.
JointProbTable rotor_pair_table(const SpinValue& spin, RotationAngle theta);

/// Three sequential projective S_z measurements separated by the schedule step:
/// P(q1,q2,q3) = |d_{q2 q1}|^2 |d_{q3 q2}|^2 / (2s+1). Rejects n != 3.
JointProbTable rotor_sequential_joint(const SpinValue& spin, const MeasurementSchedule& schedule);

/// Spin-singlet pair probabilities P(m_a, m_b) = |d^s_{m_a,-m_b}(theta_ab)|^2 / (2s+1).
JointProbTable singlet_pair_table(const SpinValue& spin, RotationAngle theta_ab);

/// Relabels the second outcome m_b -> -m_b. Involution; rejects arity != 2.
JointProbTable relabel_antipodal(const JointProbTable& table);

} // namespace elg
