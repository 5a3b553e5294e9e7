#pragma once

#include <span>
#include <vector>

#include "elg/prob_table.hpp"
#include "elg/spin.hpp"

namespace elg {

/// Shannon entropy in bits.
struct EntropyValue {
    double bits = 0.0;

    /// Entropy in units of log2(2s+1) bits, i.e. with logarithms taken to base 2s+1.
    [[nodiscard]] double normalized(const SpinValue& spin) const;
};

/// -sum p log2 p with 0 log 0 = 0.
EntropyValue shannon_entropy(const JointProbTable& table);

/// H(axis 1 | axis 0) = H(joint) - H(axis 0 marginal). Rejects arity != 2.
EntropyValue conditional_entropy(const JointProbTable& pair);

/// H[theta] = -(1/(2s+1)) sum |d_{m'm}(theta)|^2 log2 |d_{m'm}(theta)|^2,
/// the conditional entropy of the rotor pair table at angle theta.
EntropyValue pair_entropy_theta(const SpinValue& spin, RotationAngle theta);

/// D_n(theta) = ((n-1) H[theta/(n-1)] - H[theta]) / log2(2s+1).
/// Negative values violate the n-term entropic chain inequality. Rejects n < 2.
double info_deficit(const SpinValue& spin, int n, RotationAngle theta);

struct ThetaInterval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double width() const noexcept { return hi - lo; }
};

struct DeficitPoint {
    double theta = 0.0;
    double deficit = 0.0;
};

/// Sampled D_n over an ascending theta grid.
struct DeficitCurve {
    SpinValue spin;
    int n;
    std::vector<double> theta_grid;
    std::vector<double> deficits;
    /// Maximal runs of violated samples, endpoints refined by bisection.
    std::vector<ThetaInterval> violation_ranges;
    DeficitPoint min_deficit;

    /// Total width of all violation ranges.
    [[nodiscard]] double violated_measure() const;
};

/// Samples below -kViolationTolerance count as violations, so rounding dust
/// around an exact zero (theta = 0, n = 2) never opens a spurious range.
inline constexpr double kViolationTolerance = 1e-12;
inline constexpr double kBoundaryTolerance = 1e-6;

/// Total-angle range [0, (n-1) pi]: the per-step angle always spans [0, pi],
/// so n = 3 gives [0, 2 pi] and curves for different n cover matching steps.
ThetaInterval default_curve_range(int n);

/// `steps` evenly spaced points over [theta_min, theta_max] inclusive.
/// Requires steps >= 2 and theta_min < theta_max. Grid evaluation is split
/// across `workers` threads; the result does not depend on the worker count.
DeficitCurve deficit_curve(const SpinValue& spin, int n, double theta_min, double theta_max, int steps,
                           int workers = 1);

/// Sum_k H(Q_{k+1}|Q_k) - H(Q_n|Q_1) in bits. `pairs` lists the n-1
/// consecutive tables (Q_1,Q_2), ..., (Q_{n-1},Q_n) followed by (Q_1,Q_n).
/// Negative slack is a violation.
double chain_inequality_slack(std::span<const JointProbTable> pairs);

/// H(A'|B) + H(B'|A') + H(A|B') - H(A|B) in bits, each table ordered
/// (conditioning variable, target variable).
double bc_four_term(const JointProbTable& b_aprime, const JointProbTable& aprime_bprime,
                    const JointProbTable& bprime_a, const JointProbTable& b_a);

/// |D_n(theta) + H[theta] / log2(2s+1)|, the distance from the many-measurement limit.
double zeno_limit_gap(const SpinValue& spin, RotationAngle theta, int n);

} // namespace elg
