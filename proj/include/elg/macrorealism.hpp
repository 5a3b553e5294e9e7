#pragma once

#include <optional>
#include <span>
#include <vector>

#include "elg/prob_table.hpp"
#include "elg/spin.hpp"

namespace elg {

/// Prescribed joint distribution of the outcomes at two time indices (0-based).
struct PairConstraint {
    int first;
    int second;
    JointProbTable table;
};

/// A marginal problem: does one arity-n table have every constraint as a marginal?
class MarginalScenario {
public:
    /// Validates index ranges, table arity and spin, and that every time
    /// index's single-time marginal agrees across constraints within 1e-9.
    MarginalScenario(SpinValue spin, int n, std::vector<PairConstraint> constraints);

    [[nodiscard]] const SpinValue& spin() const noexcept { return spin_; }
    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] const std::vector<PairConstraint>& constraints() const noexcept { return constraints_; }

private:
    SpinValue spin_;
    int n_;
    std::vector<PairConstraint> constraints_;
};

inline constexpr double kMarginalConsistencyTolerance = 1e-9;
inline constexpr double kFeasibilityThreshold = 1e-7;

struct FeasibilityLimits {
    int max_n = 4;
    int max_dim = 7;
};

enum class Verdict { Feasible, Infeasible };

struct FeasibilityReport {
    Verdict verdict = Verdict::Infeasible;
    /// Present when feasible.
    std::optional<JointProbTable> witness;
    /// Largest |witness marginal - constraint| entry over all constraints.
    double max_marginal_residual = 0.0;
    /// Minimized total L1 violation of the marginal constraints.
    double certificate_gap = 0.0;
};

/// Solves min sum |marginal(P) - constraint| over normalized P >= 0 with the
/// simplex solver. Infeasible iff the optimum exceeds kFeasibilityThreshold.
/// Throws ErrorCode::SizeLimitExceeded outside `limits`.
FeasibilityReport grand_joint_feasibility(const MarginalScenario& scenario, FeasibilityLimits limits = {});

/// One deterministic hidden-variable state lambda = (q_1, ..., q_n) and its weight.
struct HiddenVariableAtom {
    double weight;
    std::vector<int> outcomes;
};

/// Writes a joint table as a convex mixture of deterministic assignments,
/// one atom per nonzero cell, in storage order.
std::vector<HiddenVariableAtom> hidden_variable_decomposition(const JointProbTable& joint);

/// Inverse of hidden_variable_decomposition.
JointProbTable reconstruct_joint(const SpinValue& spin, int n, std::span<const HiddenVariableAtom> atoms);

/// Rotor pair tables for equidistant measurements: pairs (k, k+1) at the step
/// angle for k = 0..n-2, then (0, n-1) at the total angle.
MarginalScenario rotor_chain_scenario(const SpinValue& spin, int n, double theta_total);

struct ScanRecord {
    double theta;
    double deficit;
    Verdict verdict;
    double certificate_gap;
    double max_marginal_residual;

    /// D_n < -1e-9 yet a grand joint exists: impossible for genuine marginals.
    [[nodiscard]] bool contradicts_necessity() const noexcept {
        return deficit < -1e-9 && verdict == Verdict::Feasible;
    }
};

/// D_n and the LP verdict of rotor_chain_scenario at every theta.
std::vector<ScanRecord> entropic_vs_lp_scan(const SpinValue& spin, int n, std::span<const double> theta_grid,
                                            FeasibilityLimits limits = {}, int workers = 1);

} // namespace elg
