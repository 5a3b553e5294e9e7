#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "elg/prob_table.hpp"
#include "elg/quantum_stats.hpp"
#include "elg/spin.hpp"

namespace elg {

/// Outcomes of one run of sequential S_z measurements, stored as 2m.
struct Trajectory {
    std::vector<int> twice_m;
    std::uint64_t seed = 0;
    std::uint64_t shot = 0;
};

/// Outcome counts over tuples of outcome indices (same layout as JointProbTable).
class EmpiricalTable {
public:
    EmpiricalTable(SpinValue spin, int arity, std::vector<std::uint64_t> counts);

    [[nodiscard]] const SpinValue& spin() const noexcept { return spin_; }
    [[nodiscard]] int arity() const noexcept { return arity_; }
    [[nodiscard]] std::uint64_t shots() const noexcept { return shots_; }
    [[nodiscard]] std::span<const std::uint64_t> counts() const noexcept { return counts_; }

    /// Plug-in probabilities counts / shots.
    [[nodiscard]] JointProbTable probabilities() const;
    [[nodiscard]] EmpiricalTable marginal(std::initializer_list<int> keep_axes) const;

    friend bool operator==(const EmpiricalTable&, const EmpiricalTable&) = default;

private:
    SpinValue spin_;
    int arity_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t shots_;
};

inline constexpr int kMaxSampledMeasurements = 3;

/// Samples shot `shot` of the sequential Born-rule chain: the first outcome
/// is uniform (maximally mixed state), each later outcome is drawn from
/// |d_{m_next, m_prev}(step)|^2. A pure function of (seed, shot).
Trajectory sample_trajectory(const SpinValue& spin, const MeasurementSchedule& schedule, std::uint64_t seed,
                             std::uint64_t shot);

/// Histogram of shots 0..shots-1. Shards across `workers` threads; counts are
/// identical for every worker count. Requires shots >= 1 and n <= 3.
EmpiricalTable sample_trajectories(const SpinValue& spin, const MeasurementSchedule& schedule, std::uint64_t shots,
                                   std::uint64_t seed, int workers = 1);

/// Plug-in H(axis 1 | axis 0) in bits from pair counts, optionally with the
/// Miller-Madow correction (K - 1) / (2 N ln 2) applied to each entropy.
double empirical_conditional_entropy(const EmpiricalTable& pair, bool miller_madow = false);

struct DeficitEstimate {
    double value = 0.0;
    double standard_error = 0.0;
};

struct EstimatorOptions {
    int n = 3;
    int bootstrap_resamples = 200;
    std::uint64_t bootstrap_seed = 0;
    bool miller_madow = false;
    int workers = 1;
};

/// D_n from two independent two-time experiments, one at the step angle and
/// one at the total angle, with a nonparametric bootstrap standard error.
/// Throws ErrorCode::DegenerateTable if an earlier-time outcome was never seen.
DeficitEstimate empirical_deficit(const EmpiricalTable& step_pair, const EmpiricalTable& total_pair,
                                  const EstimatorOptions& options = {});

} // namespace elg
