#include "elg/macrorealism.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elg/entropy.hpp"
#include "elg/error.hpp"
#include "elg/quantum_stats.hpp"
#include "elg/simplex.hpp"
#include "parallel.hpp"

namespace elg {

namespace {

std::size_t int_pow(int base, int exponent) {
    std::size_t r = 1;
    for (int i = 0; i < exponent; ++i) {
        r *= static_cast<std::size_t>(base);
    }
    return r;
}

} // namespace

MarginalScenario::MarginalScenario(SpinValue spin, int n, std::vector<PairConstraint> constraints)
    : spin_(spin), n_(n), constraints_(std::move(constraints)) {
    if (n_ < 2) {
        throw Error(ErrorCode::InvalidArgument, "a marginal scenario needs at least 2 time indices");
    }
    if (constraints_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "a marginal scenario needs at least one constraint");
    }
    std::vector<std::optional<JointProbTable>> singles(static_cast<std::size_t>(n_));
    for (const auto& c : constraints_) {
        if (c.first < 0 || c.first >= n_ || c.second < 0 || c.second >= n_ || c.first == c.second) {
            throw Error(ErrorCode::InvalidArgument, "constraint time indices out of range");
        }
        if (c.table.arity() != 2 || c.table.spin() != spin_) {
            throw Error(ErrorCode::InconsistentDimensions, "constraint tables must be arity-2 tables of the scenario spin");
        }
        for (int axis = 0; axis < 2; ++axis) {
            const int time = axis == 0 ? c.first : c.second;
            auto single = c.table.marginal({axis});
            auto& slot = singles[static_cast<std::size_t>(time)];
            if (!slot) {
                slot = std::move(single);
            } else if (slot->max_abs_difference(single) > kMarginalConsistencyTolerance) {
                throw Error(ErrorCode::InconsistentMarginals,
                            "constraints disagree on the marginal of time index " + std::to_string(time));
            }
        }
    }
}

FeasibilityReport grand_joint_feasibility(const MarginalScenario& scenario, FeasibilityLimits limits) {
    const auto& spin = scenario.spin();
    const int n = scenario.n();
    const int dim = spin.dim();
    if (n > limits.max_n || dim > limits.max_dim) {
        throw Error(ErrorCode::SizeLimitExceeded,
                    "grand joint LP with n = " + std::to_string(n) + ", dim = " + std::to_string(dim) +
                        " exceeds the limit n <= " + std::to_string(limits.max_n) +
                        ", dim <= " + std::to_string(limits.max_dim));
    }

    const auto cells = int_pow(dim, n);
    const auto entries_per_table = static_cast<std::size_t>(dim * dim);
    const auto residual_rows = scenario.constraints().size() * entries_per_table;
    const auto rows = residual_rows + 1;
    const auto vars = cells + 2 * residual_rows;

    // Columns: joint cells, then (u_e, v_e) per constraint entry with
    // marginal_e(P) + u_e - v_e = target_e.
    LinearProgram lp{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(vars)),
                     Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows)),
                     Eigen::VectorXd::Zero(static_cast<Eigen::Index>(vars))};
    const JointProbTable shape = JointProbTable::uniform(spin, n);
    std::size_t row = 0;
    for (const auto& c : scenario.constraints()) {
        for (std::size_t cell = 0; cell < cells; ++cell) {
            const auto q = shape.unflatten(cell);
            const auto entry = static_cast<std::size_t>(q[static_cast<std::size_t>(c.first)] * dim +
                                                        q[static_cast<std::size_t>(c.second)]);
            lp.constraints(static_cast<Eigen::Index>(row + entry), static_cast<Eigen::Index>(cell)) = 1.0;
        }
        for (std::size_t e = 0; e < entries_per_table; ++e) {
            const auto r = static_cast<Eigen::Index>(row + e);
            const auto u = static_cast<Eigen::Index>(cells + 2 * (row + e));
            lp.constraints(r, u) = 1.0;
            lp.constraints(r, u + 1) = -1.0;
            lp.cost(u) = 1.0;
            lp.cost(u + 1) = 1.0;
            lp.rhs(r) = c.table.probs()[e];
        }
        row += entries_per_table;
    }
    lp.constraints.row(static_cast<Eigen::Index>(residual_rows)).head(static_cast<Eigen::Index>(cells)).setOnes();
    lp.rhs(static_cast<Eigen::Index>(residual_rows)) = 1.0;

    const auto solution = solve_lp(lp);
    if (solution.status != LpStatus::Optimal) {
        throw std::runtime_error("grand joint LP did not reach an optimum");
    }

    std::vector<double> joint(cells);
    double total = 0.0;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        joint[cell] = std::max(0.0, solution.x(static_cast<Eigen::Index>(cell)));
        total += joint[cell];
    }
    for (double& p : joint) {
        p /= total;
    }
    JointProbTable candidate(spin, n, std::move(joint));

    FeasibilityReport report;
    report.certificate_gap = std::max(0.0, solution.objective);
    for (const auto& c : scenario.constraints()) {
        report.max_marginal_residual =
            std::max(report.max_marginal_residual, candidate.marginal({c.first, c.second}).max_abs_difference(c.table));
    }
    if (report.certificate_gap <= kFeasibilityThreshold) {
        report.verdict = Verdict::Feasible;
        report.witness = std::move(candidate);
    } else {
        report.verdict = Verdict::Infeasible;
    }
    return report;
}

std::vector<HiddenVariableAtom> hidden_variable_decomposition(const JointProbTable& joint) {
    std::vector<HiddenVariableAtom> atoms;
    const auto probs = joint.probs();
    for (std::size_t cell = 0; cell < probs.size(); ++cell) {
        if (probs[cell] > 0.0) {
            atoms.push_back({probs[cell], joint.unflatten(cell)});
        }
    }
    return atoms;
}

JointProbTable reconstruct_joint(const SpinValue& spin, int n, std::span<const HiddenVariableAtom> atoms) {
    const JointProbTable shape = JointProbTable::uniform(spin, n);
    std::vector<double> probs(shape.size(), 0.0);
    for (const auto& atom : atoms) {
        // Each lambda fixes every outcome: P(q_i | lambda) is a point mass.
        probs[shape.flat_index(atom.outcomes)] += atom.weight;
    }
    return JointProbTable(spin, n, std::move(probs));
}

MarginalScenario rotor_chain_scenario(const SpinValue& spin, int n, double theta_total) {
    const MeasurementSchedule schedule(n, theta_total);
    const auto step_table = rotor_pair_table(spin, RotationAngle(schedule.step()));
    std::vector<PairConstraint> constraints;
    for (int k = 0; k + 1 < n; ++k) {
        constraints.push_back({k, k + 1, step_table});
    }
    constraints.push_back({0, n - 1, rotor_pair_table(spin, RotationAngle(theta_total))});
    return MarginalScenario(spin, n, std::move(constraints));
}

std::vector<ScanRecord> entropic_vs_lp_scan(const SpinValue& spin, int n, std::span<const double> theta_grid,
                                            FeasibilityLimits limits, int workers) {
    if (n > limits.max_n || spin.dim() > limits.max_dim) {
        throw Error(ErrorCode::SizeLimitExceeded,
                    "grand joint LP with n = " + std::to_string(n) + ", dim = " + std::to_string(spin.dim()) +
                        " exceeds the configured limit");
    }
    std::vector<ScanRecord> records(theta_grid.size());
    auto evaluate = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double theta = theta_grid[i];
            const auto report = grand_joint_feasibility(rotor_chain_scenario(spin, n, theta), limits);
            records[i] = {theta, info_deficit(spin, n, RotationAngle(theta)), report.verdict, report.certificate_gap,
                          report.max_marginal_residual};
        }
    };
    detail::parallel_for(theta_grid.size(), workers, evaluate);
    return records;
}

} // namespace elg
