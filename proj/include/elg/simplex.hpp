#pragma once

#include <Eigen/Dense>

namespace elg {

/// minimize c.x  subject to  A x = b,  x >= 0.
struct LinearProgram {
    Eigen::MatrixXd constraints;
    Eigen::VectorXd rhs;
    Eigen::VectorXd cost;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
    LpStatus status = LpStatus::IterationLimit;
    Eigen::VectorXd x;
    double objective = 0.0;
    int iterations = 0;
};

/// Dense two-phase tableau simplex. Dantzig pricing, falling back to
/// Bland's rule once the objective stalls on degenerate pivots.
LpSolution solve_lp(const LinearProgram& lp, int max_iterations = 100000);

} // namespace elg
