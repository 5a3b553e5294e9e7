#include "elg/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "elg/error.hpp"

namespace elg {

namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kPivotEps = 1e-11;
constexpr double kPriceEps = 1e-11;
constexpr int kStallLimit = 50;

class TableauSolver {
public:
    TableauSolver(const LinearProgram& lp, int max_iterations)
        : rows_(static_cast<int>(lp.constraints.rows())),
          vars_(static_cast<int>(lp.constraints.cols())),
          max_iterations_(max_iterations),
          t_(Tableau::Zero(rows_ + 1, vars_ + rows_ + 1)),
          basis_(static_cast<std::size_t>(rows_)) {
        for (int i = 0; i < rows_; ++i) {
            const double sign = lp.rhs(i) < 0.0 ? -1.0 : 1.0;
            t_.row(i).head(vars_) = sign * lp.constraints.row(i);
            t_(i, vars_ + i) = 1.0;
            t_(i, rhs_col()) = sign * lp.rhs(i);
            basis_[static_cast<std::size_t>(i)] = vars_ + i;
        }
    }

    LpSolution solve(const Eigen::VectorXd& cost) {
        LpSolution out;

        // Phase 1: minimize the sum of artificials.
        t_.row(rows_).setZero();
        for (int i = 0; i < rows_; ++i) {
            t_.row(rows_).head(vars_) -= t_.row(i).head(vars_);
            t_(rows_, rhs_col()) -= t_(i, rhs_col());
        }
        auto status = iterate(/*allow_artificial=*/true, out.iterations);
        if (status == LpStatus::IterationLimit) {
            out.status = status;
            return out;
        }
        const double scale = std::max(1.0, t_.col(rhs_col()).head(rows_).cwiseAbs().maxCoeff());
        if (-t_(rows_, rhs_col()) > 1e-9 * scale) {
            out.status = LpStatus::Infeasible;
            return out;
        }
        drive_out_artificials();

        // Phase 2.
        t_.row(rows_).setZero();
        t_.row(rows_).head(vars_) = cost.transpose();
        for (int i = 0; i < rows_; ++i) {
            const int b = basis_[static_cast<std::size_t>(i)];
            const double cb = b < vars_ ? cost(b) : 0.0;
            if (cb != 0.0) {
                t_.row(rows_) -= cb * t_.row(i);
            }
        }
        status = iterate(/*allow_artificial=*/false, out.iterations);
        out.status = status;
        if (status != LpStatus::Optimal) {
            return out;
        }
        out.x = Eigen::VectorXd::Zero(vars_);
        for (int i = 0; i < rows_; ++i) {
            const int b = basis_[static_cast<std::size_t>(i)];
            if (b < vars_) {
                out.x(b) = t_(i, rhs_col());
            }
        }
        out.objective = cost.dot(out.x);
        return out;
    }

private:
    [[nodiscard]] int rhs_col() const { return vars_ + rows_; }

    LpStatus iterate(bool allow_artificial, int& iterations) {
        const int columns = allow_artificial ? vars_ + rows_ : vars_;
        bool bland = false;
        int stalled = 0;
        double best = std::numeric_limits<double>::infinity();
        while (true) {
            if (iterations >= max_iterations_) {
                return LpStatus::IterationLimit;
            }
            int entering = -1;
            double most_negative = -kPriceEps;
            for (int j = 0; j < columns; ++j) {
                const double r = t_(rows_, j);
                if (r < most_negative) {
                    entering = j;
                    if (bland) {
                        break;
                    }
                    most_negative = r;
                }
            }
            if (entering < 0) {
                return LpStatus::Optimal;
            }

            int leaving = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < rows_; ++i) {
                const double a = t_(i, entering);
                if (a <= kPivotEps) {
                    continue;
                }
                const double ratio = t_(i, rhs_col()) / a;
                if (leaving < 0 || ratio < best_ratio - 1e-12 ||
                    (ratio <= best_ratio + 1e-12 &&
                     basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leaving)])) {
                    leaving = i;
                    best_ratio = std::min(best_ratio, ratio);
                }
            }
            if (leaving < 0) {
                return LpStatus::Unbounded;
            }
            pivot(leaving, entering);
            ++iterations;

            const double objective = -t_(rows_, rhs_col());
            if (objective < best - 1e-12) {
                best = objective;
                stalled = 0;
            } else if (++stalled > kStallLimit) {
                bland = true;
            }
        }
    }

    void drive_out_artificials() {
        for (int i = 0; i < rows_; ++i) {
            if (basis_[static_cast<std::size_t>(i)] < vars_) {
                continue;
            }
            for (int j = 0; j < vars_; ++j) {
                if (std::abs(t_(i, j)) > 1e-9) {
                    pivot(i, j);
                    break;
                }
            }
            // A row with no structural entry is redundant; its artificial stays basic at zero.
        }
    }

    void pivot(int row, int col) {
        t_.row(row) /= t_(row, col);
        for (int i = 0; i <= rows_; ++i) {
            if (i == row) {
                continue;
            }
            const double factor = t_(i, col);
            if (factor != 0.0) {
                t_.row(i) -= factor * t_.row(row);
                t_(i, col) = 0.0;
            }
        }
        basis_[static_cast<std::size_t>(row)] = col;
    }

    int rows_;
    int vars_;
    int max_iterations_;
    Tableau t_;
    std::vector<int> basis_;
};

} // namespace

LpSolution solve_lp(const LinearProgram& lp, int max_iterations) {
    if (lp.rhs.size() != lp.constraints.rows() || lp.cost.size() != lp.constraints.cols()) {
        throw Error(ErrorCode::InconsistentDimensions, "linear program dimensions do not match");
    }
    TableauSolver solver(lp, max_iterations);
    return solver.solve(lp.cost);
}

} // namespace elg
