#include "elg/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "elg/error.hpp"
#include "parallel.hpp"
#include "elg/wigner.hpp"

namespace elg {

namespace {

double plogp_sum(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

void require_pair(const JointProbTable& table) {
    if (table.arity() != 2) {
        throw Error(ErrorCode::UnsupportedArity, "conditional entropy requires an arity-2 table");
    }
}

bool violated(double deficit) { return deficit < -kViolationTolerance; }

// Bisects between a violated and a non-violated theta.
double refine_boundary(const SpinValue& spin, int n, double inside, double outside) {
    while (std::abs(outside - inside) > kBoundaryTolerance) {
        const double mid = 0.5 * (inside + outside);
        if (violated(info_deficit(spin, n, RotationAngle(mid)))) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    return 0.5 * (inside + outside);
}

} // namespace

double EntropyValue::normalized(const SpinValue& spin) const { return bits / std::log2(spin.dim()); }

EntropyValue shannon_entropy(const JointProbTable& table) { return {plogp_sum(table.probs())}; }

EntropyValue conditional_entropy(const JointProbTable& pair) {
    require_pair(pair);
    const double joint = shannon_entropy(pair).bits;
    const double first = shannon_entropy(pair.marginal({0})).bits;
    return {std::max(0.0, joint - first)};
}

EntropyValue pair_entropy_theta(const SpinValue& spin, RotationAngle theta) {
    const auto d = wigner_d(spin, theta);
    double h = 0.0;
    for (int row = 0; row < spin.dim(); ++row) {
        for (int col = 0; col < spin.dim(); ++col) {
            const double p = d(row, col) * d(row, col);
            if (p > 0.0) {
                h -= p * std::log2(p);
            }
        }
    }
    return {h / spin.dim()};
}

double info_deficit(const SpinValue& spin, int n, RotationAngle theta) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidArgument, "information deficit needs n >= 2 (got " + std::to_string(n) + ")");
    }
    const double steps = static_cast<double>(n - 1);
    const double step_entropy = pair_entropy_theta(spin, RotationAngle(theta.radians() / steps)).bits;
    const double total_entropy = pair_entropy_theta(spin, theta).bits;
    return (steps * step_entropy - total_entropy) / std::log2(spin.dim());
}

double DeficitCurve::violated_measure() const {
    double total = 0.0;
    for (const auto& r : violation_ranges) {
        total += r.width();
    }
    return total;
}

ThetaInterval default_curve_range(int n) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidArgument, "information deficit needs n >= 2 (got " + std::to_string(n) + ")");
    }
    return {0.0, (n - 1) * std::numbers::pi};
}

DeficitCurve deficit_curve(const SpinValue& spin, int n, double theta_min, double theta_max, int steps,
                           int workers) {
    if (steps < 2) {
        throw Error(ErrorCode::InvalidArgument, "deficit curve needs at least 2 grid points");
    }
    if (!std::isfinite(theta_min) || !std::isfinite(theta_max) || !(theta_min < theta_max)) {
        throw Error(ErrorCode::InvalidArgument, "deficit curve needs theta_min < theta_max");
    }
    if (n < 2) {
        throw Error(ErrorCode::InvalidArgument, "information deficit needs n >= 2 (got " + std::to_string(n) + ")");
    }

    DeficitCurve curve{spin, n, {}, {}, {}, {}};
    const auto count = static_cast<std::size_t>(steps);
    curve.theta_grid.resize(count);
    curve.deficits.resize(count);
    const double width = theta_max - theta_min;
    for (std::size_t i = 0; i < count; ++i) {
        curve.theta_grid[i] = theta_min + width * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    curve.theta_grid.back() = theta_max;

    auto evaluate = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            curve.deficits[i] = info_deficit(spin, n, RotationAngle(curve.theta_grid[i]));
        }
    };
    detail::parallel_for(count, workers, evaluate);

    std::size_t arg_min = 0;
    for (std::size_t i = 1; i < count; ++i) {
        if (curve.deficits[i] < curve.deficits[arg_min]) {
            arg_min = i;
        }
    }
    curve.min_deficit = {curve.theta_grid[arg_min], curve.deficits[arg_min]};

    std::size_t i = 0;
    while (i < count) {
        if (!violated(curve.deficits[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < count && violated(curve.deficits[j + 1])) {
            ++j;
        }
        ThetaInterval range{curve.theta_grid[i], curve.theta_grid[j]};
        if (i > 0) {
            range.lo = refine_boundary(spin, n, curve.theta_grid[i], curve.theta_grid[i - 1]);
        }
        if (j + 1 < count) {
            range.hi = refine_boundary(spin, n, curve.theta_grid[j], curve.theta_grid[j + 1]);
        }
        curve.violation_ranges.push_back(range);
        i = j + 1;
    }
    return curve;
}

double chain_inequality_slack(std::span<const JointProbTable> pairs) {
    if (pairs.size() < 2) {
        throw Error(ErrorCode::InconsistentDimensions,
                    "chain inequality needs the consecutive tables plus the closing (Q_1, Q_n) table");
    }
    const auto& spin = pairs.front().spin();
    for (const auto& t : pairs) {
        require_pair(t);
        if (t.spin() != spin) {
            throw Error(ErrorCode::InconsistentDimensions, "chain inequality tables have different spins");
        }
    }
    double rhs = 0.0;
    for (std::size_t k = 0; k + 1 < pairs.size(); ++k) {
        rhs += conditional_entropy(pairs[k]).bits;
    }
    return rhs - conditional_entropy(pairs.back()).bits;
}

double bc_four_term(const JointProbTable& b_aprime, const JointProbTable& aprime_bprime,
                    const JointProbTable& bprime_a, const JointProbTable& b_a) {
    for (const auto* t : {&b_aprime, &aprime_bprime, &bprime_a, &b_a}) {
        require_pair(*t);
        if (t->spin() != b_a.spin()) {
            throw Error(ErrorCode::InconsistentDimensions, "BC tables have different spins");
        }
    }
    return conditional_entropy(b_aprime).bits + conditional_entropy(aprime_bprime).bits +
           conditional_entropy(bprime_a).bits - conditional_entropy(b_a).bits;
}

double zeno_limit_gap(const SpinValue& spin, RotationAngle theta, int n) {
    const double limit = -pair_entropy_theta(spin, theta).normalized(spin);
    return std::abs(info_deficit(spin, n, theta) - limit);
}

} // namespace elg
