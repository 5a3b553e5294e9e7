#include "elg/prob_table.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elg/error.hpp"

namespace elg {

namespace {

std::size_t table_size(int dim, int arity) {
    std::size_t n = 1;
    for (int i = 0; i < arity; ++i) {
        n *= static_cast<std::size_t>(dim);
    }
    return n;
}

} // namespace

JointProbTable::JointProbTable(SpinValue spin, int arity, std::vector<double> probs)
    : spin_(spin), arity_(arity), probs_(std::move(probs)) {
    if (arity < 1) {
        throw Error(ErrorCode::UnsupportedArity, "probability table arity must be at least 1");
    }
    const auto expected = table_size(spin_.dim(), arity_);
    if (probs_.size() != expected) {
        throw Error(ErrorCode::InconsistentDimensions,
                    "probability table has " + std::to_string(probs_.size()) + " entries, expected " +
                        std::to_string(expected));
    }
    double total = 0.0;
    for (double& p : probs_) {
        if (!std::isfinite(p) || p < -kClipTolerance) {
            throw Error(ErrorCode::InvalidArgument, "probability table entry out of range");
        }
        if (p < 0.0) {
            p = 0.0;
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kSumTolerance) {
        throw Error(ErrorCode::InvalidArgument, "probability table does not sum to 1");
    }
}

JointProbTable JointProbTable::uniform(const SpinValue& spin, int arity) {
    const auto n = table_size(spin.dim(), arity);
    return JointProbTable(spin, arity, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

std::size_t JointProbTable::flat_index(std::span<const int> index) const {
    if (static_cast<int>(index.size()) != arity_) {
        throw Error(ErrorCode::InconsistentDimensions, "index length does not match table arity");
    }
    std::size_t flat = 0;
    for (int i : index) {
        if (i < 0 || i >= dim()) {
            throw Error(ErrorCode::InvalidArgument, "outcome index out of range");
        }
        flat = flat * static_cast<std::size_t>(dim()) + static_cast<std::size_t>(i);
    }
    return flat;
}

std::vector<int> JointProbTable::unflatten(std::size_t flat) const {
    std::vector<int> index(static_cast<std::size_t>(arity_));
    for (int axis = arity_ - 1; axis >= 0; --axis) {
        index[static_cast<std::size_t>(axis)] = static_cast<int>(flat % static_cast<std::size_t>(dim()));
        flat /= static_cast<std::size_t>(dim());
    }
    return index;
}

JointProbTable JointProbTable::marginal(std::span<const int> keep_axes) const {
    const int kept = static_cast<int>(keep_axes.size());
    if (kept < 1 || kept > arity_) {
        throw Error(ErrorCode::UnsupportedArity, "marginal must keep between 1 and arity axes");
    }
    for (int a : keep_axes) {
        if (a < 0 || a >= arity_ || std::count(keep_axes.begin(), keep_axes.end(), a) != 1) {
            throw Error(ErrorCode::InvalidArgument, "invalid or repeated marginal axis");
        }
    }
    std::vector<double> out(table_size(dim(), kept), 0.0);
    for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
        const auto index = unflatten(flat);
        std::size_t target = 0;
        for (int a : keep_axes) {
            target = target * static_cast<std::size_t>(dim()) + static_cast<std::size_t>(index[static_cast<std::size_t>(a)]);
        }
        out[target] += probs_[flat];
    }
    return JointProbTable(spin_, kept, std::move(out));
}

JointProbTable JointProbTable::transposed() const {
    if (arity_ != 2) {
        throw Error(ErrorCode::UnsupportedArity, "transpose requires an arity-2 table");
    }
    return marginal({1, 0});
}

double JointProbTable::max_abs_difference(const JointProbTable& other) const {
    if (other.spin_ != spin_ || other.arity_ != arity_) {
        throw Error(ErrorCode::InconsistentDimensions, "tables have different shapes");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        worst = std::max(worst, std::abs(probs_[i] - other.probs_[i]));
    }
    return worst;
}

} // namespace elg
