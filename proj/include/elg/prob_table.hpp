#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "elg/spin.hpp"

namespace elg {

/// Dense probability table over `arity` outcome indices of one spin.
///
/// Storage is row-major: the last index varies fastest. Entries in
/// [-1e-14, 0) are clipped to zero on construction; anything more negative,
/// or a total that misses 1 by more than 1e-12, is rejected.
class JointProbTable {
public:
    static constexpr double kClipTolerance = 1e-14;
    static constexpr double kSumTolerance = 1e-12;

    JointProbTable(SpinValue spin, int arity, std::vector<double> probs);

    static JointProbTable uniform(const SpinValue& spin, int arity);

    [[nodiscard]] const SpinValue& spin() const noexcept { return spin_; }
    [[nodiscard]] int arity() const noexcept { return arity_; }
    [[nodiscard]] int dim() const noexcept { return spin_.dim(); }
    [[nodiscard]] std::size_t size() const noexcept { return probs_.size(); }
    [[nodiscard]] std::span<const double> probs() const noexcept { return probs_; }

    [[nodiscard]] double at(std::span<const int> index) const { return probs_[flat_index(index)]; }
    [[nodiscard]] double at(std::initializer_list<int> index) const {
        return at(std::span<const int>(index.begin(), index.size()));
    }

    [[nodiscard]] std::size_t flat_index(std::span<const int> index) const;
    /// Inverse of flat_index.
    [[nodiscard]] std::vector<int> unflatten(std::size_t flat) const;

    /// Marginal over the kept axes, in the order given.
    [[nodiscard]] JointProbTable marginal(std::span<const int> keep_axes) const;
    [[nodiscard]] JointProbTable marginal(std::initializer_list<int> keep_axes) const {
        return marginal(std::span<const int>(keep_axes.begin(), keep_axes.size()));
    }

    /// Swaps the two axes of an arity-2 table.
    [[nodiscard]] JointProbTable transposed() const;

    /// Largest absolute entrywise difference; tables must have equal shape.
    [[nodiscard]] double max_abs_difference(const JointProbTable& other) const;

private:
    SpinValue spin_;
    int arity_;
    std::vector<double> probs_;
};

} // namespace elg
