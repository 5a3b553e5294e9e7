#pragma once

#include <array>
#include <cstdint>

namespace elg {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// Output depends only on (key, counter), so any event can be generated
/// independently of every other event. That makes sharded sampling produce
/// the same numbers as a sequential run.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter counter, Key key) noexcept;
};

/// Stream of uniforms addressed by (event, block), keyed by a 64-bit seed and
/// a 32-bit domain tag that separates independent uses of the same seed.
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint32_t domain) noexcept;

    /// Four raw 32-bit words for (event, block).
    [[nodiscard]] Philox4x32::Counter words(std::uint64_t event, std::uint32_t block) const noexcept;

    /// Two 53-bit uniforms in [0, 1) for (event, block).
    [[nodiscard]] std::array<double, 2> uniform_pair(std::uint64_t event, std::uint32_t block) const noexcept;

private:
    Philox4x32::Key key_;
    std::uint32_t domain_;
};

/// Maps two 32-bit words to a double in [0, 1) with 53 random bits.
double to_unit_double(std::uint32_t hi, std::uint32_t lo) noexcept;

} // namespace elg
