#pragma once

#include <string>
#include <string_view>

namespace elg {

/// Spin quantum number s stored exactly as the integer 2s.
///
/// Outcome indices run 0..dim-1 and map to m = +s, s-1, ..., -s. Every
/// matrix and probability table in the library uses this ordering.
class SpinValue {
public:
    /// Throws ErrorCode::InvalidSpin unless two_s >= 1.
    explicit SpinValue(int two_s);

    /// Parses "1/2", "1", "3/2", ... Decimal strings are rejected.
    static SpinValue parse(std::string_view text);

    [[nodiscard]] int two_s() const noexcept { return two_s_; }
    [[nodiscard]] int dim() const noexcept { return two_s_ + 1; }
    [[nodiscard]] double value() const noexcept { return 0.5 * two_s_; }

    /// 2m for outcome index `index`.
    [[nodiscard]] int twice_m(int index) const noexcept { return two_s_ - 2 * index; }
    /// Index of the outcome with the given 2m; throws if 2m is out of range or has the wrong parity.
    [[nodiscard]] int index_of(int twice_m) const;
    /// Index of -m for the outcome at `index`.
    [[nodiscard]] int mirror(int index) const noexcept { return two_s_ - index; }

    [[nodiscard]] std::string label() const;

    friend bool operator==(const SpinValue&, const SpinValue&) = default;

private:
    int two_s_;
};

/// Formats 2m as "3/2", "-1", "0", ...
std::string half_integer_label(int twice_value);

/// Rotation angle in radians. Any finite value is accepted; no range reduction.
class RotationAngle {
public:
    explicit RotationAngle(double radians);

    [[nodiscard]] double radians() const noexcept { return radians_; }

private:
    double radians_;
};

} // namespace elg
