#include "elg/spin.hpp"

#include <charconv>
#include <cmath>

#include "elg/error.hpp"

namespace elg {

namespace {

bool parse_int(std::string_view text, int& out) {
    if (text.empty()) {
        return false;
    }
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

} // namespace

SpinValue::SpinValue(int two_s) : two_s_(two_s) {
    if (two_s < 1) {
        throw Error(ErrorCode::InvalidSpin,
                    "spin must be at least 1/2 (got 2s = " + std::to_string(two_s) + ")");
    }
}

SpinValue SpinValue::parse(std::string_view text) {
    const auto slash = text.find('/');
    int numerator = 0;
    if (slash == std::string_view::npos) {
        if (!parse_int(text, numerator)) {
            throw Error(ErrorCode::InvalidSpin, "cannot parse spin '" + std::string(text) + "'");
        }
        return SpinValue(2 * numerator);
    }
    int denominator = 0;
    if (!parse_int(text.substr(0, slash), numerator) || !parse_int(text.substr(slash + 1), denominator)) {
        throw Error(ErrorCode::InvalidSpin, "cannot parse spin '" + std::string(text) + "'");
    }
    if (denominator == 1) {
        return SpinValue(2 * numerator);
    }
    if (denominator != 2) {
        throw Error(ErrorCode::InvalidSpin, "spin '" + std::string(text) + "' is not a multiple of 1/2");
    }
    return SpinValue(numerator);
}

int SpinValue::index_of(int twice_m) const {
    if (twice_m > two_s_ || twice_m < -two_s_ || ((two_s_ - twice_m) % 2) != 0) {
        throw Error(ErrorCode::InvalidArgument,
                    "m = " + half_integer_label(twice_m) + " is not an outcome of spin " + label());
    }
    return (two_s_ - twice_m) / 2;
}

std::string SpinValue::label() const { return half_integer_label(two_s_); }

std::string half_integer_label(int twice_value) {
    if (twice_value % 2 == 0) {
        return std::to_string(twice_value / 2);
    }
    return std::to_string(twice_value) + "/2";
}

RotationAngle::RotationAngle(double radians) : radians_(radians) {
    if (!std::isfinite(radians)) {
        throw Error(ErrorCode::InvalidArgument, "rotation angle must be finite");
    }
}

} // namespace elg
