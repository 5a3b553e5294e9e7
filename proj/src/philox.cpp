#include "elg/philox.hpp"

namespace elg {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

} // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

PhiloxStream::PhiloxStream(std::uint64_t seed, std::uint32_t domain) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, domain_(domain) {}

Philox4x32::Counter PhiloxStream::words(std::uint64_t event, std::uint32_t block) const noexcept {
    return Philox4x32::block(
        {static_cast<std::uint32_t>(event), static_cast<std::uint32_t>(event >> 32), block, domain_}, key_);
}

std::array<double, 2> PhiloxStream::uniform_pair(std::uint64_t event, std::uint32_t block) const noexcept {
    const auto w = words(event, block);
    return {to_unit_double(w[0], w[1]), to_unit_double(w[2], w[3])};
}

double to_unit_double(std::uint32_t hi, std::uint32_t lo) noexcept {
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
    return static_cast<double>(bits) * 0x1.0p-53;
}

} // namespace elg
