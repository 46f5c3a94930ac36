#include "cmcx/rng.hpp"

namespace cmcx {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RngStream::next_u64() noexcept {
    ++counter_;
    return mix64(seed_ + kGolden * counter_);
}

double RngStream::next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint32_t RngStream::next_below(std::uint32_t n) noexcept {
    // Lemire's multiply-shift; bias is below 2^-32 and irrelevant here.
    const auto x = next_u64();
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(x) * n) >> 64);
}

RngStream RngStream::child(std::uint64_t key) const noexcept {
    // Child seeds live in a domain separate from the draw path.
    const std::uint64_t a = mix64(seed_ ^ 0xD1B54A32D192ED03ull);
    const std::uint64_t b = mix64(key ^ 0x8CB92BA72F3D8DD7ull);
    return RngStream(mix64(a + kGolden * b));
}

}  // namespace cmcx
