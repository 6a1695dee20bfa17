#include "ntnsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace ntnsim {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t absorb(std::uint64_t state, std::uint64_t word) {
    return mix(state ^ mix(word + kGolden));
}

} // namespace

RngStream::RngStream(std::uint64_t seed, StreamTag tag, std::uint64_t entityId, std::uint64_t slot) {
    std::uint64_t s = mix(seed + kGolden);
    s = absorb(s, static_cast<std::uint64_t>(tag));
    s = absorb(s, entityId);
    s = absorb(s, slot);
    base_ = s;
}

std::uint64_t RngStream::next_u64() {
    ++counter_;
    return mix(base_ + counter_ * kGolden);
}

double RngStream::next_u01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_u01();
}

double RngStream::next_normal() {
    // 1 - u keeps the log argument in (0, 1].
    double u1 = 1.0 - next_u01();
    double u2 = next_u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> RngStream::next_cnormal() {
    constexpr double invSqrt2 = 0.70710678118654752440;
    double re = next_normal();
    double im = next_normal();
    return {re * invSqrt2, im * invSqrt2};
}

} // namespace ntnsim
