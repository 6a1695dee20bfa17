#pragma once

#include <complex>
#include <cstdint>

namespace ntnsim {

// Purpose labels keeping independent random streams apart.
enum class StreamTag : std::uint64_t {
    UserInit = 1,
    Accel = 2,
    Shadow = 3,
    Fading = 4,
    KMeans = 5,
    TnFailure = 6,
    SensingNoise = 7,
    Generic = 8,
};

// Counter-based stream keyed by (seed, tag, entityId, slot). Draws are a pure
// function of the key and the draw index, so results never depend on the
// order in which entities are evaluated.
class RngStream {
public:
    RngStream(std::uint64_t seed, StreamTag tag, std::uint64_t entityId, std::uint64_t slot);

    std::uint64_t next_u64();

    // Uniform in [0, 1).
    double next_u01();

    // Uniform in [lo, hi).
    double next_uniform(double lo, double hi);

    // Standard normal via Box-Muller; two u64 draws per call, no caching.
    double next_normal();

    // Circularly symmetric complex normal with unit variance (E|z|^2 = 1).
    std::complex<double> next_cnormal();

private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

} // namespace ntnsim
