#pragma once

#include <cstdint>
#include <random>

namespace wsnsim {

/// Seeded 64-bit Mersenne Twister. Uniform draws are built from the raw 53
/// high bits so the stream is identical across standard library vendors.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace wsnsim
