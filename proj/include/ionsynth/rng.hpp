#pragma once

#include <cstdint>

namespace ionsynth {

/// Deterministic random stream: identical (seed, stream) pairs produce
/// identical sequences on every platform. The exact algorithm (splitmix64
/// steps from a mixed initial state, Box-Muller for gaussians) is pinned in
/// FORMATS.md so persisted experiments stay reproducible.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double uniform();

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);

    /// Standard normal via the trigonometric Box-Muller transform;
    /// consumes two uniforms per pair of gaussians.
    double gaussian();

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// splitmix64 output/finalizer function, exposed for seed derivation.
std::uint64_t mix64(std::uint64_t z);

} // namespace ionsynth
