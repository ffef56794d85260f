#pragma once

#include <cstdint>
#include <random>

namespace hawkeslob {

/// mt19937_64 (period 2^19937 - 1) seeded through SplitMix64. `split(k)` derives an
/// independent child generator from (seed, k), so per-run and per-stream sequences do not
/// depend on the order in which other sequences are consumed.
///
/// Uniforms and exponentials are derived from raw 64-bit outputs directly, so draws are
/// identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0);

    [[nodiscard]] Rng split(std::uint64_t stream) const { return Rng(seed_, mix(stream_, stream)); }

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on the open interval (0, 1).
    double uniform();
    /// Exponential with the given rate (> 0).
    double exponential(double rate);

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    static std::uint64_t splitmix64(std::uint64_t& state);

private:
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b);

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

} // namespace hawkeslob
