#include "hawkeslob/rng.hpp"

#include <array>
#include <cmath>

namespace hawkeslob {

std::uint64_t Rng::splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t Rng::mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b * 0xD1B54A32D192ED03ULL);
    return splitmix64(s);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
    std::uint64_t state = mix(seed, stream);
    std::array<std::uint32_t, 8> words{};
    for (std::size_t k = 0; k < words.size(); k += 2) {
        const std::uint64_t v = splitmix64(state);
        words[k] = static_cast<std::uint32_t>(v);
        words[k + 1] = static_cast<std::uint32_t>(v >> 32);
    }
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
}

double Rng::uniform() {
    // 53 random bits, shifted by half an ulp so 0 and 1 are excluded
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::exponential(double rate) {
    return -std::log(uniform()) / rate;
}

} // namespace hawkeslob
