#include "hawkeslob/simd.hpp"

#include "hawkeslob/errors.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace hawkeslob::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(HAWKESLOB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Level initial_level() noexcept {
    const char* env = std::getenv("HAWKESLOB_SIMD");
    if (env != nullptr && std::string(env) == "scalar") return Level::scalar;
    return cpu_has_avx2() ? Level::avx2 : Level::scalar;
}

std::atomic<Level>& current() noexcept {
    static std::atomic<Level> level{initial_level()};
    return level;
}

} // namespace

bool supported(Level level) noexcept {
    return level == Level::scalar || cpu_has_avx2();
}

Level active_level() noexcept {
    return current().load(std::memory_order_relaxed);
}

void set_level(Level level) {
    if (!supported(level)) {
        throw InputError("simd level '" + std::string(name(level)) + "' not supported on this CPU");
    }
    current().store(level, std::memory_order_relaxed);
}

std::string_view name(Level level) noexcept {
    return level == Level::avx2 ? "avx2" : "scalar";
}

double exp_decay_sum(std::span<const double> times, std::span<const double> weights, double decay, double t) {
#if defined(HAWKESLOB_HAVE_AVX2)
    if (active_level() == Level::avx2) return avx2::exp_decay_sum(times, weights, decay, t);
#endif
    return scalar::exp_decay_sum(times, weights, decay, t);
}

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
#if defined(HAWKESLOB_HAVE_AVX2)
    if (active_level() == Level::avx2) return avx2::sum_sq_diff(a, b);
#endif
    return scalar::sum_sq_diff(a, b);
}

double sum_prod_diff(std::span<const double> a1, std::span<const double> b1, std::span<const double> a2,
                     std::span<const double> b2) {
#if defined(HAWKESLOB_HAVE_AVX2)
    if (active_level() == Level::avx2) return avx2::sum_prod_diff(a1, b1, a2, b2);
#endif
    return scalar::sum_prod_diff(a1, b1, a2, b2);
}

} // namespace hawkeslob::simd
