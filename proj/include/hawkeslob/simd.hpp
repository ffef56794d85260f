#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference implementation and, on x86-64,
// an AVX2+FMA variant; the active variant is picked at first use from CPU support and can be
// forced with HAWKESLOB_SIMD=scalar|avx2 or set_level().

#include <span>
#include <string_view>

namespace hawkeslob::simd {

enum class Level { scalar, avx2 };

[[nodiscard]] bool supported(Level level) noexcept;
[[nodiscard]] Level active_level() noexcept;
/// Throws InputError when the level is not supported by this CPU/build.
void set_level(Level level);
[[nodiscard]] std::string_view name(Level level) noexcept;

/// sum_k weights[k] * exp(-decay * max(t - times[k], 0))
[[nodiscard]] double exp_decay_sum(std::span<const double> times, std::span<const double> weights, double decay,
                                   double t);

/// sum_k (a[k] - b[k])^2
[[nodiscard]] double sum_sq_diff(std::span<const double> a, std::span<const double> b);

/// sum_k (a1[k] - b1[k]) * (a2[k] - b2[k])
[[nodiscard]] double sum_prod_diff(std::span<const double> a1, std::span<const double> b1,
                                   std::span<const double> a2, std::span<const double> b2);

namespace scalar {
double exp_decay_sum(std::span<const double> times, std::span<const double> weights, double decay, double t);
double sum_sq_diff(std::span<const double> a, std::span<const double> b);
double sum_prod_diff(std::span<const double> a1, std::span<const double> b1, std::span<const double> a2,
                     std::span<const double> b2);
} // namespace scalar

#if defined(HAWKESLOB_HAVE_AVX2)
namespace avx2 {
double exp_decay_sum(std::span<const double> times, std::span<const double> weights, double decay, double t);
double sum_sq_diff(std::span<const double> a, std::span<const double> b);
double sum_prod_diff(std::span<const double> a1, std::span<const double> b1, std::span<const double> a2,
                     std::span<const double> b2);
/// Vectorized exp over a buffer, exposed for equivalence tests.
void exp_inplace(std::span<double> x);
} // namespace avx2
#endif

} // namespace hawkeslob::simd
