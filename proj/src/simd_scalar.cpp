#include "hawkeslob/simd.hpp"

#include <algorithm>
#include <cmath>

namespace hawkeslob::simd::scalar {

double exp_decay_sum(std::span<const double> times, std::span<const double> weights, double decay, double t) {
    double sum = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double dt = std::max(t - times[k], 0.0);
        sum += weights[k] * std::exp(-decay * dt);
    }
    return sum;
}

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return sum;
}

double sum_prod_diff(std::span<const double> a1, std::span<const double> b1, std::span<const double> a2,
                     std::span<const double> b2) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a1.size(); ++k) {
        sum += (a1[k] - b1[k]) * (a2[k] - b2[k]);
    }
    return sum;
}

} // namespace hawkeslob::simd::scalar
