#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hawkeslob::stats {

/// One-sample Kolmogorov-Smirnov statistic of an ascending sample against a continuous CDF.
[[nodiscard]] double ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf);

/// Asymptotic p-value P(D_n > d) from the Kolmogorov distribution, with the usual
/// (sqrt(n) + 0.12 + 0.11 / sqrt(n)) finite-sample scaling.
[[nodiscard]] double kolmogorov_p_value(double distance, std::size_t n);

[[nodiscard]] double mean(std::span<const double> x);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
[[nodiscard]] double stddev(std::span<const double> x);
[[nodiscard]] double median(std::vector<double> x);

/// Standard normal CDF.
[[nodiscard]] double normal_cdf(double z);

} // namespace hawkeslob::stats
