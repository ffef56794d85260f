#pragma once

#include "hawkeslob/orderbook.hpp"
#include "hawkeslob/types.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hawkeslob::analytics {

/// start, start + step, ..., start + (count - 1) step.
struct RegularGrid {
    double start = 0.0;
    double step = 0.1;
    std::size_t count = 1;

    [[nodiscard]] double at(std::size_t k) const noexcept { return start + static_cast<double>(k) * step; }
    [[nodiscard]] std::vector<double> times() const;
    /// Throws InputError unless step > 0 and count >= 1.
    void validate() const;
    /// Largest grid of the given step that fits in [start, end].
    [[nodiscard]] static RegularGrid covering(double start, double end, double step);
};

/// Piecewise-constant, right-continuous series: values[k] holds on [times[k], times[k+1]).
struct StepSeries {
    std::vector<double> times;
    std::vector<double> values;
};

enum class BeforeFirst { error, fill };

/// Previous-tick sampling: the value at each grid point is the last observation at or before
/// it. Grid points before the first observation throw InputError or take `fill_value`.
[[nodiscard]] std::vector<double> previous_tick_sample(const StepSeries& series, const RegularGrid& grid,
                                                       BeforeFirst policy = BeforeFirst::error,
                                                       double fill_value = 0.0);

enum class PriceSource { mid, last_move };

/// Log price of one asset sampled on the grid. `mid` uses (ask + bid) / 2; `last_move` uses
/// the quote that moved last (the initial bid before any move).
[[nodiscard]] std::vector<double> log_price_on_grid(const orderbook::PricePath& path, const RegularGrid& grid,
                                                    PriceSource source = PriceSource::mid);

/// (lag, value) pairs; value is empty where undefined.
struct CurvePoint {
    double tau = 0.0;
    std::optional<double> value;
};

struct Curve {
    std::vector<CurvePoint> points;
    std::vector<std::string> warnings;
};

/// Realized variance per unit time at each lag tau = m * base_step:
/// V(tau) = sum_n (X((n+1) tau) - X(n tau))^2 / (N tau) over the N complete increments.
/// Lags that are not positive multiples of the base step throw InputError; lags longer than
/// the series span are dropped with a warning.
[[nodiscard]] Curve signature_plot(std::span<const double> log_price, double base_step, std::span<const double> taus);

/// Correlation of aligned tau-increments of two series on the same grid. Lags where either
/// increment variance is zero are emitted without a value and a warning.
[[nodiscard]] Curve epps(std::span<const double> x1, std::span<const double> x2, double base_step,
                         std::span<const double> taus);

/// Pointwise mean over curves sharing the same lags, ignoring missing values.
[[nodiscard]] Curve average_curves(std::span<const Curve> curves);

/// Least-squares line through (log tau, log value) over points with positive values.
struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};
/// Throws InputError when fewer than two usable points remain.
[[nodiscard]] PowerLawFit fit_power_law(const Curve& curve);

/// Consecutive differences of event times, optionally restricted to one stream. Fewer than two
/// events give an empty result.
[[nodiscard]] std::vector<double> durations(const EventStream& events, std::optional<std::size_t> stream = {});

struct DurationVolume {
    double duration = 0.0; // time since the previous event
    double volume = 0.0;   // volume of the event closing the duration
};
/// One row per event after the first, under the same filter as durations().
[[nodiscard]] std::vector<DurationVolume> duration_volume_table(const EventStream& events,
                                                                std::optional<std::size_t> stream = {});

/// 1-2-5 sequence of lags from base_step up to 100 seconds, each a multiple of base_step.
[[nodiscard]] std::vector<double> default_taus(double base_step);

} // namespace hawkeslob::analytics
