#include "hawkeslob/analytics.hpp"

#include "hawkeslob/errors.hpp"
#include "hawkeslob/simd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hawkeslob::analytics {
namespace {

std::size_t lag_steps(double tau, double base_step) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw InputError("lag must be finite and > 0");
    const double ratio = tau / base_step;
    const double m = std::round(ratio);
    if (m < 1.0 || std::abs(ratio - m) > 1e-9 * std::max(1.0, ratio)) {
        std::ostringstream msg;
        msg << "lag " << tau << " is not a positive multiple of the base step " << base_step;
        throw InputError(msg.str());
    }
    return static_cast<std::size_t>(m);
}

std::vector<double> strided(std::span<const double> x, std::size_t m) {
    std::vector<double> out;
    out.reserve(x.size() / m + 1);
    for (std::size_t k = 0; k < x.size(); k += m) out.push_back(x[k]);
    return out;
}

void check_step(double base_step) {
    if (!(base_step > 0.0) || !std::isfinite(base_step)) throw InputError("base step must be finite and > 0");
}

std::string dropped_warning(double tau) {
    std::ostringstream msg;
    msg << "lag " << tau << " exceeds the series span; dropped";
    return msg.str();
}

} // namespace

std::vector<double> RegularGrid::times() const {
    std::vector<double> t(count);
    for (std::size_t k = 0; k < count; ++k) t[k] = at(k);
    return t;
}

void RegularGrid::validate() const {
    if (!(step > 0.0) || !std::isfinite(step)) throw InputError("grid step must be finite and > 0");
    if (count < 1) throw InputError("grid must have at least one point");
    if (!std::isfinite(start)) throw InputError("grid start must be finite");
}

RegularGrid RegularGrid::covering(double start, double end, double step) {
    check_step(step);
    if (!(end >= start)) throw InputError("grid end precedes start");
    // small tolerance so that an end lying on the lattice is kept despite rounding
    const auto count = static_cast<std::size_t>(std::floor((end - start) / step * (1.0 + 1e-12) + 1e-9)) + 1;
    RegularGrid grid{start, step, count};
    grid.validate();
    return grid;
}

std::vector<double> previous_tick_sample(const StepSeries& series, const RegularGrid& grid, BeforeFirst policy,
                                         double fill_value) {
    grid.validate();
    if (series.times.size() != series.values.size()) throw InputError("step series: times and values differ in size");
    if (!std::is_sorted(series.times.begin(), series.times.end())) throw InputError("step series: times not sorted");
    std::vector<double> out(grid.count);
    std::size_t next = 0; // first observation strictly after the current grid point
    for (std::size_t k = 0; k < grid.count; ++k) {
        const double t = grid.at(k);
        while (next < series.times.size() && series.times[next] <= t) ++next;
        if (next == 0) {
            if (policy == BeforeFirst::error) {
                std::ostringstream msg;
                msg << "grid point " << t << " precedes the first observation";
                throw InputError(msg.str());
            }
            out[k] = fill_value;
        } else {
            out[k] = series.values[next - 1];
        }
    }
    return out;
}

std::vector<double> log_price_on_grid(const orderbook::PricePath& path, const RegularGrid& grid, PriceSource source) {
    grid.validate();
    std::vector<double> out(grid.count);
    std::size_t next = 0;
    for (std::size_t k = 0; k < grid.count; ++k) {
        const double t = grid.at(k);
        while (next < path.times.size() && path.times[next] <= t) ++next;
        const std::int64_t ask = next == 0 ? path.initial_spread_ticks : path.ask_ticks[next - 1];
        const std::int64_t bid = next == 0 ? 0 : path.bid_ticks[next - 1];
        double price = 0.0;
        if (source == PriceSource::mid) {
            price = path.p0 + 0.5 * static_cast<double>(ask + bid) * path.tick;
        } else {
            std::int64_t ticks = bid;
            if (next > 0) {
                const bool ask_moved = next == 1 ? path.ask_ticks[0] != path.initial_spread_ticks
                                                 : path.ask_ticks[next - 1] != path.ask_ticks[next - 2];
                if (ask_moved) ticks = ask;
            }
            price = path.p0 + static_cast<double>(ticks) * path.tick;
        }
        if (!(price > 0.0)) throw NumericalError("non-positive price on the sampling grid");
        out[k] = std::log(price);
    }
    return out;
}

Curve signature_plot(std::span<const double> log_price, double base_step, std::span<const double> taus) {
    check_step(base_step);
    Curve curve;
    for (double tau : taus) {
        const std::size_t m = lag_steps(tau, base_step);
        if (log_price.size() < 2 || m > log_price.size() - 1) {
            curve.warnings.push_back(dropped_warning(tau));
            continue;
        }
        const std::vector<double> x = strided(log_price, m);
        const std::span<const double> head(x.data(), x.size() - 1);
        const std::span<const double> tail(x.data() + 1, x.size() - 1);
        const double sum = simd::sum_sq_diff(tail, head);
        curve.points.push_back({tau, sum / (static_cast<double>(head.size()) * tau)});
    }
    return curve;
}

Curve epps(std::span<const double> x1, std::span<const double> x2, double base_step, std::span<const double> taus) {
    check_step(base_step);
    if (x1.size() != x2.size()) throw InputError("epps: series must share the same grid");
    Curve curve;
    for (double tau : taus) {
        const std::size_t m = lag_steps(tau, base_step);
        if (x1.size() < 2 || m > x1.size() - 1) {
            curve.warnings.push_back(dropped_warning(tau));
            continue;
        }
        const std::vector<double> a = strided(x1, m);
        const std::vector<double> b = strided(x2, m);
        const std::size_t len = a.size() - 1;
        const std::span<const double> a0(a.data(), len), a1(a.data() + 1, len);
        const std::span<const double> b0(b.data(), len), b1(b.data() + 1, len);
        const double v1 = simd::sum_sq_diff(a1, a0);
        const double v2 = simd::sum_sq_diff(b1, b0);
        if (!(v1 > 0.0) || !(v2 > 0.0)) {
            std::ostringstream msg;
            msg << "lag " << tau << ": zero increment variance, correlation undefined";
            curve.warnings.push_back(msg.str());
            curve.points.push_back({tau, std::nullopt});
            continue;
        }
        const double cov = simd::sum_prod_diff(a1, a0, b1, b0);
        curve.points.push_back({tau, std::clamp(cov / std::sqrt(v1 * v2), -1.0, 1.0)});
    }
    return curve;
}

Curve average_curves(std::span<const Curve> curves) {
    Curve out;
    if (curves.empty()) return out;
    for (const auto& p : curves.front().points) out.points.push_back({p.tau, std::nullopt});
    for (const auto& c : curves) {
        if (c.points.size() != out.points.size()) throw InputError("average_curves: curves have different lags");
        for (std::size_t k = 0; k < c.points.size(); ++k) {
            if (c.points[k].tau != out.points[k].tau) throw InputError("average_curves: curves have different lags");
        }
    }
    for (std::size_t k = 0; k < out.points.size(); ++k) {
        double sum = 0.0;
        std::size_t used = 0;
        for (const auto& c : curves) {
            if (c.points[k].value) {
                sum += *c.points[k].value;
                ++used;
            }
        }
        if (used > 0) out.points[k].value = sum / static_cast<double>(used);
    }
    return out;
}

PowerLawFit fit_power_law(const Curve& curve) {
    std::vector<double> lx, ly;
    for (const auto& p : curve.points) {
        if (p.value && *p.value > 0.0 && p.tau > 0.0) {
            lx.push_back(std::log(p.tau));
            ly.push_back(std::log(*p.value));
        }
    }
    if (lx.size() < 2) throw InputError("fit_power_law: fewer than two positive points");
    const double n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        mx += lx[k];
        my += ly[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        sxx += (lx[k] - mx) * (lx[k] - mx);
        sxy += (lx[k] - mx) * (ly[k] - my);
        syy += (ly[k] - my) * (ly[k] - my);
    }
    if (!(sxx > 0.0)) throw InputError("fit_power_law: all lags are equal");
    PowerLawFit fit;
    fit.points = lx.size();
    fit.exponent = sxy / sxx;
    fit.prefactor = std::exp(my - fit.exponent * mx);
    fit.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return fit;
}

std::vector<DurationVolume> duration_volume_table(const EventStream& events, std::optional<std::size_t> stream) {
    std::vector<DurationVolume> rows;
    bool have_previous = false;
    double previous = 0.0;
    for (const auto& e : events.events) {
        if (stream && e.stream != *stream) continue;
        if (have_previous) {
            const double d = e.time - previous;
            if (d < 0.0) throw InputError("durations: events are not sorted by time");
            rows.push_back({d, e.volume});
        }
        previous = e.time;
        have_previous = true;
    }
    return rows;
}

std::vector<double> durations(const EventStream& events, std::optional<std::size_t> stream) {
    const auto rows = duration_volume_table(events, stream);
    std::vector<double> d;
    d.reserve(rows.size());
    for (const auto& r : rows) d.push_back(r.duration);
    return d;
}

std::vector<double> default_taus(double base_step) {
    check_step(base_step);
    std::vector<double> taus;
    for (double decade = base_step; decade <= 100.0 * (1.0 + 1e-12); decade *= 10.0) {
        for (int mult : {1, 2, 5}) {
            const double tau = decade * mult;
            if (tau <= 100.0 * (1.0 + 1e-12)) taus.push_back(tau);
        }
    }
    return taus;
}

} // namespace hawkeslob::analytics
