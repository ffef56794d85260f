#include "hawkeslob/orderbook.hpp"

#include "hawkeslob/errors.hpp"

#include <algorithm>

namespace hawkeslob::orderbook {

std::size_t InteractionPattern::allowed_count() const {
    return static_cast<std::size_t>(std::count(allowed.begin(), allowed.end(), true));
}

InteractionPattern InteractionPattern::full(std::size_t n_streams) {
    return InteractionPattern{0, n_streams, std::vector<bool>(n_streams * n_streams, true)};
}

InteractionPattern build_pattern(std::size_t assets) {
    if (assets == 0) throw InputError("build_pattern: need at least one asset");
    const std::size_t n = 4 * assets;
    InteractionPattern p{assets, n, std::vector<bool>(n * n, false)};
    for (std::size_t t = 0; t < n; ++t) {
        const StreamId target = StreamId::from_index(t);
        for (std::size_t s = 0; s < n; ++s) {
            const StreamId source = StreamId::from_index(s);
            const bool same_asset = target.asset == source.asset;
            // within an asset: same direction, either side; across assets: same side, either direction
            p.allowed[t * n + s] = same_asset ? target.direction == source.direction : target.side == source.side;
        }
    }
    return p;
}

void validate(const ParameterSet& params) {
    params.validate();
    if (params.assets == 0) return;
    const InteractionPattern pattern = build_pattern(params.assets);
    const std::size_t n = params.dimension();
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t s = 0; s < n; ++s) {
            if (!pattern(t, s) && params.nu(t, s) != 0.0) {
                throw InputError("branching[" + std::to_string(t) + "][" + std::to_string(s) + "] (" +
                                 stream_label(t) + " <- " + stream_label(s) +
                                 ") must be 0: interaction not allowed");
            }
        }
    }
    for (std::uint32_t a = 0; a < params.assets; ++a) {
        for (Direction dir : {Direction::up, Direction::down}) {
            const std::size_t ask = StreamId{a, Side::ask, dir}.index();
            const std::size_t bid = StreamId{a, Side::bid, dir}.index();
            if (params.mu[ask] != params.mu[bid]) {
                throw InputError("mu[" + std::to_string(ask) + "] and mu[" + std::to_string(bid) +
                                 "] must be equal (ask/bid baselines of one direction)");
            }
        }
    }
}

void apply_pattern(ParameterSet& params, const InteractionPattern& pattern) {
    const std::size_t n = params.dimension();
    if (pattern.n != n) throw InputError("apply_pattern: dimension mismatch");
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t s = 0; s < n; ++s) {
            if (!pattern(t, s)) params.nu(t, s) = 0.0;
        }
    }
}

ParameterSet symmetric_params(const SymmetricSpec& spec) {
    ParameterSet p = ParameterSet::zeros_for_assets(spec.assets);
    const std::size_t n = p.dimension();
    for (std::size_t t = 0; t < n; ++t) {
        p.mu[t] = spec.mu;
        p.kernels[t].decay = spec.decay;
        p.impacts[t] = PowerImpact{spec.impact_exponent, spec.mark_rate};
        const StreamId target = StreamId::from_index(t);
        for (std::size_t s = 0; s < n; ++s) {
            const StreamId source = StreamId::from_index(s);
            double v = 0.0;
            if (t == s) {
                v = spec.self;
            } else if (target.asset == source.asset) {
                if (target.direction == source.direction) v = spec.side_coupling;
            } else if (target.side == source.side) {
                v = target.direction == source.direction ? spec.cross_same : spec.cross_opposite;
            }
            p.nu(t, s) = v;
        }
    }
    return p;
}

namespace {

std::int64_t step_value(const std::vector<double>& times, const std::vector<std::int64_t>& values,
                        std::int64_t initial, double t) {
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return initial;
    return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

} // namespace

std::int64_t PricePath::ask_ticks_at(double t) const {
    return step_value(times, ask_ticks, initial_spread_ticks, t);
}

std::int64_t PricePath::bid_ticks_at(double t) const {
    return step_value(times, bid_ticks, 0, t);
}

std::vector<PricePath> prices_from_counts(const EventStream& events, std::size_t assets, double p0, double tick,
                                          std::int64_t initial_spread_ticks) {
    if (!(tick > 0.0)) throw InputError("prices_from_counts: tick must be > 0");
    std::vector<PricePath> paths(assets);
    std::vector<std::int64_t> ask(assets, initial_spread_ticks);
    std::vector<std::int64_t> bid(assets, 0);
    for (std::size_t a = 0; a < assets; ++a) {
        paths[a].asset = static_cast<std::uint32_t>(a);
        paths[a].p0 = p0;
        paths[a].tick = tick;
        paths[a].initial_spread_ticks = initial_spread_ticks;
        paths[a].horizon = events.horizon;
    }
    for (const auto& e : events.events) {
        const StreamId id = StreamId::from_index(e.stream);
        if (id.asset >= assets) throw InputError("prices_from_counts: event for unknown asset");
        const std::int64_t step = id.direction == Direction::up ? 1 : -1;
        (id.side == Side::ask ? ask : bid)[id.asset] += step;
        PricePath& path = paths[id.asset];
        path.times.push_back(e.time);
        path.ask_ticks.push_back(ask[id.asset]);
        path.bid_ticks.push_back(bid[id.asset]);
    }
    return paths;
}

std::vector<double> spread_series(const PricePath& path, const std::vector<double>& grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double t : grid) out.push_back(path.spread_at(t));
    return out;
}

CrossedBook crossed_book(const PricePath& path) {
    CrossedBook result;
    const double length = path.horizon.length();
    double crossed_time = 0.0;
    double prev_time = path.horizon.start;
    bool crossed = path.initial_spread_ticks < 0;
    for (std::size_t k = 0; k < path.times.size(); ++k) {
        if (crossed) crossed_time += path.times[k] - prev_time;
        prev_time = path.times[k];
        crossed = path.bid_ticks[k] > path.ask_ticks[k];
        if (crossed) ++result.crossed_jumps;
    }
    if (crossed) crossed_time += path.horizon.end - prev_time;
    result.time_fraction = length > 0.0 ? crossed_time / length : 0.0;
    return result;
}

} // namespace hawkeslob::orderbook
