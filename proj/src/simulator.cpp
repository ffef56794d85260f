#include "hawkeslob/simulator.hpp"

#include "hawkeslob/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace hawkeslob {

double draw_mark(double beta, Rng& rng) {
    if (!(beta > 0.0)) throw InputError("draw_mark: beta must be > 0");
    return rng.exponential(beta);
}

ThinningRngs::ThinningRngs(std::uint64_t seed, std::size_t n_streams) : clock(Rng(seed).split(0)) {
    const Rng root(seed);
    marks.reserve(n_streams);
    for (std::size_t j = 0; j < n_streams; ++j) marks.push_back(root.split(1 + j));
}

std::optional<MarkedEvent> next_event(RecursionState& state, std::span<const double> mark_rates, ThinningRngs& rngs,
                                      double until, std::size_t* proposals) {
    const std::size_t n = state.dimension();
    double t = state.last_time();
    for (;;) {
        const double bound = state.total_intensity();
        if (!(bound > 0.0)) return std::nullopt;
        const double candidate = t + rngs.clock.exponential(bound);
        if (candidate > until) return std::nullopt;
        if (proposals != nullptr) ++*proposals;
        state.advance(candidate);
        const double total = state.total_intensity();
        if (total > bound * (1.0 + 1e-12)) {
            throw NumericalError("thinning bound violated: intensity increased between events");
        }
        const double u = rngs.clock.uniform();
        if (u * bound <= total) {
            double pick = rngs.clock.uniform() * total;
            std::size_t stream = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                const double lam = state.intensity(i);
                if (pick < lam) {
                    stream = i;
                    break;
                }
                pick -= lam;
            }
            // rounding may leave `pick` past the end; fall back to the last stream with positive rate
            while (stream > 0 && !(state.intensity(stream) > 0.0)) --stream;
            const double volume = draw_mark(mark_rates[stream], rngs.marks[stream]);
            return MarkedEvent{candidate, static_cast<std::uint32_t>(stream), volume};
        }
        t = candidate;
    }
}

SimResult simulate(const ParameterSet& params, const SimConfig& cfg) {
    params.validate();
    if (!(cfg.horizon_end >= 0.0) || !std::isfinite(cfg.horizon_end)) {
        throw InputError("simulate: horizon_end must be finite and >= 0");
    }
    if (cfg.max_events == 0) throw InputError("simulate: max_events must be > 0");
    if (!cfg.allow_nonstationary) {
        const double radius = spectral_radius(params);
        if (radius >= 1.0) {
            throw InputError("simulate: branching spectral radius " + std::to_string(radius) +
                             " >= 1 (non-stationary); pass the override to simulate anyway");
        }
    }
    const std::size_t n = params.dimension();
    std::vector<double> mark_rates(n);
    for (std::size_t j = 0; j < n; ++j) mark_rates[j] = params.impacts[j].mark_rate;

    SimResult result;
    result.events.horizon = Horizon{0.0, cfg.horizon_end};
    RecursionState state(params, 0.0);
    ThinningRngs rngs(cfg.seed, n);
    while (auto event = next_event(state, mark_rates, rngs, cfg.horizon_end, &result.proposals)) {
        if (result.events.events.size() >= cfg.max_events) {
            result.truncated = true;
            break;
        }
        state.add(*event);
        result.events.events.push_back(*event);
    }
    if (params.assets > 0) {
        result.prices = orderbook::prices_from_counts(result.events, params.assets, cfg.p0, cfg.tick,
                                                      cfg.initial_spread_ticks);
    }
    return result;
}

std::vector<SimResult> simulate_batch(const ParameterSet& params, const SimConfig& cfg,
                                      std::span<const std::uint64_t> seeds, std::size_t threads) {
    std::vector<SimResult> results(seeds.size());
    if (threads == 0) threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(1, seeds.size()));
    std::vector<std::exception_ptr> errors(threads);
    auto run = [&](std::size_t worker) {
        try {
            for (std::size_t k = worker; k < seeds.size(); k += threads) {
                SimConfig c = cfg;
                c.seed = seeds[k];
                results[k] = simulate(params, c);
            }
        } catch (...) {
            errors[worker] = std::current_exception();
        }
    };
    if (threads == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(run, w);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

std::vector<double> measured_rates(const EventStream& events, std::size_t n_streams, double burn_in_fraction) {
    if (burn_in_fraction < 0.0 || burn_in_fraction >= 1.0) throw InputError("burn-in fraction must be in [0, 1)");
    const double start = events.horizon.start + burn_in_fraction * events.horizon.length();
    const double length = events.horizon.end - start;
    std::vector<double> rates(n_streams, 0.0);
    if (!(length > 0.0)) return rates;
    for (const auto& e : events.events) {
        if (e.time >= start && e.stream < n_streams) rates[e.stream] += 1.0;
    }
    for (double& r : rates) r /= length;
    return rates;
}

} // namespace hawkeslob
