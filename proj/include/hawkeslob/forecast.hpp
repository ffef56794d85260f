#pragma once

#include "hawkeslob/intensity.hpp"
#include "hawkeslob/orderbook.hpp"
#include "hawkeslob/params.hpp"
#include "hawkeslob/rng.hpp"
#include "hawkeslob/types.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hawkeslob {

/// Intensities frozen at the end of a history: no event is added after t0 = history.horizon.end,
/// so each stream's compensator from t0 is mu tau + mass (1 - exp(-decay tau)).
class FrozenHistory {
public:
    FrozenHistory(const ParameterSet& params, const EventStream& history);

    [[nodiscard]] double t0() const noexcept { return state_.last_time(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return state_.dimension(); }
    /// Lambda_j(t0 + tau) - Lambda_j(t0). Throws InputError for tau < 0.
    [[nodiscard]] double compensator(std::size_t stream, double tau) const;
    /// exp(-compensator(stream, tau)).
    [[nodiscard]] double survival(std::size_t stream, double tau) const;
    /// Probability that no stream fires within tau.
    [[nodiscard]] double total_survival(double tau) const;
    [[nodiscard]] double hazard(std::size_t stream) const { return state_.intensity(stream); }
    /// lambda_j(t0) / sum_i lambda_i(t0).
    [[nodiscard]] std::vector<double> hazard_shares() const;
    /// Expected time to the first event of one stream (nullopt: all streams) under the frozen
    /// history, by quadrature of the survival function.
    [[nodiscard]] double expected_wait(std::optional<std::size_t> stream = {}) const;
    [[nodiscard]] const RecursionState& state() const noexcept { return state_; }

private:
    RecursionState state_;
};

/// exp(-[Lambda(t0 + tau) - Lambda(t0)]) for one stream with the history frozen at its end.
[[nodiscard]] double survival(const ParameterSet& params, const EventStream& history, std::size_t stream, double tau);
[[nodiscard]] double survival(const ParameterSet& params, const EventStream& history, StreamId stream, double tau);

struct NextEventForecast {
    double t0 = 0.0;
    std::vector<double> taus;
    std::vector<std::vector<double>> survival; // [stream][k] at taus[k]
    std::vector<double> any_survival;          // no event on any stream
    std::vector<double> hazard_shares;         // per stream, sums to 1
    std::size_t most_probable = 0;             // first stream with the largest share
    std::vector<double> expected_wait;         // per stream
    double expected_next = 0.0;                // any stream
};

/// Frozen-history forecast on the given lags.
[[nodiscard]] NextEventForecast next_event_forecast(const ParameterSet& params, const EventStream& history,
                                                    std::span<const double> taus);

struct RolloutConfig {
    std::size_t rollouts = 10'000;
    double horizon = 1.0;       // seconds after t0 simulated per rollout
    std::uint64_t seed = 0;
    std::size_t threads = 0;    // 0 = hardware concurrency
};

struct RolloutResult {
    std::vector<double> first_time;        // per rollout, time after t0 of the first event (inf if none)
    std::vector<std::uint32_t> first_stream; // per rollout, meaningful when first_time is finite
    std::vector<double> first_stream_frequency; // per stream, over rollouts with an event
    std::vector<double> mean_events;       // per stream, events within the horizon
    std::size_t without_event = 0;

    /// Fraction of rollouts whose first event comes later than tau.
    [[nodiscard]] double empirical_survival(double tau) const;
};

/// Monte Carlo continuation of the history: each rollout draws new events by thinning,
/// drawing marks from each stream's Exponential(mark_rate) law and appending them to its own
/// copy of the history. Results depend only on (params, history, config).
[[nodiscard]] RolloutResult rollout(const ParameterSet& params, const EventStream& history, const RolloutConfig& config);

/// Available depth at consecutive price levels beyond the best quote; offsets in ticks.
struct ImpactLadder {
    struct Level {
        std::int64_t offset = 0;
        double volume = 0.0;
    };
    std::vector<Level> levels;

    /// Throws InputError unless non-empty, offsets start at 0 and strictly increase, volumes > 0.
    void validate() const;
};

struct ImpactCost {
    double cost = 0.0; // sum of filled_i * offset_i * tick
    double filled = 0.0;
    double unfilled = 0.0; // remainder when the ladder is exhausted
    std::vector<ImpactLadder::Level> fills;

    [[nodiscard]] bool complete() const noexcept { return unfilled == 0.0; }
};

/// Walks the ladder best level first, the last consumed level possibly partially.
[[nodiscard]] ImpactCost market_impact_cost(const ImpactLadder& ladder, double quantity, double tick);

/// Spread cost k * s(t_out) of buying at the ask and selling at the bid, plus, when a ladder is
/// given, the impact of walking it with quantity k on both legs. Throws InputError for times
/// outside the path horizon or t_out < t_in.
[[nodiscard]] double round_trip_cost(const orderbook::PricePath& path, double t_in, double t_out, double k,
                                     const std::optional<ImpactLadder>& ladder = std::nullopt);

/// Ladder with offsets 0..levels-1 and Exponential(mark_rate) volumes.
[[nodiscard]] ImpactLadder simulate_ladder(double mark_rate, std::size_t levels, Rng& rng);

} // namespace hawkeslob
