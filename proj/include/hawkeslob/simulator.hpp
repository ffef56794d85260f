#pragma once

#include "hawkeslob/intensity.hpp"
#include "hawkeslob/orderbook.hpp"
#include "hawkeslob/params.hpp"
#include "hawkeslob/rng.hpp"
#include "hawkeslob/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hawkeslob {

struct SimConfig {
    double horizon_end = 0.0; // simulation runs on [0, horizon_end]
    std::uint64_t seed = 0;
    double p0 = 1.0;
    double tick = 1e-5;
    std::int64_t initial_spread_ticks = 1;
    std::size_t max_events = 50'000'000;
    bool allow_nonstationary = false;
};

struct SimResult {
    EventStream events;
    std::vector<orderbook::PricePath> prices; // one per asset, empty for generic systems
    bool truncated = false;                   // max_events reached before horizon_end
    std::size_t proposals = 0;                // thinning candidates, accepted or not
};

/// Exponential(beta) volume mark.
[[nodiscard]] double draw_mark(double beta, Rng& rng);

/// Generators used by one thinning run: candidate times/acceptance and one mark generator per
/// stream, all split from a single seed.
struct ThinningRngs {
    ThinningRngs(std::uint64_t seed, std::size_t n_streams);
    Rng clock;
    std::vector<Rng> marks;
};

/// Ogata thinning from the state's current time: proposes candidates from the dominating rate
/// (the current total intensity, which only decays until the next event), accepts with
/// probability lambda(t)/bound, picks the stream proportionally to its intensity and draws its
/// mark. Leaves the state at the accepted candidate time (event not added) or at the last
/// rejected candidate before `until`. Returns nullopt if no event occurs before `until`.
[[nodiscard]] std::optional<MarkedEvent> next_event(RecursionState& state, std::span<const double> mark_rates,
                                                    ThinningRngs& rngs, double until,
                                                    std::size_t* proposals = nullptr);

/// Simulates the marked process on [0, cfg.horizon_end]. Rejects non-stationary parameters
/// unless cfg.allow_nonstationary. Bit-identical output for identical (params, cfg).
[[nodiscard]] SimResult simulate(const ParameterSet& params, const SimConfig& cfg);

/// One simulation per seed (cfg.seed ignored), run on up to `threads` workers (0 = hardware).
[[nodiscard]] std::vector<SimResult> simulate_batch(const ParameterSet& params, const SimConfig& cfg,
                                                    std::span<const std::uint64_t> seeds, std::size_t threads = 0);

/// Events per second per stream over the horizon after discarding a leading burn-in fraction.
[[nodiscard]] std::vector<double> measured_rates(const EventStream& events, std::size_t n_streams,
                                                 double burn_in_fraction = 0.1);

} // namespace hawkeslob
