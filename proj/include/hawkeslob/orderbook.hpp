#pragma once

#include "hawkeslob/params.hpp"
#include "hawkeslob/types.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hawkeslob::orderbook {

/// Which (target, source) branching cells may be non-zero. For an order-book pattern
/// (assets > 0) this is the first-line interaction table:
///  - within an asset, up-moves excite up-moves on both sides and down-moves excite
///    down-moves on both sides; up and down never interact;
///  - across assets, ask streams interact with the other asset's ask streams in both
///    directions and bid streams with bid streams.
struct InteractionPattern {
    std::size_t assets = 0; // 0 for a generic pattern
    std::size_t n = 0;
    std::vector<bool> allowed; // row-major [target * n + source]

    [[nodiscard]] bool operator()(std::size_t target, std::size_t source) const { return allowed[target * n + source]; }
    [[nodiscard]] std::size_t allowed_count() const;

    /// Generic n-stream pattern with every cell allowed.
    [[nodiscard]] static InteractionPattern full(std::size_t n_streams);
};

[[nodiscard]] InteractionPattern build_pattern(std::size_t assets);

/// Throws InputError naming the first offending cell if a branching entry outside the pattern
/// is non-zero, or if the ask/bid baseline equalities (per direction) do not hold.
void validate(const ParameterSet& params);

/// Zeroes every branching entry outside the pattern.
void apply_pattern(ParameterSet& params, const InteractionPattern& pattern);

/// Convenience constructor for a symmetric d-asset system: all streams share baseline, decay
/// and impact; `self` on the diagonal, `side_coupling` between ask and bid of the same direction,
/// `cross_same` / `cross_opposite` for same / opposite direction moves on the same side of
/// another asset.
struct SymmetricSpec {
    std::size_t assets = 1;
    double mu = 0.1;
    double self = 0.3;
    double side_coupling = 0.1;
    double cross_same = 0.0;
    double cross_opposite = 0.0;
    double decay = 1.0;
    double impact_exponent = 0.0;
    double mark_rate = 1.0;
};
[[nodiscard]] ParameterSet symmetric_params(const SymmetricSpec& spec);

/// Bid and ask of one asset as step functions of the counting processes.
/// ask(t) = ask0 + (N_ask_up(t) - N_ask_down(t)) * tick, likewise for the bid.
struct PricePath {
    std::uint32_t asset = 0;
    double p0 = 1.0;
    double tick = 1e-5;
    std::int64_t initial_spread_ticks = 0; // added to the ask at t = start
    Horizon horizon;
    std::vector<double> times;          // jump times (one per event of the asset)
    std::vector<std::int64_t> ask_ticks; // offset from p0 after each jump
    std::vector<std::int64_t> bid_ticks;

    [[nodiscard]] double ask0() const noexcept { return p0 + static_cast<double>(initial_spread_ticks) * tick; }
    [[nodiscard]] double bid0() const noexcept { return p0; }
    /// Tick offsets from p0 at time t (right-continuous).
    [[nodiscard]] std::int64_t ask_ticks_at(double t) const;
    [[nodiscard]] std::int64_t bid_ticks_at(double t) const;
    [[nodiscard]] double ask_at(double t) const { return p0 + static_cast<double>(ask_ticks_at(t)) * tick; }
    [[nodiscard]] double bid_at(double t) const { return p0 + static_cast<double>(bid_ticks_at(t)) * tick; }
    [[nodiscard]] double spread_at(double t) const {
        return static_cast<double>(ask_ticks_at(t) - bid_ticks_at(t)) * tick;
    }
    [[nodiscard]] double mid_at(double t) const { return 0.5 * (ask_at(t) + bid_at(t)); }
};

/// One PricePath per asset built from the counting processes. initial_spread_ticks = 0 starts
/// both quotes at p0.
[[nodiscard]] std::vector<PricePath> prices_from_counts(const EventStream& events, std::size_t assets, double p0,
                                                        double tick, std::int64_t initial_spread_ticks = 0);

/// Previous-tick sampled spread on the given grid times.
[[nodiscard]] std::vector<double> spread_series(const PricePath& path, const std::vector<double>& grid);

/// Fraction of the horizon during which the book is crossed (bid > ask) and the number of
/// jumps that leave it crossed.
struct CrossedBook {
    double time_fraction = 0.0;
    std::size_t crossed_jumps = 0;
};
[[nodiscard]] CrossedBook crossed_book(const PricePath& path);

} // namespace hawkeslob::orderbook
