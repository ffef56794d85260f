#pragma once

#include "hawkeslob/estimator.hpp"
#include "hawkeslob/orderbook.hpp"
#include "hawkeslob/params.hpp"
#include "hawkeslob/types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace hawkeslob::io {

/// Tick-file cleaning options. Columns (header required, any order):
/// timestamp_ms, asset, side (a|b), direction (+|-, optional), price, volume.
struct IngestConfig {
    std::vector<std::string> assets; // selection and order; empty = order of first appearance
    double tick_size = 0.0;          // > 0 enables the lattice check and tick-based initial quotes
    bool strict = false;             // drop off-lattice rows instead of only logging them
    double max_bad_fraction = 0.05;  // abort when more unparseable rows than this
    std::int64_t reorder_tolerance_ms = 1000; // late rows within this window are re-sorted, later ones dropped
    double spread_multiple = 0.0;    // > 0 drops rows whose spread exceeds this multiple of the median
    bool midnight_filter = false;
    std::int64_t midnight_window_ms = 60'000; // half-width of the excised window around 00:00 UTC
};

struct IngestReport {
    std::size_t rows = 0;
    std::size_t bad_rows = 0;
    std::size_t other_assets = 0;
    std::size_t nonpositive = 0;
    std::size_t out_of_order = 0;
    std::size_t duplicates = 0;
    std::size_t midnight = 0;
    std::size_t off_lattice = 0; // logged; dropped only in strict mode
    std::size_t wide_spread = 0;
    std::size_t unchanged = 0; // rows without a price move (or first quotes, when inferring)
    std::size_t events = 0;
    std::vector<std::string> log;
};

struct IngestResult {
    std::vector<std::string> assets;
    EventStream events;           // times in seconds from origin_ms; horizon = [0, last event]
    std::vector<double> prices;   // recorded price of the moved quote, parallel to events
    std::int64_t origin_ms = 0;   // timestamp of the first event
    std::vector<double> initial_ask; // per asset, quote before its first ask event
    std::vector<double> initial_bid;
    IngestReport report;

    /// Quotes rebuilt from recorded prices, on the given tick lattice.
    [[nodiscard]] std::vector<orderbook::PricePath> price_paths(double tick) const;
};

/// Parses and cleans a tick file. Direction is inferred from the move of the side's quote when
/// the column is absent; rows that do not move the quote are dropped.
[[nodiscard]] IngestResult ingest(std::istream& in, const IngestConfig& config = {});
[[nodiscard]] IngestResult ingest(const std::filesystem::path& path, const IngestConfig& config = {});

/// Price of the moved quote after each event, read from the per-asset paths.
[[nodiscard]] std::vector<double> event_prices(const EventStream& events, const std::vector<orderbook::PricePath>& paths);

/// Writes the event file (timestamp_ms = origin_ms + round(1000 t)). Prices are printed with
/// the number of decimals of the tick.
void write_events(std::ostream& out, const EventStream& events, const std::vector<std::string>& assets,
                  const std::vector<double>& prices, double tick, std::int64_t origin_ms = 0);

/// time,asset,ask,bid rows: the initial quotes at the horizon start, then one row per jump.
void write_prices(std::ostream& out, const std::vector<orderbook::PricePath>& paths,
                  const std::vector<std::string>& assets);

/// Number of decimals needed to print multiples of the tick exactly (at most 12).
[[nodiscard]] int tick_decimals(double tick);

/// "A0", "A1", ... when no names are given; throws InputError on a count mismatch.
[[nodiscard]] std::vector<std::string> asset_names(const std::vector<std::string>& names, std::size_t assets);

/// Keyed text, one `key = value` per line, values with 17 significant digits, closed by `end`.
[[nodiscard]] std::string serialize_params(const ParameterSet& params);
/// Inverse of serialize_params. Throws InputError naming the line or field on schema
/// mismatch, missing or duplicate keys, negative values, truncation, or (for order-book sets)
/// non-zero cells outside the interaction pattern.
[[nodiscard]] ParameterSet deserialize_params(const std::string& text);

[[nodiscard]] ParameterSet read_params(const std::filesystem::path& path);
void write_params(const std::filesystem::path& path, const ParameterSet& params);

/// JSON report of a fit; numbers use the shortest round-trip representation.
[[nodiscard]] std::string fit_report_json(const FitReport& report, const std::vector<std::string>& assets);

/// Reads a whole file; throws InputError when it cannot be opened.
[[nodiscard]] std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace hawkeslob::io
