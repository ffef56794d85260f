#include "hawkeslob/io.hpp"

#include "hawkeslob/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string_view>

namespace hawkeslob::io {
namespace {

constexpr std::size_t kMaxLogLines = 200;
constexpr int kSchemaVersion = 1;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t next = line.find(sep, pos);
        out.push_back(trim(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
    T value{};
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

struct Row {
    std::size_t line = 0;
    std::int64_t ts = 0;
    std::size_t asset = 0;
    Side side = Side::ask;
    std::optional<Direction> direction;
    double price = 0.0;
    double volume = 0.0;

    bool same_content(const Row& o) const {
        return ts == o.ts && asset == o.asset && side == o.side && direction == o.direction && price == o.price &&
               volume == o.volume;
    }
};

class Logger {
public:
    explicit Logger(IngestReport& report) : report_(report) {}
    void operator()(std::size_t line, const std::string& what) {
        if (report_.log.size() < kMaxLogLines) {
            report_.log.push_back("line " + std::to_string(line) + ": " + what);
        } else if (report_.log.size() == kMaxLogLines) {
            report_.log.push_back("further messages suppressed");
        }
    }

private:
    IngestReport& report_;
};

} // namespace

std::vector<orderbook::PricePath> IngestResult::price_paths(double tick) const {
    if (!(tick > 0.0)) throw InputError("price paths need a tick size > 0");
    std::vector<orderbook::PricePath> paths(assets.size());
    const auto to_ticks = [tick](double price, double p0) { return std::llround((price - p0) / tick); };
    std::vector<std::int64_t> ask(assets.size()), bid(assets.size(), 0);
    for (std::size_t a = 0; a < assets.size(); ++a) {
        auto& p = paths[a];
        p.asset = static_cast<std::uint32_t>(a);
        p.p0 = initial_bid[a];
        p.tick = tick;
        p.initial_spread_ticks = to_ticks(initial_ask[a], p.p0);
        p.horizon = events.horizon;
        ask[a] = p.initial_spread_ticks;
    }
    for (std::size_t k = 0; k < events.events.size(); ++k) {
        const MarkedEvent& e = events.events[k];
        const StreamId id = StreamId::from_index(e.stream);
        auto& p = paths[id.asset];
        (id.side == Side::ask ? ask : bid)[id.asset] = to_ticks(prices[k], p.p0);
        p.times.push_back(e.time);
        p.ask_ticks.push_back(ask[id.asset]);
        p.bid_ticks.push_back(bid[id.asset]);
    }
    return paths;
}

IngestResult ingest(std::istream& in, const IngestConfig& config) {
    if (config.tick_size < 0.0 || !std::isfinite(config.tick_size)) throw InputError("ingest: tick size must be >= 0");
    if (config.max_bad_fraction < 0.0 || config.max_bad_fraction > 1.0) {
        throw InputError("ingest: bad-row fraction must lie in [0, 1]");
    }
    IngestResult result;
    IngestReport& report = result.report;
    Logger log(report);
    result.assets = config.assets;

    std::string line;
    std::size_t line_no = 0;
    std::map<std::string, std::size_t> column;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) break;
    }
    if (trim(line).empty()) {
        result.events.horizon = Horizon{0.0, 0.0};
        result.events.complete = true;
        return result;
    }
    {
        const auto names = split(line, ',');
        for (std::size_t c = 0; c < names.size(); ++c) column[std::string(names[c])] = c;
        for (const char* required : {"timestamp_ms", "asset", "side", "price", "volume"}) {
            if (!column.contains(required)) throw InputError(std::string("ingest: missing column ") + required);
        }
    }
    const bool has_direction = column.contains("direction");
    const std::size_t c_ts = column["timestamp_ms"], c_asset = column["asset"], c_side = column["side"],
                      c_price = column["price"], c_volume = column["volume"];
    const std::size_t c_dir = has_direction ? column["direction"] : 0;
    const std::size_t width = column.size();

    auto asset_index = [&](std::string_view name) -> std::optional<std::size_t> {
        const auto it = std::find(result.assets.begin(), result.assets.end(), name);
        if (it != result.assets.end()) return static_cast<std::size_t>(it - result.assets.begin());
        if (!config.assets.empty()) return std::nullopt;
        result.assets.emplace_back(name);
        return result.assets.size() - 1;
    };

    std::vector<Row> rows;
    std::int64_t latest = std::numeric_limits<std::int64_t>::min();
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        ++report.rows;
        const auto f = split(line, ',');
        auto bad = [&](const std::string& why) {
            ++report.bad_rows;
            log(line_no, "unparseable (" + why + ")");
        };
        if (f.size() != width) {
            bad("expected " + std::to_string(width) + " fields, got " + std::to_string(f.size()));
            continue;
        }
        Row r;
        r.line = line_no;
        const auto ts = parse_number<std::int64_t>(f[c_ts]);
        const auto price = parse_number<double>(f[c_price]);
        const auto volume = parse_number<double>(f[c_volume]);
        if (!ts) { bad("timestamp"); continue; }
        if (!price || !std::isfinite(*price)) { bad("price"); continue; }
        if (!volume || !std::isfinite(*volume)) { bad("volume"); continue; }
        if (f[c_asset].empty()) { bad("asset"); continue; }
        if (f[c_side] == "a") r.side = Side::ask;
        else if (f[c_side] == "b") r.side = Side::bid;
        else { bad("side"); continue; }
        if (has_direction) {
            if (f[c_dir] == "+") r.direction = Direction::up;
            else if (f[c_dir] == "-") r.direction = Direction::down;
            else { bad("direction"); continue; }
        }
        r.ts = *ts;
        r.price = *price;
        r.volume = *volume;
        if (r.price <= 0.0 || r.volume <= 0.0) {
            ++report.nonpositive;
            log(line_no, "dropped: non-positive price or volume");
            continue;
        }
        const auto a = asset_index(f[c_asset]);
        if (!a) {
            ++report.other_assets;
            continue;
        }
        r.asset = *a;
        if (latest != std::numeric_limits<std::int64_t>::min() && r.ts < latest - config.reorder_tolerance_ms) {
            ++report.out_of_order;
            log(line_no, "dropped: timestamp more than the reorder tolerance behind");
            continue;
        }
        latest = std::max(latest, r.ts);
        rows.push_back(r);
    }
    if (report.rows > 0 &&
        static_cast<double>(report.bad_rows) > config.max_bad_fraction * static_cast<double>(report.rows)) {
        throw InputError("ingest: " + std::to_string(report.bad_rows) + " of " + std::to_string(report.rows) +
                         " rows unparseable, above the allowed fraction");
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) { return x.ts < y.ts; });

    std::vector<Row> kept;
    kept.reserve(rows.size());
    for (const Row& r : rows) {
        if (!kept.empty() && kept.back().same_content(r)) {
            ++report.duplicates;
            log(r.line, "dropped: duplicate of the previous row");
            continue;
        }
        if (config.midnight_filter) {
            constexpr std::int64_t kDay = 86'400'000;
            const std::int64_t into_day = ((r.ts % kDay) + kDay) % kDay;
            if (into_day < config.midnight_window_ms || kDay - into_day <= config.midnight_window_ms) {
                ++report.midnight;
                log(r.line, "dropped: inside the midnight window");
                continue;
            }
        }
        if (config.tick_size > 0.0) {
            const double steps = r.price / config.tick_size;
            if (std::abs(steps - std::round(steps)) > 1e-6 * std::max(1.0, std::abs(steps)) + 1e-9) {
                ++report.off_lattice;
                log(r.line, config.strict ? "dropped: price off the tick lattice" : "price off the tick lattice");
                if (config.strict) continue;
            }
        }
        kept.push_back(r);
    }

    const std::size_t n_assets = result.assets.size();
    if (config.spread_multiple > 0.0) {
        std::vector<std::optional<double>> ask(n_assets), bid(n_assets);
        std::vector<double> spread_after(kept.size(), std::numeric_limits<double>::quiet_NaN());
        std::vector<double> spreads;
        for (std::size_t k = 0; k < kept.size(); ++k) {
            const Row& r = kept[k];
            (r.side == Side::ask ? ask : bid)[r.asset] = r.price;
            if (ask[r.asset] && bid[r.asset]) {
                spread_after[k] = *ask[r.asset] - *bid[r.asset];
                spreads.push_back(spread_after[k]);
            }
        }
        if (!spreads.empty()) {
            std::vector<double> sorted = spreads;
            std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
            const double median = sorted[sorted.size() / 2];
            const double limit = config.spread_multiple * std::abs(median);
            std::vector<Row> filtered;
            for (std::size_t k = 0; k < kept.size(); ++k) {
                if (!std::isnan(spread_after[k]) && spread_after[k] > limit) {
                    ++report.wide_spread;
                    log(kept[k].line, "dropped: spread above the allowed multiple of the median");
                    continue;
                }
                filtered.push_back(kept[k]);
            }
            kept = std::move(filtered);
        }
    }

    std::vector<std::optional<double>> last_ask(n_assets), last_bid(n_assets);
    result.initial_ask.assign(n_assets, std::numeric_limits<double>::quiet_NaN());
    result.initial_bid.assign(n_assets, std::numeric_limits<double>::quiet_NaN());
    struct Pending {
        std::int64_t ts;
        MarkedEvent event;
        double price;
    };
    std::vector<Pending> pending;
    for (const Row& r : kept) {
        auto& last = r.side == Side::ask ? last_ask[r.asset] : last_bid[r.asset];
        auto& initial = r.side == Side::ask ? result.initial_ask[r.asset] : result.initial_bid[r.asset];
        std::optional<Direction> dir = r.direction;
        if (!dir) {
            if (!last || r.price == *last) {
                if (!last) initial = r.price;
                last = r.price;
                ++report.unchanged;
                continue;
            }
            dir = r.price > *last ? Direction::up : Direction::down;
        } else if (!last) {
            const double move = config.tick_size > 0.0 ? config.tick_size : 0.0;
            initial = *dir == Direction::up ? r.price - move : r.price + move;
        }
        last = r.price;
        const StreamId id{static_cast<std::uint32_t>(r.asset), r.side, *dir};
        pending.push_back({r.ts, MarkedEvent{0.0, static_cast<std::uint32_t>(id.index()), r.volume}, r.price});
    }
    for (std::size_t a = 0; a < n_assets; ++a) {
        // a side never quoted takes the other side's initial quote
        if (std::isnan(result.initial_ask[a])) result.initial_ask[a] = result.initial_bid[a];
        if (std::isnan(result.initial_bid[a])) result.initial_bid[a] = result.initial_ask[a];
    }

    result.origin_ms = pending.empty() ? 0 : pending.front().ts;
    std::vector<std::size_t> order(pending.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    for (auto& p : pending) p.event.time = static_cast<double>(p.ts - result.origin_ms) / 1000.0;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return event_before(pending[x].event, pending[y].event); });
    for (std::size_t k : order) {
        result.events.events.push_back(pending[k].event);
        result.prices.push_back(pending[k].price);
    }
    result.events.horizon = Horizon{0.0, pending.empty() ? 0.0 : result.events.events.back().time};
    result.events.complete = true;
    report.events = result.events.events.size();
    return result;
}

IngestResult ingest(const std::filesystem::path& path, const IngestConfig& config) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return ingest(in, config);
}

std::vector<double> event_prices(const EventStream& events, const std::vector<orderbook::PricePath>& paths) {
    std::vector<std::size_t> next(paths.size(), 0);
    std::vector<double> prices;
    prices.reserve(events.events.size());
    for (const auto& e : events.events) {
        const StreamId id = StreamId::from_index(e.stream);
        if (id.asset >= paths.size()) throw InputError("event_prices: event of an asset without a price path");
        const auto& p = paths[id.asset];
        const std::size_t k = next[id.asset]++;
        if (k >= p.times.size()) throw InputError("event_prices: price path shorter than the asset's events");
        const std::int64_t ticks = id.side == Side::ask ? p.ask_ticks[k] : p.bid_ticks[k];
        prices.push_back(p.p0 + static_cast<double>(ticks) * p.tick);
    }
    return prices;
}

int tick_decimals(double tick) {
    if (!(tick > 0.0)) return 12;
    for (int d = 0; d < 12; ++d) {
        const double scaled = tick * std::pow(10.0, d);
        if (std::abs(scaled - std::round(scaled)) < 1e-9 * std::max(1.0, scaled)) return d;
    }
    return 12;
}

std::vector<std::string> asset_names(const std::vector<std::string>& names, std::size_t assets) {
    if (names.empty()) {
        std::vector<std::string> out;
        for (std::size_t a = 0; a < assets; ++a) out.push_back("A" + std::to_string(a));
        return out;
    }
    if (names.size() != assets) {
        throw InputError("expected " + std::to_string(assets) + " asset names, got " + std::to_string(names.size()));
    }
    return names;
}

void write_events(std::ostream& out, const EventStream& events, const std::vector<std::string>& assets,
                  const std::vector<double>& prices, double tick, std::int64_t origin_ms) {
    if (prices.size() != events.events.size()) throw InputError("write_events: one price per event required");
    const int decimals = tick_decimals(tick);
    out << "timestamp_ms,asset,side,direction,price,volume\n";
    for (std::size_t k = 0; k < events.events.size(); ++k) {
        const MarkedEvent& e = events.events[k];
        const StreamId id = StreamId::from_index(e.stream);
        if (id.asset >= assets.size()) throw InputError("write_events: asset index without a name");
        out << origin_ms + std::llround(e.time * 1000.0) << ',' << assets[id.asset] << ','
            << (id.side == Side::ask ? 'a' : 'b') << ',' << (id.direction == Direction::up ? '+' : '-') << ','
            << fmt_fixed(prices[k], decimals) << ',' << fmt17(e.volume) << '\n';
    }
}

void write_prices(std::ostream& out, const std::vector<orderbook::PricePath>& paths,
                  const std::vector<std::string>& assets) {
    out << "time,asset,ask,bid\n";
    for (const auto& p : paths) {
        if (p.asset >= assets.size()) throw InputError("write_prices: asset index without a name");
        const int decimals = tick_decimals(p.tick);
        const std::string& name = assets[p.asset];
        auto row = [&](double t, std::int64_t ask, std::int64_t bid) {
            out << fmt17(t) << ',' << name << ',' << fmt_fixed(p.p0 + static_cast<double>(ask) * p.tick, decimals) << ','
                << fmt_fixed(p.p0 + static_cast<double>(bid) * p.tick, decimals) << '\n';
        };
        row(p.horizon.start, p.initial_spread_ticks, 0);
        for (std::size_t k = 0; k < p.times.size(); ++k) row(p.times[k], p.ask_ticks[k], p.bid_ticks[k]);
    }
}

std::string serialize_params(const ParameterSet& params) {
    params.validate();
    const std::size_t n = params.dimension();
    std::ostringstream out;
    out << "# marked Hawkes parameters\n";
    out << "schema_version = " << kSchemaVersion << '\n';
    out << "assets = " << params.assets << '\n';
    out << "streams = " << n << '\n';
    for (std::size_t i = 0; i < n; ++i) out << "mu[" << i << "] = " << fmt17(params.mu[i]) << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out << "branching[" << i << "][" << j << "] = " << fmt17(params.nu(i, j)) << '\n';
        }
    }
    for (std::size_t i = 0; i < n; ++i) out << "decay[" << i << "] = " << fmt17(params.kernels[i].decay) << '\n';
    for (std::size_t j = 0; j < n; ++j) {
        out << "impact_exponent[" << j << "] = " << fmt17(params.impacts[j].exponent) << '\n';
    }
    for (std::size_t j = 0; j < n; ++j) out << "mark_rate[" << j << "] = " << fmt17(params.impacts[j].mark_rate) << '\n';
    out << "end\n";
    return out.str();
}

ParameterSet deserialize_params(const std::string& text) {
    std::map<std::string, std::pair<std::string, std::size_t>> values; // key -> (value, line)
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool ended = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        if (s == "end") {
            ended = true;
            break;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw InputError("params line " + std::to_string(line_no) + ": expected `key = value`");
        }
        std::string key(trim(s.substr(0, eq)));
        std::string value(trim(s.substr(eq + 1)));
        if (key.empty() || value.empty()) {
            throw InputError("params line " + std::to_string(line_no) + ": expected `key = value`");
        }
        if (!values.emplace(key, std::make_pair(value, line_no)).second) {
            throw InputError("params line " + std::to_string(line_no) + ": duplicate key " + key);
        }
    }
    if (!ended) {
        throw InputError("params: truncated after line " + std::to_string(line_no) + " (missing `end`)");
    }

    auto take = [&](const std::string& key) -> std::pair<std::string, std::size_t> {
        const auto it = values.find(key);
        if (it == values.end()) throw InputError("params: missing key " + key);
        auto v = it->second;
        values.erase(it);
        return v;
    };
    auto integer = [&](const std::string& key) {
        const auto [text_value, at] = take(key);
        const auto v = parse_number<std::size_t>(text_value);
        if (!v) throw InputError("params line " + std::to_string(at) + ": " + key + " must be a non-negative integer");
        return *v;
    };
    auto real = [&](const std::string& key, bool positive) {
        const auto [text_value, at] = take(key);
        const auto v = parse_number<double>(text_value);
        if (!v || !std::isfinite(*v)) throw InputError("params line " + std::to_string(at) + ": " + key + " is not a finite number");
        if (positive ? !(*v > 0.0) : !(*v >= 0.0)) {
            throw InputError("params line " + std::to_string(at) + ": " + key + (positive ? " must be > 0" : " must be >= 0"));
        }
        return *v;
    };

    const std::size_t version = integer("schema_version");
    if (version != kSchemaVersion) {
        throw InputError("params: schema_version " + std::to_string(version) + " is not supported (expected " +
                         std::to_string(kSchemaVersion) + ")");
    }
    const std::size_t assets = integer("assets");
    const std::size_t n = integer("streams");
    if (n == 0) throw InputError("params: streams must be > 0");
    if (assets > 0 && n != 4 * assets) throw InputError("params: streams must equal 4 * assets");
    ParameterSet p = ParameterSet::zeros(n);
    p.assets = assets;
    const auto idx = [](std::size_t i) { return "[" + std::to_string(i) + "]"; };
    for (std::size_t i = 0; i < n; ++i) p.mu[i] = real("mu" + idx(i), false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) p.nu(i, j) = real("branching" + idx(i) + idx(j), false);
    }
    for (std::size_t i = 0; i < n; ++i) p.kernels[i].decay = real("decay" + idx(i), true);
    for (std::size_t j = 0; j < n; ++j) p.impacts[j].exponent = real("impact_exponent" + idx(j), false);
    for (std::size_t j = 0; j < n; ++j) p.impacts[j].mark_rate = real("mark_rate" + idx(j), true);
    if (!values.empty()) {
        const auto& [key, v] = *values.begin();
        throw InputError("params line " + std::to_string(v.second) + ": unknown key " + key);
    }
    p.validate();
    if (assets > 0) orderbook::validate(p);
    return p;
}

ParameterSet read_params(const std::filesystem::path& path) {
    return deserialize_params(read_file(path));
}

void write_params(const std::filesystem::path& path, const ParameterSet& params) {
    write_file(path, serialize_params(params));
}

std::string fit_report_json(const FitReport& report, const std::vector<std::string>& assets) {
    using nlohmann::json;
    const ParameterSet& p = report.params;
    const std::size_t n = p.dimension();
    json j;
    j["schema_version"] = kSchemaVersion;
    j["loglik"] = report.loglik;
    j["mark_loglik"] = report.mark_loglik;
    j["spectral_radius"] = report.spectral_radius;
    j["stationary"] = report.stationary();
    j["converged"] = report.converged;
    j["iterations"] = report.iterations;
    j["optimizer_message"] = report.optimizer_message;
    json streams = json::array();
    for (std::size_t i = 0; i < n; ++i) streams.push_back(p.assets > 0 ? stream_label(i, assets) : std::to_string(i));
    j["streams"] = streams;
    json params;
    params["assets"] = p.assets;
    params["mu"] = p.mu;
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        rows.push_back(std::vector<double>(p.branching.begin() + static_cast<std::ptrdiff_t>(i * n),
                                           p.branching.begin() + static_cast<std::ptrdiff_t>((i + 1) * n)));
    }
    params["branching"] = rows;
    std::vector<double> decay, exponent, rate;
    for (std::size_t i = 0; i < n; ++i) {
        decay.push_back(p.kernels[i].decay);
        exponent.push_back(p.impacts[i].exponent);
        rate.push_back(p.impacts[i].mark_rate);
    }
    params["decay"] = decay;
    params["impact_exponent"] = exponent;
    params["mark_rate"] = rate;
    j["params"] = params;
    const ConstraintSet& c = report.constraints;
    j["constraints"] = {{"mu_groups", c.mu_groups},
                        {"tied_decays", c.tied_decays},
                        {"tied_impact_exponents", c.tied_impact_exponents},
                        {"floored_streams", c.floored_streams},
                        {"inactive_streams", c.inactive_streams},
                        {"free_parameters", c.free_parameters}};
    json marks = json::array();
    for (std::size_t i = 0; i < report.marks.size(); ++i) {
        const MarkFit& m = report.marks[i];
        json tail = json::array();
        for (const auto& t : m.tail) {
            tail.push_back({{"x", t.x}, {"empirical", t.empirical}, {"exponential", t.exponential}, {"gaussian", t.gaussian}});
        }
        marks.push_back({{"stream", i},
                         {"count", m.count},
                         {"low_confidence", m.low_confidence},
                         {"beta", m.beta},
                         {"ks_exponential", m.ks_exponential},
                         {"gaussian_mean", m.gaussian_mean},
                         {"gaussian_sd", m.gaussian_sd},
                         {"ks_gaussian", m.ks_gaussian},
                         {"preferred", m.preferred == MarkFamily::exponential ? "exponential" : "gaussian"},
                         {"tail", tail}});
    }
    j["marks"] = marks;
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
    if (!out) throw InputError("failed writing " + path.string());
}

} // namespace hawkeslob::io
