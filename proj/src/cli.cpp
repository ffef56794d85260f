#include "hawkeslob/cli.hpp"

#include "hawkeslob/analytics.hpp"
#include "hawkeslob/errors.hpp"
#include "hawkeslob/estimator.hpp"
#include "hawkeslob/forecast.hpp"
#include "hawkeslob/gof.hpp"
#include "hawkeslob/io.hpp"
#include "hawkeslob/simulator.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace hawkeslob::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct NonStationary : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> parse_reals(const std::string& s, const std::string& flag) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || !std::isfinite(v)) throw InputError(flag + ": not a number: " + item);
        out.push_back(v);
    }
    return out;
}

ImpactLadder parse_ladder(const std::string& s) {
    ImpactLadder ladder;
    for (const auto& item : split_list(s)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw InputError("--ladder: expected offset:volume, got " + item);
        try {
            std::size_t u1 = 0, u2 = 0;
            const std::string a = item.substr(0, colon), b = item.substr(colon + 1);
            const long long offset = std::stoll(a, &u1);
            const double volume = std::stod(b, &u2);
            if (u1 != a.size() || u2 != b.size()) throw InputError("--ladder: malformed level " + item);
            ladder.levels.push_back({offset, volume});
        } catch (const std::logic_error&) {
            throw InputError("--ladder: malformed level " + item);
        }
    }
    ladder.validate();
    return ladder;
}

void prepare_output(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory " + dir.string());
}

void write_json(const fs::path& path, const json& j) {
    io::write_file(path, j.dump(2) + "\n");
}

json curve_json(const analytics::Curve& c) {
    json points = json::array();
    for (const auto& p : c.points) {
        points.push_back({{"tau", p.tau}, {"value", p.value ? json(*p.value) : json(nullptr)}});
    }
    return points;
}

void write_curve(const fs::path& path, const analytics::Curve& c, const std::string& value_name) {
    std::ostringstream out;
    out << "tau," << value_name << '\n';
    for (const auto& p : c.points) out << fmt17(p.tau) << ',' << (p.value ? fmt17(*p.value) : "") << '\n';
    io::write_file(path, out.str());
}

json ks_json(const KsResult& r) {
    return {{"distance", r.distance}, {"p_value", r.p_value}, {"n", r.n}};
}

// options shared by the data-reading subcommands
struct DataOptions {
    std::string input;
    std::string assets;
    double tick = 0.0;
    bool strict = false;
    bool midnight = false;
    double spread_multiple = 0.0;

    void add(CLI::App* app, double default_tick) {
        tick = default_tick;
        app->add_option("--input", input, "event file (timestamp_ms,asset,side,direction,price,volume)")->required();
        app->add_option("--assets", assets, "comma-separated asset symbols to keep, in stream order");
        app->add_option("--tick-size", tick, "price tick; enables the lattice check")->check(CLI::NonNegativeNumber);
        app->add_flag("--strict", strict, "drop off-lattice rows; non-stationary fits exit with code 4");
        app->add_flag("--midnight-filter", midnight, "drop rows within one minute of 00:00 UTC");
        app->add_option("--spread-filter", spread_multiple, "drop rows whose spread exceeds this multiple of the median")
            ->check(CLI::NonNegativeNumber);
    }

    [[nodiscard]] io::IngestResult load(std::ostream& err) const {
        io::IngestConfig cfg;
        cfg.assets = split_list(assets);
        cfg.tick_size = tick;
        cfg.strict = strict;
        cfg.midnight_filter = midnight;
        cfg.spread_multiple = spread_multiple;
        io::IngestResult r = io::ingest(fs::path(input), cfg);
        for (const auto& line : r.report.log) err << "ingest: " << line << '\n';
        return r;
    }
};

json ingest_json(const io::IngestResult& r) {
    const auto& rep = r.report;
    return {{"assets", r.assets},
            {"origin_ms", r.origin_ms},
            {"rows", rep.rows},
            {"events", rep.events},
            {"bad_rows", rep.bad_rows},
            {"other_assets", rep.other_assets},
            {"nonpositive", rep.nonpositive},
            {"out_of_order", rep.out_of_order},
            {"duplicates", rep.duplicates},
            {"midnight", rep.midnight},
            {"off_lattice", rep.off_lattice},
            {"wide_spread", rep.wide_spread},
            {"unchanged", rep.unchanged}};
}

std::vector<std::string> labels(std::size_t n, const std::vector<std::string>& assets) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(stream_label(i, assets));
    return out;
}

// Event data sized for a parameter set: asset names padded when the data lacks some assets.
std::vector<std::string> names_for(const ParameterSet& params, const io::IngestResult& data) {
    if (params.assets == 0) throw InputError("parameter file describes a generic system; an order-book set is required");
    if (data.assets.size() > params.assets) {
        throw InputError("data has " + std::to_string(data.assets.size()) + " assets, parameters have " +
                         std::to_string(params.assets));
    }
    std::vector<std::string> names = data.assets;
    for (std::size_t a = names.size(); a < params.assets; ++a) names.push_back("A" + std::to_string(a));
    return names;
}

// ---- simulate ----
struct SimulateCmd {
    std::string params_path, output, assets;
    double horizon = 0.0, tick = 1e-5, p0 = 1.0, burn_in = 0.1;
    std::uint64_t seed = 0;
    std::int64_t spread_ticks = 1;
    std::size_t max_events = 50'000'000;
    bool allow_nonstationary = false;

    void add(CLI::App* app) {
        app->add_option("--params", params_path, "parameter file")->required();
        app->add_option("--horizon", horizon, "simulation length in seconds")->required()->check(CLI::PositiveNumber);
        app->add_option("--output", output, "output directory")->required();
        app->add_option("--seed", seed, "random seed");
        app->add_option("--assets", assets, "comma-separated asset symbols");
        app->add_option("--tick-size", tick, "price tick")->check(CLI::PositiveNumber);
        app->add_option("--p0", p0, "initial bid price")->check(CLI::PositiveNumber);
        app->add_option("--initial-spread-ticks", spread_ticks, "initial spread in ticks");
        app->add_option("--max-events", max_events, "event cap");
        app->add_option("--burn-in", burn_in, "leading fraction excluded from the reported rates")
            ->check(CLI::Range(0.0, 0.99));
        app->add_flag("--allow-nonstationary", allow_nonstationary, "simulate even if the spectral radius is >= 1");
    }

    int run(std::ostream& out) const {
        const ParameterSet params = io::read_params(params_path);
        if (params.assets == 0) throw InputError("simulate needs an order-book parameter set (assets > 0)");
        const auto names = io::asset_names(split_list(assets), params.assets);
        SimConfig cfg;
        cfg.horizon_end = horizon;
        cfg.seed = seed;
        cfg.p0 = p0;
        cfg.tick = tick;
        cfg.initial_spread_ticks = spread_ticks;
        cfg.max_events = max_events;
        cfg.allow_nonstationary = allow_nonstationary;
        const SimResult sim = simulate(params, cfg);
        prepare_output(output);
        std::ostringstream events, prices;
        io::write_events(events, sim.events, names, io::event_prices(sim.events, sim.prices), tick);
        io::write_prices(prices, sim.prices, names);
        io::write_file(fs::path(output) / "events.csv", events.str());
        io::write_file(fs::path(output) / "prices.csv", prices.str());
        const std::size_t n = params.dimension();
        json j;
        j["seed"] = seed;
        j["horizon"] = horizon;
        j["events"] = sim.events.size();
        j["proposals"] = sim.proposals;
        j["truncated"] = sim.truncated;
        j["spectral_radius"] = spectral_radius(params);
        j["streams"] = labels(n, names);
        j["counts"] = count_per_stream(sim.events, n);
        j["burn_in"] = burn_in;
        j["rates"] = measured_rates(sim.events, n, burn_in);
        write_json(fs::path(output) / "simulate.json", j);
        out << "simulated " << sim.events.size() << " events on [0, " << horizon << "]\n";
        return kExitOk;
    }
};

// ---- fit ----
struct FitCmd {
    DataOptions data;
    std::string output;
    double window = 0.0;
    bool tie_decays = false, tie_exponents = false;
    std::size_t max_iterations = 500;

    void add(CLI::App* app) {
        data.add(app, 0.0);
        app->add_option("--output", output, "output directory")->required();
        app->add_option("--window", window, "fit consecutive windows of this many seconds and average them")
            ->check(CLI::NonNegativeNumber);
        app->add_flag("--tie-decays", tie_decays, "one decay shared by all streams");
        app->add_flag("--tie-exponents", tie_exponents, "one impact exponent shared by all streams");
        app->add_option("--max-iterations", max_iterations, "optimizer iteration cap");
    }

    int run(std::ostream& out, std::ostream& err) const {
        const io::IngestResult d = data.load(err);
        if (d.assets.empty()) throw InputError("no events to fit");
        prepare_output(output);
        write_json(fs::path(output) / "ingest.json", ingest_json(d));
        const auto pattern = orderbook::build_pattern(d.assets.size());
        FitOptions opt;
        opt.max_iterations = max_iterations;
        opt.tie_decays = tie_decays;
        opt.tie_impact_exponents = tie_exponents;
        const FitReport report = fit(d.events, pattern, opt);
        io::write_params(fs::path(output) / "params.txt", report.params);
        io::write_file(fs::path(output) / "fit_report.json", io::fit_report_json(report, d.assets));
        for (const auto& w : report.warnings) err << "fit: " << w << '\n';
        bool stationary = report.stationary();
        if (window > 0.0) {
            const WindowedFit wf = fit_windows(d.events, pattern, window, opt);
            json windows = json::array();
            for (std::size_t k = 0; k < wf.reports.size(); ++k) {
                const FitReport& r = wf.reports[k];
                windows.push_back({{"start", wf.windows[k].start},
                                   {"end", wf.windows[k].end},
                                   {"loglik", r.loglik},
                                   {"spectral_radius", r.spectral_radius},
                                   {"converged", r.converged},
                                   {"mu", r.params.mu},
                                   {"branching", r.params.branching}});
            }
            json j{{"window", window},
                   {"windows", windows},
                   {"average_spectral_radius", wf.average_spectral_radius},
                   {"warnings", wf.warnings}};
            write_json(fs::path(output) / "windows.json", j);
            io::write_params(fs::path(output) / "params_window_average.txt", wf.average);
            stationary = stationary && wf.average_spectral_radius < 1.0;
        }
        out << "fit " << d.events.size() << " events: loglik " << fmt17(report.loglik) << ", spectral radius "
            << fmt17(report.spectral_radius) << '\n';
        if (data.strict && !stationary) throw NonStationary("fitted parameters are non-stationary (spectral radius >= 1)");
        return kExitOk;
    }
};

// ---- gof ----
struct GofCmd {
    DataOptions data;
    std::string params_path, output;
    double level = 0.01;

    void add(CLI::App* app) {
        data.add(app, 0.0);
        app->add_option("--params", params_path, "parameter file")->required();
        app->add_option("--output", output, "output directory")->required();
        app->add_option("--level", level, "test level")->check(CLI::Range(1e-12, 0.5));
    }

    int run(std::ostream& out, std::ostream& err) const {
        const ParameterSet params = io::read_params(params_path);
        const io::IngestResult d = data.load(err);
        const auto names = names_for(params, d);
        const GofReport report = goodness_of_fit(params, d.events, level);
        const auto residuals = all_rescaled_residuals(params, d.events);
        prepare_output(output);
        json streams = json::array();
        for (const auto& s : report.streams) {
            const std::string label = stream_label(s.stream, names);
            std::ostringstream col;
            for (double r : residuals[s.stream]) col << fmt17(r) << '\n';
            io::write_file(fs::path(output) / ("residuals_" + label + ".txt"), col.str());
            streams.push_back({{"stream", label},
                               {"events", s.events},
                               {"tested", s.tested},
                               {"residual_mean", s.residual_mean},
                               {"ks", ks_json(s.ks)},
                               {"rejected", s.rejected},
                               {"marks_ks", ks_json(s.marks)}});
        }
        json j{{"level", report.level},
               {"bonferroni_level", report.bonferroni_level},
               {"streams", streams},
               {"pooled", ks_json(report.pooled)},
               {"pooled_rejected", report.pooled_rejected},
               {"any_rejected_bonferroni", report.any_rejected_bonferroni},
               {"warnings", report.warnings}};
        write_json(fs::path(output) / "gof.json", j);
        out << "pooled KS distance " << fmt17(report.pooled.distance) << ", p " << fmt17(report.pooled.p_value) << '\n';
        return kExitOk;
    }
};

// ---- analyze ----
struct AnalyzeCmd {
    DataOptions data;
    std::string output, taus, source = "mid";
    double grid_step = 0.1, burn_in = 0.0;

    void add(CLI::App* app) {
        data.add(app, 1e-5);
        app->add_option("--output", output, "output directory")->required();
        app->add_option("--grid-step", grid_step, "base sampling grid in seconds")->check(CLI::PositiveNumber);
        app->add_option("--taus", taus, "comma-separated lags in seconds (multiples of the grid step)");
        app->add_option("--burn-in", burn_in, "leading fraction of the horizon skipped")->check(CLI::Range(0.0, 0.99));
        app->add_option("--price", source, "price used for the curves")->check(CLI::IsMember({"mid", "last"}));
    }

    int run(std::ostream& out, std::ostream& err) const {
        if (!(data.tick > 0.0)) throw InputError("analyze needs --tick-size > 0");
        const io::IngestResult d = data.load(err);
        const std::vector<double> lags = taus.empty() ? analytics::default_taus(grid_step) : parse_reals(taus, "--taus");
        const Horizon h = d.events.horizon;
        const auto grid = analytics::RegularGrid::covering(h.start + burn_in * h.length(), h.end, grid_step);
        const auto paths = d.price_paths(data.tick);
        const auto kind = source == "mid" ? analytics::PriceSource::mid : analytics::PriceSource::last_move;
        prepare_output(output);

        std::vector<std::vector<double>> logp;
        json signature = json::array();
        std::vector<std::string> warnings;
        for (std::size_t a = 0; a < d.assets.size(); ++a) {
            logp.push_back(analytics::log_price_on_grid(paths[a], grid, kind));
            const auto curve = analytics::signature_plot(logp.back(), grid_step, lags);
            write_curve(fs::path(output) / ("signature_" + d.assets[a] + ".csv"), curve, "variance");
            json entry{{"asset", d.assets[a]}, {"curve", curve_json(curve)}};
            try {
                const auto fit = analytics::fit_power_law(curve);
                entry["power_law"] = {{"exponent", fit.exponent}, {"prefactor", fit.prefactor}, {"r_squared", fit.r_squared}};
            } catch (const InputError& e) {
                entry["power_law"] = nullptr;
                warnings.push_back("signature " + d.assets[a] + ": " + e.what());
            }
            for (const auto& w : curve.warnings) warnings.push_back("signature " + d.assets[a] + ": " + w);
            signature.push_back(entry);

            std::ostringstream table;
            table << "duration,volume\n";
            EventStream own;
            own.horizon = d.events.horizon;
            for (const auto& e : d.events.events) {
                if (StreamId::from_index(e.stream).asset == a) own.events.push_back(e);
            }
            for (const auto& row : analytics::duration_volume_table(own)) {
                table << fmt17(row.duration) << ',' << fmt17(row.volume) << '\n';
            }
            io::write_file(fs::path(output) / ("durations_" + d.assets[a] + ".csv"), table.str());
        }
        json epps = json::array();
        for (std::size_t a = 0; a < d.assets.size(); ++a) {
            for (std::size_t b = a + 1; b < d.assets.size(); ++b) {
                const auto curve = analytics::epps(logp[a], logp[b], grid_step, lags);
                write_curve(fs::path(output) / ("epps_" + d.assets[a] + "_" + d.assets[b] + ".csv"), curve, "correlation");
                epps.push_back({{"assets", {d.assets[a], d.assets[b]}}, {"curve", curve_json(curve)}});
                for (const auto& w : curve.warnings) warnings.push_back("epps " + d.assets[a] + "/" + d.assets[b] + ": " + w);
            }
        }
        json j{{"grid", {{"start", grid.start}, {"step", grid.step}, {"count", grid.count}}},
               {"price", source},
               {"signature", signature},
               {"epps", epps},
               {"warnings", warnings}};
        write_json(fs::path(output) / "analyze.json", j);
        for (const auto& w : warnings) err << "analyze: " << w << '\n';
        out << "analyzed " << d.assets.size() << " assets on " << grid.count << " grid points\n";
        return kExitOk;
    }
};

// ---- forecast ----
struct ForecastCmd {
    DataOptions data;
    std::string params_path, output, taus;
    std::size_t rollouts = 0;
    std::uint64_t seed = 0;
    double rollout_horizon = 1.0;

    void add(CLI::App* app) {
        data.add(app, 0.0);
        app->add_option("--params", params_path, "parameter file")->required();
        app->add_option("--output", output, "output directory")->required();
        app->add_option("--taus", taus, "comma-separated lags in seconds");
        app->add_option("--rollouts", rollouts, "Monte Carlo rollouts (0 = frozen history only)");
        app->add_option("--seed", seed, "random seed for rollouts");
        app->add_option("--horizon", rollout_horizon, "rollout length in seconds")->check(CLI::PositiveNumber);
    }

    int run(std::ostream& out, std::ostream& err) const {
        const ParameterSet params = io::read_params(params_path);
        const io::IngestResult d = data.load(err);
        const auto names = names_for(params, d);
        std::vector<double> lags;
        if (taus.empty()) {
            double mu = 0.0;
            for (double m : params.mu) mu += m;
            const double span = mu > 0.0 ? 5.0 / mu : 5.0;
            for (int k = 0; k <= 50; ++k) lags.push_back(span * k / 50.0);
        } else {
            lags = parse_reals(taus, "--taus");
        }
        const NextEventForecast f = next_event_forecast(params, d.events, lags);
        const std::size_t n = params.dimension();
        const auto stream_names = labels(n, names);
        prepare_output(output);
        std::ostringstream table;
        table << "tau";
        for (const auto& s : stream_names) table << ',' << s;
        table << ",any\n";
        for (std::size_t k = 0; k < lags.size(); ++k) {
            table << fmt17(lags[k]);
            for (std::size_t i = 0; i < n; ++i) table << ',' << fmt17(f.survival[i][k]);
            table << ',' << fmt17(f.any_survival[k]) << '\n';
        }
        io::write_file(fs::path(output) / "survival.csv", table.str());
        json j{{"mode", "frozen_history"},
               {"t0", f.t0},
               {"streams", stream_names},
               {"hazard_shares", f.hazard_shares},
               {"most_probable", stream_names[f.most_probable]},
               {"expected_wait", f.expected_wait},
               {"expected_next", f.expected_next}};
        if (rollouts > 0) {
            RolloutConfig rc;
            rc.rollouts = rollouts;
            rc.seed = seed;
            rc.horizon = rollout_horizon;
            const RolloutResult r = rollout(params, d.events, rc);
            j["rollout"] = {{"rollouts", rollouts},
                            {"seed", seed},
                            {"horizon", rollout_horizon},
                            {"first_stream_frequency", r.first_stream_frequency},
                            {"mean_events", r.mean_events},
                            {"without_event", r.without_event}};
        }
        write_json(fs::path(output) / "forecast.json", j);
        out << "most probable next stream " << stream_names[f.most_probable] << ", expected wait "
            << fmt17(f.expected_next) << " s\n";
        return kExitOk;
    }
};

// ---- cost ----
struct CostCmd {
    std::string ladder, output;
    double quantity = 0.0, tick = 1e-5;

    void add(CLI::App* app) {
        app->add_option("--ladder", ladder, "levels as offset:volume, e.g. 0:5,1:5")->required();
        app->add_option("--quantity", quantity, "quantity to execute")->required()->check(CLI::PositiveNumber);
        app->add_option("--tick-size", tick, "price tick")->check(CLI::PositiveNumber);
        app->add_option("--output", output, "output directory");
    }

    int run(std::ostream& out) const {
        const ImpactCost c = market_impact_cost(parse_ladder(ladder), quantity, tick);
        json fills = json::array();
        for (const auto& f : c.fills) fills.push_back({{"offset", f.offset}, {"quantity", f.volume}});
        json j{{"quantity", quantity},
               {"tick", tick},
               {"cost", c.cost},
               {"filled", c.filled},
               {"unfilled", c.unfilled},
               {"complete", c.complete()},
               {"fills", fills}};
        if (!output.empty()) {
            prepare_output(output);
            write_json(fs::path(output) / "cost.json", j);
        }
        out << "cost " << fmt17(c.cost) << (c.complete() ? "" : " (ladder exhausted)") << '\n';
        return kExitOk;
    }
};

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Marked Hawkes model of the first line of a limit order book"};
    app.require_subcommand(1);
    app.allow_extras(false);
    SimulateCmd simulate_cmd;
    FitCmd fit_cmd;
    GofCmd gof_cmd;
    AnalyzeCmd analyze_cmd;
    ForecastCmd forecast_cmd;
    CostCmd cost_cmd;
    auto* s = app.add_subcommand("simulate", "simulate events and prices from a parameter file");
    auto* f = app.add_subcommand("fit", "maximum-likelihood fit of an event file");
    auto* g = app.add_subcommand("gof", "time-rescaling goodness-of-fit tests");
    auto* a = app.add_subcommand("analyze", "signature plot, Epps curve and duration tables");
    auto* fc = app.add_subcommand("forecast", "next-event survival forecast");
    auto* c = app.add_subcommand("cost", "market-impact cost of walking a ladder");
    simulate_cmd.add(s);
    fit_cmd.add(f);
    gof_cmd.add(g);
    analyze_cmd.add(a);
    forecast_cmd.add(fc);
    cost_cmd.add(c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        if (s->parsed()) return simulate_cmd.run(out);
        if (f->parsed()) return fit_cmd.run(out, err);
        if (g->parsed()) return gof_cmd.run(out, err);
        if (a->parsed()) return analyze_cmd.run(out, err);
        if (fc->parsed()) return forecast_cmd.run(out, err);
        if (c->parsed()) return cost_cmd.run(out);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const NonStationary& e) {
        err << "error: " << e.what() << '\n';
        return kExitNonStationary;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}

int run(int argc, const char* const* argv) {
    return run(argc, argv, std::cout, std::cerr);
}

} // namespace hawkeslob::cli
