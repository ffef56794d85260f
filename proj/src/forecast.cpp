#include "hawkeslob/forecast.hpp"

#include "hawkeslob/errors.hpp"
#include "hawkeslob/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace hawkeslob {
namespace {

RecursionState replay(const ParameterSet& params, const EventStream& history) {
    params.validate();
    validate(history, params.dimension());
    RecursionState state(params, history.horizon.start);
    for (const auto& e : history.events) state.add(e);
    state.advance(history.horizon.end);
    return state;
}

// Adaptive Simpson on [a, b].
template <typename F>
double simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

void check_tau(double tau) {
    if (!(tau >= 0.0) || std::isnan(tau)) throw InputError("forecast: tau must be >= 0");
}

} // namespace

FrozenHistory::FrozenHistory(const ParameterSet& params, const EventStream& history) : state_(replay(params, history)) {}

double FrozenHistory::compensator(std::size_t stream, double tau) const {
    if (stream >= dimension()) throw InputError("forecast: stream index out of range");
    check_tau(tau);
    if (std::isinf(tau)) return std::numeric_limits<double>::infinity();
    return state_.baseline(stream) * tau - state_.excitation_mass(stream) * std::expm1(-state_.decay(stream) * tau);
}

double FrozenHistory::survival(std::size_t stream, double tau) const {
    return std::exp(-compensator(stream, tau));
}

double FrozenHistory::total_survival(double tau) const {
    check_tau(tau);
    double sum = 0.0;
    for (std::size_t i = 0; i < dimension(); ++i) sum += compensator(i, tau);
    return std::exp(-sum);
}

std::vector<double> FrozenHistory::hazard_shares() const {
    const double total = state_.total_intensity();
    std::vector<double> shares(dimension(), 0.0);
    if (!(total > 0.0)) return shares;
    for (std::size_t i = 0; i < dimension(); ++i) shares[i] = state_.intensity(i) / total;
    return shares;
}

double FrozenHistory::expected_wait(std::optional<std::size_t> stream) const {
    double mu = 0.0;
    double slowest_decay = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dimension(); ++i) {
        if (stream && i != *stream) continue;
        mu += state_.baseline(i);
        slowest_decay = std::min(slowest_decay, state_.decay(i));
    }
    if (!(mu > 0.0)) return std::numeric_limits<double>::infinity();
    auto s = [&](double tau) { return stream ? survival(*stream, tau) : total_survival(tau); };
    // beyond `cut` the excitation has decayed away and the survival is exp(-mu tau) times a constant
    const double cut = std::max(60.0 / slowest_decay, 1e-12);
    const double head = integrate(s, 0.0, cut, 1e-12);
    return head + s(cut) / mu;
}

double survival(const ParameterSet& params, const EventStream& history, std::size_t stream, double tau) {
    return FrozenHistory(params, history).survival(stream, tau);
}

double survival(const ParameterSet& params, const EventStream& history, StreamId stream, double tau) {
    return survival(params, history, stream.index(), tau);
}

NextEventForecast next_event_forecast(const ParameterSet& params, const EventStream& history,
                                      std::span<const double> taus) {
    const FrozenHistory frozen(params, history);
    const std::size_t n = frozen.dimension();
    NextEventForecast f;
    f.t0 = frozen.t0();
    f.taus.assign(taus.begin(), taus.end());
    f.survival.assign(n, std::vector<double>(taus.size()));
    for (std::size_t k = 0; k < taus.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) f.survival[i][k] = frozen.survival(i, taus[k]);
        f.any_survival.push_back(frozen.total_survival(taus[k]));
    }
    f.hazard_shares = frozen.hazard_shares();
    f.most_probable = static_cast<std::size_t>(
        std::max_element(f.hazard_shares.begin(), f.hazard_shares.end()) - f.hazard_shares.begin());
    for (std::size_t i = 0; i < n; ++i) f.expected_wait.push_back(frozen.expected_wait(i));
    f.expected_next = frozen.expected_wait();
    return f;
}

double RolloutResult::empirical_survival(double tau) const {
    if (first_time.empty()) return 1.0;
    std::size_t later = 0;
    for (double t : first_time) later += t > tau ? 1 : 0;
    return static_cast<double>(later) / static_cast<double>(first_time.size());
}

RolloutResult rollout(const ParameterSet& params, const EventStream& history, const RolloutConfig& config) {
    if (config.rollouts == 0) throw InputError("rollout: need at least one rollout");
    if (!(config.horizon > 0.0) || !std::isfinite(config.horizon)) throw InputError("rollout: horizon must be > 0");
    const RecursionState start = replay(params, history);
    const std::size_t n = params.dimension();
    const double t0 = start.last_time();
    std::vector<double> mark_rates(n);
    for (std::size_t j = 0; j < n; ++j) mark_rates[j] = params.impacts[j].mark_rate;

    RolloutResult out;
    out.first_time.assign(config.rollouts, std::numeric_limits<double>::infinity());
    out.first_stream.assign(config.rollouts, 0);
    std::vector<std::vector<std::size_t>> counts(config.rollouts, std::vector<std::size_t>(n, 0));

    std::size_t threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    threads = std::min(threads, config.rollouts);
    std::vector<std::exception_ptr> errors(threads);
    auto run = [&](std::size_t worker) {
        try {
            for (std::size_t r = worker; r < config.rollouts; r += threads) {
                RecursionState state = start;
                ThinningRngs rngs(Rng(config.seed, r).next_u64(), n);
                bool first = true;
                while (auto event = next_event(state, mark_rates, rngs, t0 + config.horizon)) {
                    if (first) {
                        out.first_time[r] = event->time - t0;
                        out.first_stream[r] = event->stream;
                        first = false;
                    }
                    ++counts[r][event->stream];
                    state.add(*event);
                }
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

    out.first_stream_frequency.assign(n, 0.0);
    out.mean_events.assign(n, 0.0);
    std::size_t with_event = 0;
    for (std::size_t r = 0; r < config.rollouts; ++r) {
        if (std::isfinite(out.first_time[r])) {
            out.first_stream_frequency[out.first_stream[r]] += 1.0;
            ++with_event;
        }
        for (std::size_t j = 0; j < n; ++j) out.mean_events[j] += static_cast<double>(counts[r][j]);
    }
    out.without_event = config.rollouts - with_event;
    for (std::size_t j = 0; j < n; ++j) {
        if (with_event > 0) out.first_stream_frequency[j] /= static_cast<double>(with_event);
        out.mean_events[j] /= static_cast<double>(config.rollouts);
    }
    return out;
}

void ImpactLadder::validate() const {
    if (levels.empty()) throw InputError("impact ladder: no levels");
    if (levels.front().offset != 0) throw InputError("impact ladder: first level offset must be 0");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i].volume > 0.0) || !std::isfinite(levels[i].volume)) {
            throw InputError("impact ladder: level " + std::to_string(i) + " volume must be finite and > 0");
        }
        if (i > 0 && levels[i].offset <= levels[i - 1].offset) {
            throw InputError("impact ladder: offsets must strictly increase (level " + std::to_string(i) + ")");
        }
    }
}

ImpactCost market_impact_cost(const ImpactLadder& ladder, double quantity, double tick) {
    ladder.validate();
    if (!(quantity > 0.0) || !std::isfinite(quantity)) throw InputError("market impact: quantity must be > 0");
    if (!(tick > 0.0) || !std::isfinite(tick)) throw InputError("market impact: tick must be > 0");
    ImpactCost c;
    double remaining = quantity;
    double tick_units = 0.0; // sum of filled_i * offset_i, scaled by the tick once at the end
    for (const auto& level : ladder.levels) {
        if (remaining <= 0.0) break;
        const double take = std::min(remaining, level.volume);
        c.fills.push_back({level.offset, take});
        tick_units += take * static_cast<double>(level.offset);
        c.filled += take;
        remaining -= take;
    }
    c.unfilled = std::max(remaining, 0.0);
    // dividing by an integral 1/tick rounds once, so decimal ticks give the nearest double
    const double per_unit = std::round(1.0 / tick);
    const bool reciprocal = per_unit >= 1.0 && per_unit < 9.0e15 && std::abs(per_unit * tick - 1.0) <= 1e-15;
    c.cost = reciprocal ? tick_units / per_unit : tick_units * tick;
    return c;
}

double round_trip_cost(const orderbook::PricePath& path, double t_in, double t_out, double k,
                       const std::optional<ImpactLadder>& ladder) {
    const auto inside = [&](double t) { return t >= path.horizon.start && t <= path.horizon.end; };
    if (!inside(t_in) || !inside(t_out)) throw InputError("round trip: times must lie within the path horizon");
    if (t_out < t_in) throw InputError("round trip: exit precedes entry");
    if (!(k >= 0.0) || !std::isfinite(k)) throw InputError("round trip: quantity must be finite and >= 0");
    double cost = k * path.spread_at(t_out);
    if (ladder && k > 0.0) cost += 2.0 * market_impact_cost(*ladder, k, path.tick).cost;
    return cost;
}

ImpactLadder simulate_ladder(double mark_rate, std::size_t levels, Rng& rng) {
    if (levels == 0) throw InputError("simulate_ladder: need at least one level");
    ImpactLadder ladder;
    for (std::size_t i = 0; i < levels; ++i) {
        ladder.levels.push_back({static_cast<std::int64_t>(i), draw_mark(mark_rate, rng)});
    }
    return ladder;
}

} // namespace hawkeslob
