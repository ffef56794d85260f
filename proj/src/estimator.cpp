#include "hawkeslob/estimator.hpp"

#include "hawkeslob/errors.hpp"
#include "hawkeslob/intensity.hpp"
#include "hawkeslob/optimizer.hpp"
#include "hawkeslob/special.hpp"
#include "hawkeslob/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hawkeslob {
namespace {

// One pass over the events. The per-(target, source) state is
//   A = sum exp(-decay_i (t - t_k)) g_k
//   B = sum (t - t_k) exp(-decay_i (t - t_k)) g_k     (d A / d decay = -B)
//   C = sum exp(-decay_i (t - t_k)) dg_k / d exponent
LikelihoodGradient evaluate(const ParameterSet& params, const EventStream& data, bool with_gradient) {
    const std::size_t n = params.dimension();
    LikelihoodGradient out;
    if (with_gradient) {
        out.d_mu.assign(n, 0.0);
        out.d_branching.assign(n * n, 0.0);
        out.d_decay.assign(n, 0.0);
        out.d_exponent.assign(n, 0.0);
    }
    std::vector<double> a(n * n, 0.0), b(n * n, 0.0), c(n * n, 0.0);
    std::vector<double> g_total(n, 0.0), dg_total(n, 0.0);
    std::vector<double> scale(n), digamma_shift(n);
    for (std::size_t j = 0; j < n; ++j) {
        scale[j] = params.impacts[j].scale();
        digamma_shift[j] = std::log(params.impacts[j].mark_rate) - special::digamma(params.impacts[j].exponent + 1.0);
    }
    const auto& events = data.events;
    double now = data.horizon.start;
    double value = 0.0;

    auto decay_to = [&](double t) {
        const double dt = t - now;
        if (dt <= 0.0) return;
        for (std::size_t i = 0; i < n; ++i) {
            const double f = std::exp(-params.kernels[i].decay * dt);
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t ij = i * n + j;
                if (with_gradient) {
                    b[ij] = f * (b[ij] + dt * a[ij]);
                    c[ij] *= f;
                }
                a[ij] *= f;
            }
        }
        now = t;
    };

    std::size_t k = 0;
    while (k < events.size()) {
        decay_to(events[k].time);
        // events sharing a timestamp do not excite each other
        std::size_t group_end = k;
        while (group_end < events.size() && events[group_end].time == events[k].time) ++group_end;
        for (std::size_t e = k; e < group_end; ++e) {
            const std::size_t i = events[e].stream;
            const double decay = params.kernels[i].decay;
            double excitation = 0.0;
            for (std::size_t j = 0; j < n; ++j) excitation += params.nu(i, j) * a[i * n + j];
            const double lambda = params.mu[i] + decay * excitation;
            if (!(lambda > 0.0)) {
                out.value = -std::numeric_limits<double>::infinity();
                out.zero_intensity_event = e;
                return out;
            }
            value += std::log(lambda);
            if (with_gradient) {
                const double inv = 1.0 / lambda;
                out.d_mu[i] += inv;
                double d_decay = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const std::size_t ij = i * n + j;
                    const double nu = params.nu(i, j);
                    out.d_branching[ij] += decay * a[ij] * inv;
                    d_decay += nu * (a[ij] - decay * b[ij]);
                    out.d_exponent[j] += decay * nu * c[ij] * inv;
                }
                out.d_decay[i] += d_decay * inv;
            }
        }
        for (std::size_t e = k; e < group_end; ++e) {
            const std::size_t j = events[e].stream;
            const PowerImpact& imp = params.impacts[j];
            const double g = imp.exponent == 0.0 ? 1.0 : scale[j] * std::pow(events[e].volume, imp.exponent);
            const double dg = g * (std::log(events[e].volume) + digamma_shift[j]);
            g_total[j] += g;
            dg_total[j] += dg;
            for (std::size_t i = 0; i < n; ++i) {
                a[i * n + j] += g;
                if (with_gradient) c[i * n + j] += dg;
            }
        }
        k = group_end;
    }
    decay_to(data.horizon.end);

    const double length = data.horizon.length();
    for (std::size_t i = 0; i < n; ++i) {
        double excited = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t ij = i * n + j;
            const double nu = params.nu(i, j);
            excited += nu * (g_total[j] - a[ij]);
            if (with_gradient) {
                out.d_branching[ij] -= g_total[j] - a[ij];
                out.d_decay[i] -= nu * b[ij];
                out.d_exponent[j] -= nu * (dg_total[j] - c[ij]);
            }
        }
        value -= params.mu[i] * length + excited;
        if (with_gradient) out.d_mu[i] -= length;
    }
    out.value = value;
    return out;
}

void check_inputs(const ParameterSet& params, const EventStream& data) {
    params.validate();
    validate(data, params.dimension());
}

// Free-parameter layout: each slot is one log-transformed scalar that sets one or more
// natural parameters.
enum class SlotKind { mu, branching, decay, exponent };

struct Slot {
    SlotKind kind;
    std::vector<std::size_t> targets;
};

struct Layout {
    ParameterSet base;
    std::vector<Slot> slots;

    [[nodiscard]] ParameterSet to_params(const std::vector<double>& theta) const {
        ParameterSet p = base;
        for (std::size_t s = 0; s < slots.size(); ++s) {
            const double v = std::exp(theta[s]);
            for (std::size_t t : slots[s].targets) {
                switch (slots[s].kind) {
                case SlotKind::mu: p.mu[t] = v; break;
                case SlotKind::branching: p.branching[t] = v; break;
                case SlotKind::decay: p.kernels[t].decay = v; break;
                case SlotKind::exponent: p.impacts[t].exponent = v; break;
                }
            }
        }
        return p;
    }

    [[nodiscard]] std::vector<double> theta_of(const ParameterSet& p) const {
        std::vector<double> theta(slots.size());
        for (std::size_t s = 0; s < slots.size(); ++s) {
            double sum = 0.0;
            for (std::size_t t : slots[s].targets) {
                switch (slots[s].kind) {
                case SlotKind::mu: sum += p.mu[t]; break;
                case SlotKind::branching: sum += p.branching[t]; break;
                case SlotKind::decay: sum += p.kernels[t].decay; break;
                case SlotKind::exponent: sum += p.impacts[t].exponent; break;
                }
            }
            theta[s] = std::log(std::max(sum / static_cast<double>(slots[s].targets.size()), 1e-12));
        }
        return theta;
    }

    void chain(const LikelihoodGradient& lg, const std::vector<double>& theta, std::vector<double>& grad) const {
        for (std::size_t s = 0; s < slots.size(); ++s) {
            double d = 0.0;
            for (std::size_t t : slots[s].targets) {
                switch (slots[s].kind) {
                case SlotKind::mu: d += lg.d_mu[t]; break;
                case SlotKind::branching: d += lg.d_branching[t]; break;
                case SlotKind::decay: d += lg.d_decay[t]; break;
                case SlotKind::exponent: d += lg.d_exponent[t]; break;
                }
            }
            grad[s] = d * std::exp(theta[s]);
        }
    }
};

std::vector<double> own_durations(const EventStream& data, std::size_t stream) {
    std::vector<double> d;
    double last = std::numeric_limits<double>::quiet_NaN();
    for (const auto& e : data.events) {
        if (e.stream != stream) continue;
        if (!std::isnan(last)) d.push_back(e.time - last);
        last = e.time;
    }
    return d;
}

double initial_decay(const std::vector<double>& durations) {
    const double m = stats::median(durations);
    return m > 0.0 && std::isfinite(m) ? 1.0 / m : 1.0;
}

} // namespace

double log_likelihood(const ParameterSet& params, const EventStream& data) {
    check_inputs(params, data);
    return evaluate(params, data, false).value;
}

LikelihoodGradient log_likelihood_gradient(const ParameterSet& params, const EventStream& data) {
    check_inputs(params, data);
    return evaluate(params, data, true);
}

double mark_log_likelihood(const ParameterSet& params, const EventStream& data) {
    check_inputs(params, data);
    double sum = 0.0;
    for (const auto& e : data.events) {
        const double beta = params.impacts[e.stream].mark_rate;
        sum += std::log(beta) - beta * e.volume;
    }
    return sum;
}

MarkFit fit_marks(std::span<const double> volumes) {
    if (volumes.empty()) throw InputError("fit_marks: empty sample");
    for (double v : volumes) {
        if (!(v > 0.0) || !std::isfinite(v)) throw InputError("fit_marks: volumes must be finite and > 0");
    }
    std::vector<double> sorted(volumes.begin(), volumes.end());
    std::sort(sorted.begin(), sorted.end());
    MarkFit fit;
    fit.count = sorted.size();
    fit.low_confidence = fit.count < 30;
    const double m = stats::mean(sorted);
    fit.beta = 1.0 / m;
    fit.gaussian_mean = m;
    fit.gaussian_sd = stats::stddev(sorted);
    const double beta = fit.beta;
    const double mean = fit.gaussian_mean;
    // a degenerate sample gets a vanishing but positive spread
    const double sd = fit.gaussian_sd > 0.0 ? fit.gaussian_sd : 1e-12 * std::max(1.0, mean);
    fit.gaussian_sd = sd;
    auto exp_cdf = [beta](double x) { return 1.0 - std::exp(-beta * x); };
    auto gauss_cdf = [mean, sd](double x) { return stats::normal_cdf((x - mean) / sd); };
    fit.ks_exponential = stats::ks_distance(sorted, exp_cdf);
    fit.ks_gaussian = stats::ks_distance(sorted, gauss_cdf);
    fit.preferred = fit.ks_exponential <= fit.ks_gaussian ? MarkFamily::exponential : MarkFamily::gaussian;

    constexpr std::size_t kTailPoints = 20;
    const double lo = sorted.front();
    const double hi = sorted.back();
    const double n = static_cast<double>(sorted.size());
    for (std::size_t k = 0; k < kTailPoints; ++k) {
        const double x = hi > lo ? lo * std::pow(hi / lo, static_cast<double>(k) / (kTailPoints - 1)) : lo;
        const auto above = static_cast<double>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x));
        fit.tail.push_back(TailPoint{x, above / n, std::exp(-beta * x), 1.0 - gauss_cdf(x)});
        if (!(hi > lo)) break;
    }
    return fit;
}

std::vector<MarkFit> fit_marks(const EventStream& data, std::size_t n_streams) {
    std::vector<std::vector<double>> volumes(n_streams);
    for (const auto& e : data.events) {
        if (e.stream >= n_streams) throw InputError("fit_marks: stream index out of range");
        volumes[e.stream].push_back(e.volume);
    }
    std::vector<MarkFit> fits;
    fits.reserve(n_streams);
    for (const auto& v : volumes) fits.push_back(v.empty() ? MarkFit{} : fit_marks(v));
    return fits;
}

FitReport fit(const EventStream& data, const orderbook::InteractionPattern& pattern, const FitOptions& options) {
    const std::size_t n = pattern.n;
    if (n == 0 || pattern.allowed.size() != n * n) throw InputError("fit: invalid interaction pattern");
    validate(data, n);
    if (data.empty()) throw InputError("fit: no events");
    const double length = data.horizon.length();
    if (!(length > 0.0)) throw InputError("fit: horizon has zero length");
    if (options.initial && options.initial->dimension() != n) throw InputError("fit: initial parameters dimension mismatch");

    FitReport report;
    const auto counts = count_per_stream(data, n);
    report.marks = fit_marks(data, n);

    Layout layout;
    layout.base = options.initial ? *options.initial : ParameterSet::zeros(n);
    layout.base.assets = pattern.assets;
    for (std::size_t j = 0; j < n; ++j) {
        layout.base.impacts[j].mark_rate = report.marks[j].count > 0 ? report.marks[j].beta : 1.0;
        if (counts[j] == 0) report.constraints.inactive_streams.push_back(j);
    }

    // baselines
    std::vector<std::vector<std::size_t>> groups;
    if (pattern.assets > 0) {
        for (std::uint32_t a = 0; a < pattern.assets; ++a) {
            for (Direction dir : {Direction::up, Direction::down}) {
                groups.push_back({StreamId{a, Side::ask, dir}.index(), StreamId{a, Side::bid, dir}.index()});
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) groups.push_back({i});
    }
    for (const auto& group : groups) {
        std::size_t total = 0;
        for (std::size_t i : group) total += counts[i];
        if (total == 0) {
            for (std::size_t i : group) {
                layout.base.mu[i] = options.mu_floor;
                report.constraints.floored_streams.push_back(i);
            }
            continue;
        }
        const double start = 0.5 * static_cast<double>(total) / static_cast<double>(group.size()) / length;
        for (std::size_t i : group) {
            if (!options.initial) layout.base.mu[i] = start;
        }
        layout.slots.push_back(Slot{SlotKind::mu, group});
    }
    report.constraints.mu_groups = groups;

    // branching: free on allowed cells between active streams, zero elsewhere
    std::vector<std::size_t> free_cells;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const bool free = pattern(i, j) && counts[i] > 0 && counts[j] > 0;
            if (free) {
                free_cells.push_back(i * n + j);
                if (!options.initial) layout.base.branching[i * n + j] = 0.3;
            } else {
                layout.base.branching[i * n + j] = 0.0;
            }
        }
    }
    if (!options.initial) {
        const double radius = spectral_radius(layout.base);
        if (radius >= 1.0) {
            for (std::size_t c : free_cells) layout.base.branching[c] *= 0.6 / radius;
        }
    }
    if (options.initial) {
        for (std::size_t c : free_cells) layout.base.branching[c] = std::max(layout.base.branching[c], 1e-6);
    }
    for (std::size_t c : free_cells) layout.slots.push_back(Slot{SlotKind::branching, {c}});

    // decays, only identifiable for targets with events and some excitation
    std::vector<std::size_t> decay_targets;
    for (std::size_t i = 0; i < n; ++i) {
        const bool excited = std::any_of(free_cells.begin(), free_cells.end(), [&](std::size_t c) { return c / n == i; });
        if (counts[i] > 0 && excited) decay_targets.push_back(i);
        if (!options.initial) layout.base.kernels[i].decay = initial_decay(own_durations(data, i));
    }
    if (options.tie_decays && !decay_targets.empty()) {
        if (!options.initial) {
            std::vector<double> all;
            for (std::size_t k = 1; k < data.events.size(); ++k) all.push_back(data.events[k].time - data.events[k - 1].time);
            const double d0 = initial_decay(all);
            for (std::size_t i = 0; i < n; ++i) layout.base.kernels[i].decay = d0;
        }
        layout.slots.push_back(Slot{SlotKind::decay, decay_targets});
    } else {
        for (std::size_t i : decay_targets) layout.slots.push_back(Slot{SlotKind::decay, {i}});
    }
    report.constraints.tied_decays = options.tie_decays;

    // impact exponents of sources that excite something
    std::vector<std::size_t> exponent_sources;
    for (std::size_t j = 0; j < n; ++j) {
        const bool excites = std::any_of(free_cells.begin(), free_cells.end(), [&](std::size_t c) { return c % n == j; });
        if (excites) exponent_sources.push_back(j);
        if (!options.initial) layout.base.impacts[j].exponent = 1.0;
    }
    if (options.fit_impact_exponents && !exponent_sources.empty()) {
        if (options.initial) {
            for (std::size_t j : exponent_sources) {
                layout.base.impacts[j].exponent = std::max(layout.base.impacts[j].exponent, 1e-3);
            }
        }
        if (options.tie_impact_exponents) {
            layout.slots.push_back(Slot{SlotKind::exponent, exponent_sources});
        } else {
            for (std::size_t j : exponent_sources) layout.slots.push_back(Slot{SlotKind::exponent, {j}});
        }
    }
    report.constraints.tied_impact_exponents = options.tie_impact_exponents;
    report.constraints.free_parameters = layout.slots.size();

    auto objective = [&](const std::vector<double>& theta, std::vector<double>& grad) {
        for (double v : theta) {
            if (!std::isfinite(v) || v > 50.0) return std::numeric_limits<double>::infinity();
        }
        const ParameterSet p = layout.to_params(theta);
        const LikelihoodGradient lg = evaluate(p, data, true);
        if (!std::isfinite(lg.value)) return std::numeric_limits<double>::infinity();
        layout.chain(lg, theta, grad);
        for (double& g : grad) g = -g;
        return -lg.value;
    };

    optim::Options opt;
    opt.max_iterations = options.max_iterations;
    opt.relative_tolerance = options.tolerance;
    const auto result = optim::minimize_bfgs(objective, layout.theta_of(layout.base), opt);

    report.params = layout.to_params(result.x);
    report.loglik = -result.value;
    report.mark_loglik = mark_log_likelihood(report.params, data);
    report.spectral_radius = spectral_radius(report.params);
    report.converged = result.converged;
    report.iterations = result.iterations;
    report.optimizer_message = result.message;
    if (!report.converged) report.warnings.push_back("optimizer did not converge: " + result.message);
    if (!report.stationary()) {
        report.warnings.push_back("fitted branching spectral radius " + std::to_string(report.spectral_radius) +
                                  " >= 1: non-stationary");
    }
    for (std::size_t i : report.constraints.floored_streams) {
        report.warnings.push_back("stream " + std::to_string(i) + " has no events; baseline held at the floor");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (report.marks[j].count > 0 && report.marks[j].low_confidence) {
            report.warnings.push_back("stream " + std::to_string(j) + ": fewer than 30 marks, low-confidence mark fit");
        }
    }
    return report;
}

WindowedFit fit_windows(const EventStream& data, const orderbook::InteractionPattern& pattern, double window_length,
                        const FitOptions& options) {
    if (!(window_length > 0.0)) throw InputError("fit_windows: window length must be > 0");
    const double total = data.horizon.length();
    const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(total / window_length)));
    WindowedFit out;
    std::size_t next = 0;
    for (std::size_t w = 0; w < count; ++w) {
        const double start = data.horizon.start + static_cast<double>(w) * window_length;
        const double end = w + 1 == count ? data.horizon.end : start + window_length;
        EventStream window;
        window.horizon = Horizon{start, end};
        while (next < data.events.size() && (data.events[next].time < end || (w + 1 == count))) {
            window.events.push_back(data.events[next]);
            ++next;
        }
        if (window.events.empty()) {
            out.warnings.push_back("window " + std::to_string(w) + " has no events; skipped");
            continue;
        }
        out.windows.push_back(window.horizon);
        out.reports.push_back(fit(window, pattern, options));
    }
    if (out.reports.empty()) throw InputError("fit_windows: no window has events");
    out.average = out.reports.front().params;
    const double inv = 1.0 / static_cast<double>(out.reports.size());
    const std::size_t n = out.average.dimension();
    for (std::size_t i = 0; i < n; ++i) {
        double mu = 0.0, decay = 0.0, exponent = 0.0, rate = 0.0;
        for (const auto& r : out.reports) {
            mu += r.params.mu[i];
            decay += r.params.kernels[i].decay;
            exponent += r.params.impacts[i].exponent;
            rate += r.params.impacts[i].mark_rate;
        }
        out.average.mu[i] = mu * inv;
        out.average.kernels[i].decay = decay * inv;
        out.average.impacts[i] = PowerImpact{exponent * inv, rate * inv};
    }
    for (std::size_t c = 0; c < n * n; ++c) {
        double v = 0.0;
        for (const auto& r : out.reports) v += r.params.branching[c];
        out.average.branching[c] = v * inv;
    }
    out.average_spectral_radius = spectral_radius(out.average);
    return out;
}

} // namespace hawkeslob
