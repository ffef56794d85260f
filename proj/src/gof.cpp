#include "hawkeslob/gof.hpp"

#include "hawkeslob/errors.hpp"
#include "hawkeslob/intensity.hpp"
#include "hawkeslob/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hawkeslob {
namespace {

// Lambda_i at every event time and at the horizon end, from one left-to-right pass.
// Between consecutive distinct times s < t with nothing in between,
// Lambda_i(t) - Lambda_i(s) = mu_i (t - s) + mass_i(s) (1 - exp(-decay_i (t - s))).
std::vector<double> final_compensators(const ParameterSet& params, const EventStream& data,
                                       std::vector<std::vector<double>>* residuals,
                                       std::vector<double>* mapped_times) {
    const std::size_t n = params.dimension();
    std::vector<double> last(n, std::numeric_limits<double>::quiet_NaN());
    if (residuals) residuals->assign(n, {});
    if (mapped_times) mapped_times->assign(data.events.size(), 0.0);
    RecursionState state(params, data.horizon.start);
    std::vector<double> lambda(n, 0.0);
    auto move_to = [&](double t) {
        const double dt = t - state.last_time();
        if (dt > 0.0) {
            for (std::size_t i = 0; i < n; ++i) {
                lambda[i] += params.mu[i] * dt - state.excitation_mass(i) * std::expm1(-state.decay(i) * dt);
            }
            state.advance(t);
        }
    };
    for (std::size_t k = 0; k < data.events.size(); ++k) {
        const MarkedEvent& e = data.events[k];
        move_to(e.time);
        const std::size_t i = e.stream;
        if (residuals) {
            if (!std::isnan(last[i])) (*residuals)[i].push_back(lambda[i] - last[i]);
            last[i] = lambda[i];
        }
        if (mapped_times) (*mapped_times)[k] = lambda[i];
        state.add(e);
    }
    move_to(data.horizon.end);
    return lambda;
}

void check(const ParameterSet& params, const EventStream& data) {
    params.validate();
    validate(data, params.dimension());
}

} // namespace

std::vector<std::vector<double>> all_rescaled_residuals(const ParameterSet& params, const EventStream& data) {
    check(params, data);
    std::vector<std::vector<double>> out;
    (void)final_compensators(params, data, &out, nullptr);
    return out;
}

std::vector<double> rescaled_residuals(const ParameterSet& params, const EventStream& data, std::size_t stream) {
    if (stream >= params.dimension()) throw InputError("rescaled_residuals: stream index out of range");
    return all_rescaled_residuals(params, data)[stream];
}

std::vector<double> rescaled_residuals(const ParameterSet& params, const EventStream& data, StreamId stream) {
    return rescaled_residuals(params, data, stream.index());
}

KsResult ks_exponential(std::span<const double> sample) {
    if (sample.empty()) throw InputError("ks_exponential: empty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    for (double v : sorted) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw InputError("ks_exponential: values must be finite and >= 0");
    }
    std::sort(sorted.begin(), sorted.end());
    KsResult r;
    r.n = sorted.size();
    r.distance = stats::ks_distance(sorted, [](double x) { return -std::expm1(-x); });
    r.p_value = stats::kolmogorov_p_value(r.distance, r.n);
    return r;
}

EventStream time_change(const ParameterSet& params, const EventStream& data) {
    check(params, data);
    std::vector<double> mapped;
    const std::vector<double> ends = final_compensators(params, data, nullptr, &mapped);
    EventStream out;
    out.complete = data.complete;
    out.events.reserve(data.events.size());
    for (std::size_t k = 0; k < data.events.size(); ++k) {
        out.events.push_back(MarkedEvent{mapped[k], data.events[k].stream, data.events[k].volume});
    }
    out.horizon = Horizon{0.0, ends.empty() ? 0.0 : *std::max_element(ends.begin(), ends.end())};
    sort_events(out);
    return out;
}

GofReport goodness_of_fit(const ParameterSet& params, const EventStream& data, double level) {
    if (!(level > 0.0 && level < 1.0)) throw InputError("goodness_of_fit: level must lie in (0, 1)");
    const auto residuals = all_rescaled_residuals(params, data);
    const std::size_t n = params.dimension();
    const auto counts = count_per_stream(data, n);
    std::vector<std::vector<double>> marks(n);
    for (const auto& e : data.events) marks[e.stream].push_back(params.impacts[e.stream].mark_rate * e.volume);

    GofReport report;
    report.level = level;
    std::vector<double> pooled;
    std::size_t tested = 0;
    for (std::size_t i = 0; i < n; ++i) {
        StreamGof s;
        s.stream = i;
        s.events = counts[i];
        if (!marks[i].empty()) s.marks = ks_exponential(marks[i]);
        if (residuals[i].empty()) {
            report.warnings.push_back("stream " + stream_label(i) + " has fewer than two events; not tested");
        } else {
            s.tested = true;
            ++tested;
            s.residual_mean = stats::mean(residuals[i]);
            s.ks = ks_exponential(residuals[i]);
            s.rejected = s.ks.p_value < level;
            pooled.insert(pooled.end(), residuals[i].begin(), residuals[i].end());
        }
        report.streams.push_back(s);
    }
    report.bonferroni_level = tested > 0 ? level / static_cast<double>(tested) : level;
    for (const auto& s : report.streams) {
        if (s.tested && s.ks.p_value < report.bonferroni_level) report.any_rejected_bonferroni = true;
    }
    if (!pooled.empty()) {
        report.pooled = ks_exponential(pooled);
        report.pooled_rejected = report.pooled.p_value < level;
    } else {
        report.warnings.push_back("no stream has two or more events; pooled test skipped");
    }
    return report;
}

} // namespace hawkeslob
