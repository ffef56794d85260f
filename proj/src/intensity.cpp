#include "hawkeslob/intensity.hpp"

#include "hawkeslob/errors.hpp"
#include "hawkeslob/simd.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace hawkeslob {

HistoryView::HistoryView(const ParameterSet& params, const EventStream& history)
    : params_(params), horizon_(history.horizon), complete_(history.complete) {
    params_.validate();
    const std::size_t n = params_.dimension();
    validate(history, n);
    times_.resize(n);
    weights_.resize(n);
    prefix_.assign(n, std::vector<double>{0.0});
    std::vector<double> scale(n);
    for (std::size_t j = 0; j < n; ++j) scale[j] = params_.impacts[j].scale();
    for (const auto& e : history.events) {
        const PowerImpact& g = params_.impacts[e.stream];
        const double w = g.exponent == 0.0 ? 1.0 : scale[e.stream] * std::pow(e.volume, g.exponent);
        times_[e.stream].push_back(e.time);
        weights_[e.stream].push_back(w);
        prefix_[e.stream].push_back(prefix_[e.stream].back() + w);
    }
    first_time_ = history.events.empty() ? horizon_.start : history.events.front().time;
}

void HistoryView::check_time(double t) const {
    if (!std::isfinite(t)) throw InputError("query time must be finite");
    if (!complete_ && t < first_time_) {
        throw InputError("query time precedes the first event of a left-truncated history");
    }
}

double HistoryView::excitation(std::size_t stream, double t, bool inclusive) const {
    const std::size_t n = dimension();
    const double decay = params_.kernels[stream].decay;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double nu = params_.nu(stream, j);
        if (nu == 0.0 || times_[j].empty()) continue;
        const auto& ts = times_[j];
        const auto end = inclusive ? std::upper_bound(ts.begin(), ts.end(), t) : std::lower_bound(ts.begin(), ts.end(), t);
        const auto count = static_cast<std::size_t>(end - ts.begin());
        if (count == 0) continue;
        sum += nu * decay *
               simd::exp_decay_sum(std::span(ts).first(count), std::span(weights_[j]).first(count), decay, t);
    }
    return sum;
}

double HistoryView::intensity(std::size_t stream, double t) const {
    if (stream >= dimension()) throw InputError("intensity: stream index out of range");
    check_time(t);
    return params_.mu[stream] + excitation(stream, t, false);
}

double HistoryView::intensity_after(std::size_t stream, double t) const {
    if (stream >= dimension()) throw InputError("intensity: stream index out of range");
    check_time(t);
    return params_.mu[stream] + excitation(stream, t, true);
}

double HistoryView::compensator(std::size_t stream, double t) const {
    if (stream >= dimension()) throw InputError("compensator: stream index out of range");
    if (!std::isfinite(t)) throw InputError("compensator: time must be finite");
    if (t < horizon_.start) throw InputError("compensator: time precedes the horizon start");
    const std::size_t n = dimension();
    const double decay = params_.kernels[stream].decay;
    double sum = params_.mu[stream] * (t - horizon_.start);
    for (std::size_t j = 0; j < n; ++j) {
        const double nu = params_.nu(stream, j);
        if (nu == 0.0 || times_[j].empty()) continue;
        const auto& ts = times_[j];
        const auto count = static_cast<std::size_t>(std::lower_bound(ts.begin(), ts.end(), t) - ts.begin());
        if (count == 0) continue;
        const double decayed =
            simd::exp_decay_sum(std::span(ts).first(count), std::span(weights_[j]).first(count), decay, t);
        sum += nu * (prefix_[j][count] - decayed);
    }
    return sum;
}

double intensity(const ParameterSet& params, const EventStream& history, std::size_t stream, double t) {
    return HistoryView(params, history).intensity(stream, t);
}

double intensity(const ParameterSet& params, const EventStream& history, StreamId stream, double t) {
    return intensity(params, history, stream.index(), t);
}

double compensator(const ParameterSet& params, const EventStream& history, std::size_t stream, double T) {
    if (T > history.horizon.end) throw InputError("compensator: time beyond the horizon end");
    return HistoryView(params, history).compensator(stream, T);
}

double compensator(const ParameterSet& params, const EventStream& history, StreamId stream, double T) {
    return compensator(params, history, stream.index(), T);
}

RecursionState::RecursionState(const ParameterSet& params, double start_time)
    : n_(params.dimension()), mu_(params.mu), nu_(params.branching), impacts_(params.impacts),
      acc_(params.dimension() * params.dimension(), 0.0), last_time_(start_time) {
    params.validate();
    decay_.reserve(n_);
    impact_scale_.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        decay_.push_back(params.kernels[i].decay);
        impact_scale_.push_back(params.impacts[i].scale());
    }
}

void RecursionState::advance(double t) {
    if (!(t >= last_time_)) {
        throw InputError("recursion: time " + std::to_string(t) + " precedes state time " + std::to_string(last_time_));
    }
    const double dt = t - last_time_;
    if (dt > 0.0) {
        for (std::size_t i = 0; i < n_; ++i) {
            const double f = std::exp(-decay_[i] * dt);
            double* row = acc_.data() + i * n_;
            for (std::size_t j = 0; j < n_; ++j) row[j] *= f;
        }
    }
    last_time_ = t;
}

void RecursionState::add(const MarkedEvent& event) {
    if (event.stream >= n_) throw InputError("recursion: stream index out of range");
    if (!(event.volume > 0.0) || !std::isfinite(event.volume)) throw InputError("recursion: volume must be > 0");
    advance(event.time);
    const std::size_t j = event.stream;
    const double g = impacts_[j].exponent == 0.0 ? 1.0 : impact_scale_[j] * std::pow(event.volume, impacts_[j].exponent);
    for (std::size_t i = 0; i < n_; ++i) acc_[i * n_ + j] += decay_[i] * g;
}

double RecursionState::intensity(std::size_t stream) const {
    const double* row = acc_.data() + stream * n_;
    const double* nu = nu_.data() + stream * n_;
    double sum = mu_[stream];
    for (std::size_t j = 0; j < n_; ++j) sum += nu[j] * row[j];
    return sum;
}

double RecursionState::total_intensity() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < n_; ++i) sum += intensity(i);
    return sum;
}

double RecursionState::excitation_mass(std::size_t stream) const {
    const double* row = acc_.data() + stream * n_;
    const double* nu = nu_.data() + stream * n_;
    double sum = 0.0;
    for (std::size_t j = 0; j < n_; ++j) sum += nu[j] * row[j];
    return sum / decay_[stream];
}

double RecursionState::intensity_at(std::size_t stream, double t) const {
    const double dt = std::max(t - last_time_, 0.0);
    return mu_[stream] + (intensity(stream) - mu_[stream]) * std::exp(-decay_[stream] * dt);
}

double RecursionState::total_intensity_at(double t) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < n_; ++i) sum += intensity_at(i, t);
    return sum;
}

RecursionState intensity_recursive(RecursionState state, const MarkedEvent& event) {
    state.add(event);
    return state;
}

double spectral_radius(std::span<const double> matrix, std::size_t n) {
    if (matrix.size() != n * n) throw InputError("spectral_radius: matrix size mismatch");
    if (n == 0) return 0.0;
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = matrix[i * n + j];
            if (!std::isfinite(v)) throw InputError("spectral_radius: non-finite entry");
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
    if (solver.info() != Eigen::Success) throw NumericalError("spectral_radius: eigenvalue solver failed");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_radius(const ParameterSet& params) {
    return spectral_radius(params.branching, params.dimension());
}

} // namespace hawkeslob
