#pragma once

#include "hawkeslob/params.hpp"
#include "hawkeslob/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace hawkeslob {

/// Read-only index of a history for repeated direct-sum queries: per source stream it keeps
/// event times and impact weights g_j(v_k) so each query is one vectorized pass per source.
///
/// Queries are pure and safe to run concurrently on a shared view.
class HistoryView {
public:
    HistoryView(const ParameterSet& params, const EventStream& history);

    /// Ground intensity of `stream` at t, counting only events strictly before t.
    [[nodiscard]] double intensity(std::size_t stream, double t) const;
    /// Right limit at t: events at exactly t are included.
    [[nodiscard]] double intensity_after(std::size_t stream, double t) const;
    /// Integrated intensity over [horizon.start, t], assuming no events beyond the history.
    [[nodiscard]] double compensator(std::size_t stream, double t) const;

    [[nodiscard]] const ParameterSet& params() const noexcept { return params_; }
    [[nodiscard]] const Horizon& horizon() const noexcept { return horizon_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return params_.dimension(); }

private:
    [[nodiscard]] double excitation(std::size_t stream, double t, bool inclusive) const;
    void check_time(double t) const;

    ParameterSet params_;
    Horizon horizon_;
    bool complete_ = true;
    double first_time_ = 0.0;
    std::vector<std::vector<double>> times_;   // per source stream
    std::vector<std::vector<double>> weights_; // g_j(v_k)
    std::vector<std::vector<double>> prefix_;  // prefix sums of weights, size + 1
};

/// lambda_stream(t) = mu + sum_j nu[stream, j] sum_{t_k < t} decay * exp(-decay (t - t_k)) g_j(v_k).
[[nodiscard]] double intensity(const ParameterSet& params, const EventStream& history, std::size_t stream, double t);
[[nodiscard]] double intensity(const ParameterSet& params, const EventStream& history, StreamId stream, double t);

/// Closed-form integrated intensity over [horizon.start, T]; T must lie in the horizon.
[[nodiscard]] double compensator(const ParameterSet& params, const EventStream& history, std::size_t stream,
                                 double T);
[[nodiscard]] double compensator(const ParameterSet& params, const EventStream& history, StreamId stream,
                                 double T);

/// O(n^2)-per-event exact recursion over the exponential kernels. The accumulator for
/// (target i, source j) holds sum_k decay_i * exp(-decay_i (t - t_k)) * g_j(v_k).
///
/// Single owner: advance one state per worker.
class RecursionState {
public:
    explicit RecursionState(const ParameterSet& params, double start_time = 0.0);

    /// Decays all accumulators to time t. Throws InputError when t < last_time().
    void advance(double t);
    /// Advances to the event time and adds its excitation.
    void add(const MarkedEvent& event);

    /// Intensity at last_time(), including events at exactly last_time().
    [[nodiscard]] double intensity(std::size_t stream) const;
    [[nodiscard]] double total_intensity() const;
    /// Intensity at a later time t >= last_time() with no events in between; state unchanged.
    [[nodiscard]] double intensity_at(std::size_t stream, double t) const;
    [[nodiscard]] double total_intensity_at(double t) const;

    /// sum_j nu[i,j] * acc[i,j] / decay_i, the coefficient of (1 - exp(-decay_i tau)) in the
    /// frozen-history compensator from last_time() to last_time() + tau.
    [[nodiscard]] double excitation_mass(std::size_t stream) const;

    [[nodiscard]] double last_time() const noexcept { return last_time_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return n_; }
    [[nodiscard]] double baseline(std::size_t stream) const { return mu_[stream]; }
    [[nodiscard]] double decay(std::size_t stream) const { return decay_[stream]; }
    [[nodiscard]] const std::vector<double>& accumulators() const noexcept { return acc_; }

private:
    std::size_t n_ = 0;
    std::vector<double> mu_;
    std::vector<double> nu_;
    std::vector<double> decay_;
    std::vector<PowerImpact> impacts_;
    std::vector<double> impact_scale_;
    std::vector<double> acc_;
    double last_time_ = 0.0;
};

/// Functional form of RecursionState::add.
[[nodiscard]] RecursionState intensity_recursive(RecursionState state, const MarkedEvent& event);

/// Largest eigenvalue modulus of a row-major n x n matrix.
[[nodiscard]] double spectral_radius(std::span<const double> matrix, std::size_t n);
[[nodiscard]] double spectral_radius(const ParameterSet& params);
[[nodiscard]] inline bool is_stationary(const ParameterSet& params) { return spectral_radius(params) < 1.0; }

} // namespace hawkeslob
