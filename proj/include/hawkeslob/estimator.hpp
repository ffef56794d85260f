#pragma once

#include "hawkeslob/orderbook.hpp"
#include "hawkeslob/params.hpp"
#include "hawkeslob/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hawkeslob {

/// Log-likelihood of the ground process and its partial derivatives with respect to the natural
/// parameters (baselines, branching cells, decays, impact exponents; mark rates held fixed).
struct LikelihoodGradient {
    double value = 0.0;
    std::vector<double> d_mu;
    std::vector<double> d_branching; // row-major like ParameterSet::branching
    std::vector<double> d_decay;
    std::vector<double> d_exponent;
    /// Index of the first event whose own-stream intensity was 0 (value is then -inf).
    std::optional<std::size_t> zero_intensity_event;
};

/// sum over events of log lambda_{stream}(t_k) minus the sum over streams of the compensator at
/// the horizon end. The mark-density term is excluded (see mark_log_likelihood).
[[nodiscard]] double log_likelihood(const ParameterSet& params, const EventStream& data);

/// Same value plus the analytic gradient, in one O(n_events * n_streams^2) pass.
[[nodiscard]] LikelihoodGradient log_likelihood_gradient(const ParameterSet& params, const EventStream& data);

/// sum_k log(beta_j exp(-beta_j v_k)) under the exponential mark law of each event's stream.
[[nodiscard]] double mark_log_likelihood(const ParameterSet& params, const EventStream& data);

enum class MarkFamily { exponential, gaussian };

struct TailPoint {
    double x = 0.0;
    double empirical = 0.0;   // P(V > x)
    double exponential = 0.0; // exp(-beta x)
    double gaussian = 0.0;    // 1 - Phi((x - mean) / sd)

    friend bool operator==(const TailPoint&, const TailPoint&) = default;
};

struct MarkFit {
    std::size_t count = 0;
    bool low_confidence = true; // fewer than 30 observations
    double beta = 1.0;          // exponential MLE 1 / mean
    double ks_exponential = 0.0;
    double gaussian_mean = 0.0;
    double gaussian_sd = 0.0;
    double ks_gaussian = 0.0;
    MarkFamily preferred = MarkFamily::exponential; // smaller KS distance
    std::vector<TailPoint> tail;                    // log-spaced grid over the sample range

    friend bool operator==(const MarkFit&, const MarkFit&) = default;
};

/// Exponential and Gaussian fits of a volume sample. Throws InputError on non-positive volumes
/// or an empty sample.
[[nodiscard]] MarkFit fit_marks(std::span<const double> volumes);
/// Per-stream fits; streams without events get a default, low-confidence fit with count 0.
[[nodiscard]] std::vector<MarkFit> fit_marks(const EventStream& data, std::size_t n_streams);

struct FitOptions {
    std::size_t max_iterations = 500;
    double tolerance = 1e-8; // relative log-likelihood change
    bool tie_decays = false;
    bool tie_impact_exponents = false;
    bool fit_impact_exponents = true; // false holds them at the initial value
    double mu_floor = 1e-10;
    std::optional<ParameterSet> initial; // overrides the default starting point
};

/// Equalities and exclusions the fit applied.
struct ConstraintSet {
    std::vector<std::vector<std::size_t>> mu_groups; // streams sharing one baseline
    bool tied_decays = false;
    bool tied_impact_exponents = false;
    std::vector<std::size_t> floored_streams;  // baseline held at the positivity floor (no data)
    std::vector<std::size_t> inactive_streams; // streams without events
    std::size_t free_parameters = 0;
};

struct FitReport {
    ParameterSet params;
    double loglik = 0.0;
    double mark_loglik = 0.0;
    double spectral_radius = 0.0; // recomputed from params.branching
    bool converged = false;
    std::size_t iterations = 0;
    std::string optimizer_message;
    ConstraintSet constraints;
    std::vector<MarkFit> marks;
    std::vector<std::string> warnings;

    [[nodiscard]] bool stationary() const noexcept { return spectral_radius < 1.0; }
};

/// Maximum-likelihood fit. Mark rates are fitted first from volumes alone and held fixed; the
/// Hawkes parameters are then optimized in log space over the reduced parameter vector, so
/// every iterate is positive, respects the pattern's zero cells and the baseline equalities of
/// order-book patterns.
[[nodiscard]] FitReport fit(const EventStream& data, const orderbook::InteractionPattern& pattern,
                            const FitOptions& options = {});

struct WindowedFit {
    std::vector<Horizon> windows;
    std::vector<FitReport> reports;
    ParameterSet average; // equal weight per window
    double average_spectral_radius = 0.0;
    std::vector<std::string> warnings;
};

/// Fits consecutive windows of the given length (the last one absorbs the remainder) and
/// averages their parameters.
[[nodiscard]] WindowedFit fit_windows(const EventStream& data, const orderbook::InteractionPattern& pattern,
                                      double window_length, const FitOptions& options = {});

} // namespace hawkeslob
