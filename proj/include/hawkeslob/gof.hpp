#pragma once

#include "hawkeslob/params.hpp"
#include "hawkeslob/types.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hawkeslob {

/// Lambda_i(t_k) - Lambda_i(t_{k-1}) over consecutive events of one stream. Empty when the
/// stream has fewer than two events.
[[nodiscard]] std::vector<double> rescaled_residuals(const ParameterSet& params, const EventStream& data,
                                                     std::size_t stream);
[[nodiscard]] std::vector<double> rescaled_residuals(const ParameterSet& params, const EventStream& data,
                                                     StreamId stream);
/// All streams in one pass; entry i is the residual sequence of stream i.
[[nodiscard]] std::vector<std::vector<double>> all_rescaled_residuals(const ParameterSet& params,
                                                                      const EventStream& data);

struct KsResult {
    double distance = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
};

/// One-sample KS test against Exp(1). Throws InputError on an empty sample or negative values.
[[nodiscard]] KsResult ks_exponential(std::span<const double> sample);

/// Maps each event (t, v) of stream i to (Lambda_i(t), v). Each stream runs on its own
/// transformed clock; the output is re-sorted and its horizon is [0, max_i Lambda_i(T)].
[[nodiscard]] EventStream time_change(const ParameterSet& params, const EventStream& data);

struct StreamGof {
    std::size_t stream = 0;
    std::size_t events = 0;
    bool tested = false; // false when fewer than two events
    double residual_mean = 0.0;
    KsResult ks;         // residuals vs Exp(1)
    KsResult marks;      // mark_rate * v vs Exp(1)
    bool rejected = false;
};

struct GofReport {
    double level = 0.01;
    double bonferroni_level = 0.01; // level / number of tested streams
    std::vector<StreamGof> streams;
    KsResult pooled; // all streams' residuals in one sample
    bool pooled_rejected = false;
    bool any_rejected_bonferroni = false;
    std::vector<std::string> warnings;
};

/// Per-stream and pooled time-rescaling tests plus exponential-mark tests.
[[nodiscard]] GofReport goodness_of_fit(const ParameterSet& params, const EventStream& data, double level = 0.01);

} // namespace hawkeslob
