#pragma once

#include <cstddef>
#include <vector>

namespace hawkeslob {

/// Exponential decay kernel h(t) = decay * exp(-decay * t), one per target stream.
struct ExpKernel {
    double decay = 1.0; // 1/second, > 0

    friend bool operator==(const ExpKernel&, const ExpKernel&) = default;
};

/// Power-law mark impact normalized against an Exponential(mark_rate) mark law:
/// g(v) = mark_rate^exponent * v^exponent / Gamma(exponent + 1), so E[g(V)] = 1.
struct PowerImpact {
    double exponent = 0.0;  // >= 0
    double mark_rate = 1.0; // > 0

    /// mark_rate^exponent / Gamma(exponent + 1)
    [[nodiscard]] double scale() const;
    /// Unchecked evaluation, v > 0 assumed.
    [[nodiscard]] double operator()(double v) const;
    friend bool operator==(const PowerImpact&, const PowerImpact&) = default;
};

/// Checked evaluation of the impact function; rejects v <= 0 and non-finite v.
[[nodiscard]] double impact(const PowerImpact& g, double v);

/// d g(v) / d exponent.
[[nodiscard]] double impact_exponent_derivative(const PowerImpact& g, double v);

/// Full parameter set of an n-stream marked Hawkes process. For an order-book system
/// `assets` = d and n = 4d; `assets` = 0 marks a generic system with no stream structure.
struct ParameterSet {
    std::size_t assets = 0;
    std::vector<double> mu;        // baseline per stream
    std::vector<double> branching; // row-major n x n, [target * n + source]
    std::vector<ExpKernel> kernels;    // per target stream
    std::vector<PowerImpact> impacts;  // per source stream

    [[nodiscard]] std::size_t dimension() const noexcept { return mu.size(); }
    [[nodiscard]] double nu(std::size_t target, std::size_t source) const {
        return branching[target * dimension() + source];
    }
    double& nu(std::size_t target, std::size_t source) { return branching[target * dimension() + source]; }

    /// n streams, zero baselines and branching, unit decays, constant (exponent 0) impacts.
    [[nodiscard]] static ParameterSet zeros(std::size_t n_streams);
    /// Order-book sized set (4d streams) with assets = d, otherwise as zeros().
    [[nodiscard]] static ParameterSet zeros_for_assets(std::size_t d);

    /// Size, sign and finiteness checks. Order-book structure is checked by orderbook::validate.
    void validate() const;

    friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

} // namespace hawkeslob
