#include "hawkeslob/params.hpp"

#include "hawkeslob/errors.hpp"
#include "hawkeslob/special.hpp"

#include <cmath>
#include <string>

namespace hawkeslob {

double PowerImpact::scale() const {
    return std::pow(mark_rate, exponent) / special::gamma(exponent + 1.0);
}

double PowerImpact::operator()(double v) const {
    if (exponent == 0.0) return 1.0;
    return scale() * std::pow(v, exponent);
}

double impact(const PowerImpact& g, double v) {
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw InputError("impact: volume must be finite and > 0");
    }
    if (!(g.exponent >= 0.0) || !(g.mark_rate > 0.0)) {
        throw InputError("impact: requires exponent >= 0 and mark_rate > 0");
    }
    return g(v);
}

double impact_exponent_derivative(const PowerImpact& g, double v) {
    return g(v) * (std::log(g.mark_rate * v) - special::digamma(g.exponent + 1.0));
}

ParameterSet ParameterSet::zeros(std::size_t n_streams) {
    ParameterSet p;
    p.mu.assign(n_streams, 0.0);
    p.branching.assign(n_streams * n_streams, 0.0);
    p.kernels.assign(n_streams, ExpKernel{});
    p.impacts.assign(n_streams, PowerImpact{});
    return p;
}

ParameterSet ParameterSet::zeros_for_assets(std::size_t d) {
    ParameterSet p = zeros(4 * d);
    p.assets = d;
    return p;
}

void ParameterSet::validate() const {
    const std::size_t n = dimension();
    if (n == 0) throw InputError("parameters: zero streams");
    if (branching.size() != n * n || kernels.size() != n || impacts.size() != n) {
        throw InputError("parameters: inconsistent sizes");
    }
    if (assets != 0 && n != 4 * assets) {
        throw InputError("parameters: order-book set needs 4 streams per asset");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::string at = "[" + std::to_string(i) + "]";
        if (!std::isfinite(mu[i]) || mu[i] < 0.0) throw InputError("parameters: mu" + at + " must be >= 0");
        if (!std::isfinite(kernels[i].decay) || !(kernels[i].decay > 0.0)) {
            throw InputError("parameters: decay" + at + " must be > 0");
        }
        if (!std::isfinite(impacts[i].exponent) || impacts[i].exponent < 0.0) {
            throw InputError("parameters: impact_exponent" + at + " must be >= 0");
        }
        if (!std::isfinite(impacts[i].mark_rate) || !(impacts[i].mark_rate > 0.0)) {
            throw InputError("parameters: mark_rate" + at + " must be > 0");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double v = branching[i * n + j];
            if (!std::isfinite(v) || v < 0.0) {
                throw InputError("parameters: branching" + at + "[" + std::to_string(j) + "] must be >= 0");
            }
        }
    }
}

} // namespace hawkeslob
