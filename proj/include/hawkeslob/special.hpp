#pragma once

namespace hawkeslob::special {

/// Gamma function, Lanczos approximation (g = 7, 9 terms). Relative error ~1e-15 on (0, 20].
double gamma(double x);

/// log|Gamma(x)| for x > 0.
double log_gamma(double x);

/// Digamma psi(x) = d/dx log Gamma(x) for x > 0 (recurrence + asymptotic series).
double digamma(double x);

} // namespace hawkeslob::special
