#include "hawkeslob/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace hawkeslob::optim {
namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double inf_norm(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

void set_identity(std::vector<double>& h, std::size_t n, double scale) {
    std::fill(h.begin(), h.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) h[i * n + i] = scale;
}

// largest coordinate move allowed in one line-search trial
constexpr double kMaxStep = 2.0;
constexpr double kArmijo = 1e-4;

} // namespace

Result minimize_bfgs(const Objective& objective, std::vector<double> x0, const Options& options) {
    const std::size_t n = x0.size();
    Result result;
    result.x = std::move(x0);
    std::vector<double> g(n, 0.0);
    result.value = objective(result.x, g);
    result.evaluations = 1;
    if (!std::isfinite(result.value)) {
        result.message = "objective not finite at the starting point";
        return result;
    }
    if (n == 0) {
        result.converged = true;
        result.message = "no free parameters";
        return result;
    }

    std::vector<double> h(n * n, 0.0);
    set_identity(h, n, 1.0);
    bool fresh_hessian = true;
    std::size_t small_changes = 0;
    std::vector<double> p(n), x_new(n), g_new(n), s(n), y(n), hy(n);

    for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
        result.iterations = iter;
        if (inf_norm(g) <= options.gradient_tolerance) {
            result.converged = true;
            result.message = "gradient below tolerance";
            return result;
        }
        for (std::size_t i = 0; i < n; ++i) {
            double v = 0.0;
            for (std::size_t j = 0; j < n; ++j) v -= h[i * n + j] * g[j];
            p[i] = v;
        }
        double slope = dot(g, p);
        if (!(slope < 0.0)) {
            set_identity(h, n, 1.0);
            fresh_hessian = true;
            for (std::size_t i = 0; i < n; ++i) p[i] = -g[i];
            slope = dot(g, p);
        }
        double step = std::min(1.0, kMaxStep / std::max(inf_norm(p), 1e-300));
        bool accepted = false;
        double f_new = 0.0;
        for (std::size_t ls = 0; ls < options.max_line_search; ++ls) {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = result.x[i] + step * p[i];
            f_new = objective(x_new, g_new);
            ++result.evaluations;
            if (std::isfinite(f_new) && f_new <= result.value + kArmijo * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (!fresh_hessian) {
                set_identity(h, n, 1.0);
                fresh_hessian = true;
                continue;
            }
            result.converged = small_changes > 0;
            result.message = "line search made no progress";
            return result;
        }

        const double change = std::abs(result.value - f_new) / std::max(1.0, std::abs(result.value));
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - result.x[i];
            y[i] = g_new[i] - g[i];
        }
        result.x = x_new;
        result.value = f_new;
        g = g_new;

        const double sy = dot(s, y);
        if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
            if (fresh_hessian) {
                set_identity(h, n, sy / dot(y, y));
                fresh_hessian = false;
            }
            // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
            const double rho = 1.0 / sy;
            for (std::size_t i = 0; i < n; ++i) {
                double v = 0.0;
                for (std::size_t j = 0; j < n; ++j) v += h[i * n + j] * y[j];
                hy[i] = v;
            }
            const double yhy = dot(y, hy);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    h[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
                }
            }
        }

        small_changes = change <= options.relative_tolerance ? small_changes + 1 : 0;
        if (small_changes >= 2) {
            result.converged = true;
            result.message = "relative objective change below tolerance";
            return result;
        }
    }
    result.message = "iteration limit reached";
    return result;
}

} // namespace hawkeslob::optim
