#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace hawkeslob::optim {

struct Options {
    std::size_t max_iterations = 500;
    double relative_tolerance = 1e-8; // on the objective change between iterations
    double gradient_tolerance = 1e-10;
    std::size_t max_line_search = 40;
};

struct Result {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
    std::string message;
};

/// Objective returning f(x) and writing grad f(x) into the second argument (same size as x).
/// Non-finite values are treated as infeasible and make the line search backtrack.
using Objective = std::function<double(const std::vector<double>&, std::vector<double>&)>;

/// Unconstrained BFGS minimization with a backtracking Armijo line search. The returned point
/// is always the best one evaluated, so the best-so-far objective never increases.
[[nodiscard]] Result minimize_bfgs(const Objective& objective, std::vector<double> x0, const Options& options = {});

} // namespace hawkeslob::optim
