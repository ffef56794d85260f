#pragma once

#include <stdexcept>
#include <string>

namespace hawkeslob {

/// Malformed or out-of-contract input (bad files, invalid parameters, bad arguments).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation could not produce a trustworthy number.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hawkeslob
