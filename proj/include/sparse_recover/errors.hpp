#pragma once

#include <stdexcept>
#include <string>

namespace sparse_recover {

// Raised when an input violates a separation assumption the algorithm
// needs (beta = 0, ambiguous gluing, ...). CLI maps this to exit code 3.
class AssumptionViolation : public std::runtime_error {
public:
    explicit AssumptionViolation(const std::string& what)
        : std::runtime_error(what) {}
};

// Internal numerical failure (resampling caps, singular matrices after
// retries, I/O). CLI maps this to exit code 4.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace sparse_recover
