#ifndef DFREUD_ERRORS_HPP
#define DFREUD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dfreud {

/// Argument outside the domain of the formula (s = 0 where 1/s appears, x <= 0 for log Gamma, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Quadrature did not converge to the requested tolerance.
class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A Hankel pivot came out non-positive: the working precision is too low for this order.
class PrecisionExhausted : public std::runtime_error {
public:
    PrecisionExhausted(int index, int digits)
        : std::runtime_error("non-positive Hankel pivot h_" + std::to_string(index) + " at " +
                             std::to_string(digits) + " digits"),
          index_(index), digits_(digits)
    {
    }
    int index() const { return index_; }
    int digits() const { return digits_; }

private:
    int index_;
    int digits_;
};

/// Evaluation point too close to a pole of a rational coefficient.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A denominator of an expansion coefficient vanishes at the requested parameters.
class SingularCoefficient : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace dfreud

#endif  // DFREUD_ERRORS_HPP
