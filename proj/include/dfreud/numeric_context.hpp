#ifndef DFREUD_NUMERIC_CONTEXT_HPP
#define DFREUD_NUMERIC_CONTEXT_HPP

#include "dfreud/real.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace dfreud {

/// Hard cap on escalated working precision, overridable through DFREUD_MAX_DIGITS.
inline int max_digits_cap()
{
    if (const char* env = std::getenv("DFREUD_MAX_DIGITS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 30)
            return static_cast<int>(v);
    }
    return 2000;
}

/// Working precision and tolerance policy. Immutable once built; passed by value or const&.
class NumericContext {
public:
    /// Extra binary digits carried beyond `digits` in every intermediate.
    static constexpr int guard_digits = 10;

    explicit NumericContext(int digits = 50)
        : NumericContext(digits, Real::pow10(10 - digits, Precision::from_digits(digits)),
                         Real::pow10(-(digits / 5), Precision::from_digits(digits)))
    {
    }

    NumericContext(int digits, Real quad_tol, Real diff_step)
        : digits_(digits), quad_tol_(std::move(quad_tol)), diff_step_(std::move(diff_step))
    {
        if (digits_ < 30)
            throw std::invalid_argument("NumericContext: digits must be >= 30, got " + std::to_string(digits_));
        const Real floor_tol = Real::pow10(10 - digits_, Precision{64});
        if (!(quad_tol_ >= floor_tol * 0.999999) || !(quad_tol_ < 1))
            throw std::invalid_argument("NumericContext: quad_tol must lie in [10^(10-digits), 1)");
        if (!(diff_step_ > 0) || diff_step_ > 1e-2)
            throw std::invalid_argument("NumericContext: diff_step must lie in (0, 1e-2]");
        quad_tol_ = quad_tol_.with_precision(precision());
        diff_step_ = diff_step_.with_precision(precision());
    }

    int digits() const { return digits_; }
    const Real& quad_tol() const { return quad_tol_; }
    const Real& diff_step() const { return diff_step_; }

    /// Binary precision used for arithmetic: digits plus guard.
    Precision precision() const { return Precision::from_digits(digits_ + guard_digits); }

    /// Same policy at a different precision (tolerance and step rescaled to their defaults).
    NumericContext with_digits(int digits) const { return NumericContext(digits); }

    Real num(double v) const { return Real(v, precision()); }
    Real num(long v) const { return Real(v, precision()); }
    Real num(int v) const { return Real(static_cast<long>(v), precision()); }
    Real ratio(long a, long b) const { return Real::ratio(a, b, precision()); }
    Real parse(const std::string& text) const { return Real::parse(text, precision()); }
    Real pi() const { return Real::pi(precision()); }
    Real eps() const { return Real::pow10(-digits_, precision()); }

private:
    int digits_;
    Real quad_tol_;
    Real diff_step_;
};

}  // namespace dfreud

#endif  // DFREUD_NUMERIC_CONTEXT_HPP
