#ifndef DFREUD_REAL_HPP
#define DFREUD_REAL_HPP

// Value-semantic wrapper around an mpfr_t.
//
// Every Real carries its own precision. Arithmetic between two Reals rounds to
// the larger of the two precisions; arithmetic with a builtin integer or double
// keeps the precision of the Real operand. There is no process-wide default
// precision: constants are always constructed with an explicit precision.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

namespace dfreud {

/// Binary precision of an MPFR value.
struct Precision {
    mpfr_prec_t bits;

    /// Smallest binary precision carrying `digits` significant decimal digits.
    static Precision from_digits(int digits)
    {
        const double bits = std::ceil(static_cast<double>(digits) * 3.3219280948873623) + 8.0;
        return Precision{static_cast<mpfr_prec_t>(bits)};
    }

    int decimal_digits() const
    {
        return static_cast<int>(std::floor(static_cast<double>(bits - 8) * 0.30102999566398120));
    }

    friend bool operator==(Precision a, Precision b) { return a.bits == b.bits; }
};

class Real {
public:
    Real() : Real(0L, Precision{64}) {}

    template <class T>
        requires std::is_arithmetic_v<T>
    Real(T v, Precision p)
    {
        mpfr_init2(m_, p.bits);
        if constexpr (std::is_integral_v<T>)
            mpfr_set_si(m_, static_cast<long>(v), MPFR_RNDN);
        else
            mpfr_set_d(m_, static_cast<double>(v), MPFR_RNDN);
    }

    /// Exact ratio num/den rounded once.
    static Real ratio(long num, long den, Precision p)
    {
        Real r(num, p);
        mpfr_div_si(r.m_, r.m_, den, MPFR_RNDN);
        return r;
    }

    /// Parses a decimal literal; throws std::invalid_argument on malformed input.
    static Real parse(std::string_view text, Precision p)
    {
        Real r(0L, p);
        const std::string buf(text);
        if (buf.empty())
            throw std::invalid_argument("empty number");
        char* end = nullptr;
        mpfr_strtofr(r.m_, buf.c_str(), &end, 10, MPFR_RNDN);
        if (end == buf.c_str() || *end != '\0')
            throw std::invalid_argument("not a decimal number: '" + buf + "'");
        return r;
    }

    static Real pi(Precision p)
    {
        Real r(0L, p);
        mpfr_const_pi(r.m_, MPFR_RNDN);
        return r;
    }
    static Real log2(Precision p)
    {
        Real r(0L, p);
        mpfr_const_log2(r.m_, MPFR_RNDN);
        return r;
    }
    static Real pow10(long e, Precision p)
    {
        Real r(10L, p);
        mpfr_pow_si(r.m_, r.m_, e, MPFR_RNDN);
        return r;
    }

    Real(const Real& o)
    {
        mpfr_init2(m_, mpfr_get_prec(o.m_));
        mpfr_set(m_, o.m_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept
    {
        mpfr_init2(m_, MPFR_PREC_MIN);
        mpfr_swap(m_, o.m_);
    }
    Real& operator=(const Real& o)
    {
        if (this != &o) {
            mpfr_set_prec(m_, mpfr_get_prec(o.m_));
            mpfr_set(m_, o.m_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept
    {
        mpfr_swap(m_, o.m_);
        return *this;
    }
    ~Real() { mpfr_clear(m_); }

    Precision precision() const { return Precision{mpfr_get_prec(m_)}; }

    /// Copy rounded to a different precision.
    Real with_precision(Precision p) const
    {
        Real r(0L, p);
        mpfr_set(r.m_, m_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(m_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(m_, MPFR_RNDN); }

    bool is_finite() const { return mpfr_number_p(m_) != 0; }
    bool is_zero() const { return mpfr_zero_p(m_) != 0; }
    int sign() const { return mpfr_sgn(m_); }

    /// Decimal exponent e with |x| in [10^e, 10^(e+1)); very negative for zero.
    long log10_floor() const
    {
        if (is_zero())
            return -(1L << 40);
        Real a = abs(*this);
        mpfr_log10(a.m_, a.m_, MPFR_RNDN);
        mpfr_floor(a.m_, a.m_);
        return a.to_long();
    }

    /// Scientific decimal string with `digits` significant digits.
    std::string to_string(int digits) const
    {
        if (mpfr_nan_p(m_))
            return "nan";
        if (mpfr_inf_p(m_))
            return mpfr_sgn(m_) > 0 ? "inf" : "-inf";
        if (digits < 1)
            digits = 1;
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Re", digits - 1, m_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    Real operator-() const
    {
        Real r(*this);
        mpfr_neg(r.m_, r.m_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { return assign_binary(o, mpfr_add); }
    Real& operator-=(const Real& o) { return assign_binary(o, mpfr_sub); }
    Real& operator*=(const Real& o) { return assign_binary(o, mpfr_mul); }
    Real& operator/=(const Real& o) { return assign_binary(o, mpfr_div); }

    template <class T>
        requires std::is_arithmetic_v<T>
    Real& operator+=(T v) { return assign_scalar(v, mpfr_add_si, mpfr_add_d); }
    template <class T>
        requires std::is_arithmetic_v<T>
    Real& operator-=(T v) { return assign_scalar(v, mpfr_sub_si, mpfr_sub_d); }
    template <class T>
        requires std::is_arithmetic_v<T>
    Real& operator*=(T v) { return assign_scalar(v, mpfr_mul_si, mpfr_mul_d); }
    template <class T>
        requires std::is_arithmetic_v<T>
    Real& operator/=(T v) { return assign_scalar(v, mpfr_div_si, mpfr_div_d); }

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }

    template <class T>
        requires std::is_arithmetic_v<T>
    friend Real operator+(Real a, T b) { return a += b; }
    template <class T>
        requires std::is_arithmetic_v<T>
    friend Real operator-(Real a, T b) { return a -= b; }
    template <class T>
        requires std::is_arithmetic_v<T>
    friend Real operator*(Real a, T b) { return a *= b; }
    template <class T>
        requires std::is_arithmetic_v<T>
    friend Real operator/(Real a, T b) { return a /= b; }
    template <class T>
        requires std::is_arithmetic_v<T>
    friend Real operator+(T a, Real b) { return b += a; }
    template <class T>
        requires std::is_arithmetic_v<T>
    friend Real operator*(T a, Real b) { return b *= a; }
    template <class T>
        requires std::is_arithmetic_v<T>
    friend Real operator-(T a, const Real& b)
    {
        Real r(b);
        apply_si_or_d(r, a, mpfr_si_sub, mpfr_d_sub);
        return r;
    }
    template <class T>
        requires std::is_arithmetic_v<T>
    friend Real operator/(T a, const Real& b)
    {
        Real r(b);
        apply_si_or_d(r, a, mpfr_si_div, mpfr_d_div);
        return r;
    }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.m_, b.m_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b)
    {
        if (mpfr_unordered_p(a.m_, b.m_))
            return std::partial_ordering::unordered;
        const int c = mpfr_cmp(a.m_, b.m_);
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }
    template <class T>
        requires std::is_arithmetic_v<T>
    friend bool operator==(const Real& a, T b) { return mpfr_cmp_d(a.m_, static_cast<double>(b)) == 0; }
    template <class T>
        requires std::is_arithmetic_v<T>
    friend std::partial_ordering operator<=>(const Real& a, T b)
    {
        if (mpfr_nan_p(a.m_))
            return std::partial_ordering::unordered;
        const int c = mpfr_cmp_d(a.m_, static_cast<double>(b));
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }

    friend Real abs(const Real& x) { return x.unary(mpfr_abs); }
    friend Real sqrt(const Real& x) { return x.unary(mpfr_sqrt); }
    friend Real cbrt(const Real& x) { return x.unary(mpfr_cbrt); }
    friend Real exp(const Real& x) { return x.unary(mpfr_exp); }
    friend Real log(const Real& x) { return x.unary(mpfr_log); }
    friend Real log10(const Real& x) { return x.unary(mpfr_log10); }
    friend Real sin(const Real& x) { return x.unary(mpfr_sin); }
    friend Real cos(const Real& x) { return x.unary(mpfr_cos); }
    friend Real sinh(const Real& x) { return x.unary(mpfr_sinh); }
    friend Real cosh(const Real& x) { return x.unary(mpfr_cosh); }
    friend Real floor(const Real& x)
    {
        Real r(x);
        mpfr_floor(r.m_, x.m_);
        return r;
    }
    /// log Gamma(x) for x > 0 (caller checks the domain).
    friend Real lngamma(const Real& x) { return x.unary(mpfr_lngamma); }

    friend Real pow(const Real& x, const Real& y)
    {
        Real r(0L, Precision{std::max(mpfr_get_prec(x.m_), mpfr_get_prec(y.m_))});
        mpfr_pow(r.m_, x.m_, y.m_, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& x, long n)
    {
        Real r(x);
        mpfr_pow_si(r.m_, x.m_, n, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& x, int n) { return pow(x, static_cast<long>(n)); }
    friend Real pow(const Real& x, double y) { return pow(x, Real(y, x.precision())); }

    friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }
    friend Real min(const Real& a, const Real& b) { return b < a ? b : a; }

    friend std::ostream& operator<<(std::ostream& os, const Real& x)
    {
        return os << x.to_string(static_cast<int>(std::min<long>(x.precision().decimal_digits(), 50)));
    }

    mpfr_srcptr raw() const { return m_; }
    mpfr_ptr raw() { return m_; }

private:
    using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using UnaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

    Real& assign_binary(const Real& o, BinaryOp op)
    {
        const mpfr_prec_t p = mpfr_get_prec(o.m_);
        if (p > mpfr_get_prec(m_))
            mpfr_prec_round(m_, p, MPFR_RNDN);
        op(m_, m_, o.m_, MPFR_RNDN);
        return *this;
    }

    template <class T, class SiOp, class DOp>
    Real& assign_scalar(T v, SiOp si_op, DOp d_op)
    {
        if constexpr (std::is_integral_v<T>)
            si_op(m_, m_, static_cast<long>(v), MPFR_RNDN);
        else
            d_op(m_, m_, static_cast<double>(v), MPFR_RNDN);
        return *this;
    }

    Real unary(UnaryOp op) const
    {
        Real r(0L, precision());
        op(r.m_, m_, MPFR_RNDN);
        return r;
    }

    template <class T, class SiOp, class DOp>
    static void apply_si_or_d(Real& r, T a, SiOp si_op, DOp d_op)
    {
        if constexpr (std::is_integral_v<T>)
            si_op(r.m_, static_cast<long>(a), r.m_, MPFR_RNDN);
        else
            d_op(r.m_, static_cast<double>(a), r.m_, MPFR_RNDN);
    }

    mpfr_t m_;
};

}  // namespace dfreud

#endif  // DFREUD_REAL_HPP
