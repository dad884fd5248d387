#ifndef DFREUD_MOMENTS_HPP
#define DFREUD_MOMENTS_HPP

// Moments of the weight |x|^alpha exp(-N[x^2 + s(x^4 - x^2)]) on the real line.

#include "dfreud/errors.hpp"
#include "dfreud/numeric_context.hpp"
#include "dfreud/numerics.hpp"
#include "dfreud/real.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dfreud {

/// (s, alpha, N). Values are stored at high precision and rounded at each use site.
struct WeightParams {
    Real s;
    Real alpha;
    Real bigN;

    static constexpr mpfr_prec_t storage_bits = 7200;

    WeightParams(double s_, double alpha_, double n_)
        : s(s_, Precision{storage_bits}), alpha(alpha_, Precision{storage_bits}), bigN(n_, Precision{storage_bits})
    {
        validate();
    }
    WeightParams(Real s_, Real alpha_, Real n_) : s(std::move(s_)), alpha(std::move(alpha_)), bigN(std::move(n_))
    {
        validate();
    }

    /// Decimal strings, e.g. parse("0.1", "2.5", "1"); exact to ~2100 digits.
    static WeightParams parse(const std::string& s_, const std::string& alpha_, const std::string& n_)
    {
        const Precision p{storage_bits};
        return WeightParams(Real::parse(s_, p), Real::parse(alpha_, p), Real::parse(n_, p));
    }

    void validate() const
    {
        if (!(alpha > -1))
            throw DomainError("weight: alpha must exceed -1");
        if (!(bigN > 0))
            throw DomainError("weight: N must be positive");
        if (!(s >= 0) || !(s <= 1))
            throw DomainError("weight: s must lie in [0, 1]");
    }

    /// Copy rounded to the working precision p.
    WeightParams at(Precision p) const
    {
        WeightParams w(*this);
        w.s = s.with_precision(p);
        w.alpha = alpha.with_precision(p);
        w.bigN = bigN.with_precision(p);
        return w;
    }

    WeightParams with_alpha(const Real& a) const
    {
        WeightParams w(*this);
        w.alpha = a;
        w.validate();
        return w;
    }

    bool s_is_zero() const { return s.is_zero(); }
};

enum class MomentSource { quadrature, closed_form };

inline const char* to_string(MomentSource m)
{
    return m == MomentSource::quadrature ? "quadrature" : "closed_form";
}

struct MomentTable {
    WeightParams params;
    std::vector<Real> values;  // mu_0 .. mu_max_order; odd entries exactly zero
    MomentSource source;
    int digits_used;
};

/// mu_0 at s = 0: N^{-(alpha+1)/2} Gamma((alpha+1)/2).
inline Real mu0_gaussian(const Real& alpha, const Real& bigN, const NumericContext& ctx)
{
    const Precision p = ctx.precision();
    const Real a = (alpha.with_precision(p) + 1) / 2;
    return exp(gamma_log(a, ctx) - a * log(bigN.with_precision(p)));
}

/// mu_0 = int_0^inf y^{(alpha-1)/2} exp(-N[y + s(y^2 - y)]) dy by double-exponential quadrature.
inline Real mu0_quadrature(const WeightParams& params, const NumericContext& ctx)
{
    const WeightParams w = params.at(Precision::from_digits(ctx.digits() + NumericContext::guard_digits + 10));
    const Real expo = (w.alpha - 1) / 2;
    return integrate_semi_infinite(
        [&](const Real& y) { return exp(expo * log(y) - w.bigN * (y + w.s * (y * y - y))); }, ctx);
}

/// D_nu(z) = e^{-z^2/4} / Gamma(-nu) * int_0^inf t^{-nu-1} exp(-t^2/2 - t z) dt, valid for nu < 0.
inline Real parabolic_cylinder_D(const Real& nu, const Real& z, const NumericContext& ctx)
{
    if (!(nu < 0))
        throw DomainError("parabolic_cylinder_D: integral representation needs nu < 0");
    const Precision wp = Precision::from_digits(ctx.digits() + NumericContext::guard_digits + 10);
    const Real v = nu.with_precision(wp);
    const Real x = z.with_precision(wp);
    const Real expo = -v - 1;
    const Real integral = integrate_semi_infinite(
        [&](const Real& t) { return exp(expo * log(t) - t * t / 2 - t * x); }, ctx);
    return (exp(-x * x / 4 - gamma_log(-v, ctx)) * integral).with_precision(ctx.precision());
}

/// mu_0 via the parabolic-cylinder closed form; requires s > 0.
inline Real mu0_closed_form(const WeightParams& params, const NumericContext& ctx)
{
    if (params.s_is_zero())
        throw DomainError("mu0_closed_form: s = 0 (use the Gaussian closed form)");
    const Precision wp = Precision::from_digits(ctx.digits() + NumericContext::guard_digits + 10);
    const WeightParams w = params.at(wp);
    const Real a = (w.alpha + 1) / 2;
    const Real two_ns = 2 * w.bigN * w.s;
    const Real one_minus = 1 - w.s;
    const Real z = w.bigN * one_minus / sqrt(two_ns);
    const Real d = parabolic_cylinder_D(-a, z, ctx);
    const Real log_pref = -(w.alpha + 1) / 4 * log(two_ns) + gamma_log(a, ctx) +
                          w.bigN * one_minus * one_minus / (8 * w.s);
    return (exp(log_pref) * d).with_precision(ctx.precision());
}

/// mu_0 .. mu_{max_order}. Even moments are mu_0 at alpha + 2k; odd moments are set to zero.
/// Default source: closed form (Gaussian) at s = 0, shared-node quadrature otherwise.
inline MomentTable moment_table(const WeightParams& params, int max_order, const NumericContext& ctx,
                                std::optional<MomentSource> source = std::nullopt)
{
    if (max_order < 0)
        throw std::invalid_argument("moment_table: max_order must be non-negative");
    const MomentSource src =
        source.value_or(params.s_is_zero() ? MomentSource::closed_form : MomentSource::quadrature);
    const Precision p = ctx.precision();
    std::vector<Real> values(static_cast<std::size_t>(max_order) + 1, Real(0L, p));
    const int n_even = max_order / 2 + 1;

    if (src == MomentSource::closed_form) {
        for (int k = 0; k < n_even; ++k) {
            const WeightParams shifted = params.with_alpha(params.alpha + 2 * k);
            values[static_cast<std::size_t>(2 * k)] =
                params.s_is_zero() ? mu0_gaussian(shifted.alpha, shifted.bigN, ctx) : mu0_closed_form(shifted, ctx);
        }
    } else {
        const WeightParams w = params.at(Precision::from_digits(ctx.digits() + NumericContext::guard_digits + 10));
        const Real expo = (w.alpha - 1) / 2;
        auto integrand = [&](const Real& y, std::vector<Real>& out) {
            Real v = exp(expo * log(y) - w.bigN * (y + w.s * (y * y - y)));
            for (auto& o : out) {
                o = v;
                v *= y;
            }
        };
        auto even = integrate_semi_infinite_many(integrand, static_cast<std::size_t>(n_even), ctx);
        for (int k = 0; k < n_even; ++k)
            values[static_cast<std::size_t>(2 * k)] = std::move(even[static_cast<std::size_t>(k)]);
    }
    return MomentTable{params, std::move(values), src, ctx.digits()};
}

}  // namespace dfreud

#endif  // DFREUD_MOMENTS_HPP
