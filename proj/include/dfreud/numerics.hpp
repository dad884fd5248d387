#ifndef DFREUD_NUMERICS_HPP
#define DFREUD_NUMERICS_HPP

// Special functions, semi-infinite quadrature and finite differences at arbitrary precision.

#include "dfreud/detail/glaisher.hpp"
#include "dfreud/errors.hpp"
#include "dfreud/numeric_context.hpp"
#include "dfreud/real.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace dfreud {

// ---------------------------------------------------------------------------
// Constants

struct BernoulliRational {
    int index;
    const char* numerator;
    const char* denominator;
};

/// Even-index Bernoulli numbers B_2 .. B_40 as exact rationals.
inline constexpr std::array<BernoulliRational, 20> bernoulli_table{{
    {2, "1", "6"},
    {4, "-1", "30"},
    {6, "1", "42"},
    {8, "-1", "30"},
    {10, "5", "66"},
    {12, "-691", "2730"},
    {14, "7", "6"},
    {16, "-3617", "510"},
    {18, "43867", "798"},
    {20, "-174611", "330"},
    {22, "854513", "138"},
    {24, "-236364091", "2730"},
    {26, "8553103", "6"},
    {28, "-23749461029", "870"},
    {30, "8615841276005", "14322"},
    {32, "-7709321041217", "510"},
    {34, "2577687858367", "6"},
    {36, "-26315271553053477373", "1919190"},
    {38, "2929993913841559", "6"},
    {40, "-261082718496449122051", "13530"},
}};

struct Constants {
    /// Glaisher-Kinkelin constant rounded to `p` (the literal holds 2100 digits).
    static Real glaisher_A(Precision p) { return Real::parse(detail::glaisher_literal, p); }

    /// B_{2k} for 1 <= k <= 20.
    static Real bernoulli(int two_k, Precision p)
    {
        if (two_k < 2 || two_k > 40 || two_k % 2 != 0)
            throw std::out_of_range("bernoulli: index must be even in [2, 40]");
        const auto& b = bernoulli_table[static_cast<std::size_t>(two_k / 2 - 1)];
        // The integer strings are exact at any precision above 80 bits.
        const Precision wp{std::max<mpfr_prec_t>(p.bits, 96)};
        return (Real::parse(b.numerator, wp) / Real::parse(b.denominator, wp)).with_precision(p);
    }
};

// ---------------------------------------------------------------------------
// Gamma and Barnes G

/// log Gamma(x) for x > 0 (MPFR's correctly rounded lngamma).
inline Real gamma_log(const Real& x, const NumericContext& ctx)
{
    if (!(x > 0))
        throw DomainError("gamma_log: argument must be positive");
    return lngamma(x.with_precision(ctx.precision()));
}

namespace detail {

/// Number of upward shifts so that the first omitted Barnes-G tail term (the B_42 term)
/// drops below 10^-digits. Capped to keep the cost bounded at very high precision.
inline long barnes_shift_target(int digits)
{
    // |B_42| / (40*41*42) ~ 1.2e13, so we need w^40 >= 1.2e13 * 10^digits.
    const double log10w = (static_cast<double>(digits) + 13.1) / 40.0;
    const double w = std::pow(10.0, std::min(log10w, 6.7));
    return static_cast<long>(std::max(20.0, std::ceil(w)));
}

/// log G(w + 1) from the large-argument expansion, w >= 20.
inline Real barnes_g_asymptotic(const Real& w, Precision p)
{
    Real sum = w * w / 4 + w * lngamma(w + 1) - (w * (w + 1) / 2 + Real::ratio(1, 12, p)) * log(w) -
               log(Constants::glaisher_A(p));
    const Real inv_w2 = 1 / (w * w);
    Real wpow = inv_w2;
    for (int k = 1; k <= 19; ++k) {
        const long denom = static_cast<long>(2 * k) * (2 * k + 1) * (2 * k + 2);
        sum += Constants::bernoulli(2 * k + 2, p) * wpow / denom;
        wpow *= inv_w2;
    }
    return sum;
}

}  // namespace detail

/// log G(z) for z > 0, normalised by G(1) = 1 and G(z + 1) = Gamma(z) G(z).
inline Real barnes_g_log(const Real& z_in, const NumericContext& ctx)
{
    if (!(z_in > 0))
        throw DomainError("barnes_g_log: argument must be positive");
    const Precision p = Precision::from_digits(ctx.digits() + NumericContext::guard_digits + 10);
    const Real z = z_in.with_precision(p);

    const long target = detail::barnes_shift_target(ctx.digits());
    long m = 0;
    if (z < target)
        m = static_cast<long>(std::ceil(target - z.to_double())) + 1;

    // log G(z) = log G(z+m) - sum_{k<m} log Gamma(z+k)
    //          = log G(z+m) - m log Gamma(z) - sum_{k=1}^{m-1} log (z)_k, (z)_k rising factorial.
    Real shift = lngamma(z) * m;
    Real rising(1L, p);
    Real prod(1L, p);
    for (long k = 1; k < m; ++k) {
        rising *= z + (k - 1);
        prod *= rising;
        if (mpfr_get_exp(prod.raw()) > (1L << 20)) {
            shift += log(prod);
            prod = Real(1L, p);
        }
    }
    shift += log(prod);

    const Real w = z + (m - 1);
    return (detail::barnes_g_asymptotic(w, p) - shift).with_precision(ctx.precision());
}

// ---------------------------------------------------------------------------
// Quadrature on (0, inf)

namespace detail {

struct ExpSinhNode {
    Real y;       // abscissa exp(pi/2 sinh t)
    Real weight;  // dy/dt
};

inline ExpSinhNode exp_sinh_node(const Real& t, const Real& half_pi)
{
    Real y = exp(half_pi * sinh(t));
    Real w = y * half_pi * cosh(t);
    return {std::move(y), std::move(w)};
}

}  // namespace detail

/// Integrates m functions sharing one set of exp-sinh nodes. `f(y, out)` fills out[0..m-1].
/// Each component converges to relative tolerance ctx.quad_tol(); throws IntegrationError otherwise.
template <class F>
std::vector<Real> integrate_semi_infinite_many(F&& f, std::size_t m, const NumericContext& ctx)
{
    const Precision wp = Precision::from_digits(ctx.digits() + NumericContext::guard_digits + 10);
    const Real half_pi = Real::pi(wp) / 2;
    const Real tol = ctx.quad_tol().with_precision(wp);
    const Real cut = tol * Real::pow10(-5, wp);
    const double h0 = 0.25;
    const int max_steps = 80;  // |t| <= 20
    const int max_level = 13;

    std::vector<Real> vals(m, Real(0L, wp));
    auto eval = [&](const Real& t, std::vector<Real>& terms) {
        const auto node = detail::exp_sinh_node(t, half_pi);
        f(node.y, vals);
        for (std::size_t i = 0; i < m; ++i) {
            terms[i] = vals[i] * node.weight;
            if (!terms[i].is_finite())
                terms[i] = Real(0L, wp);
        }
    };

    // Truncation of the t-range on the coarse grid.
    std::vector<Real> maxabs(m, Real(0L, wp));
    std::vector<Real> sums(m, Real(0L, wp));
    std::vector<Real> terms(m, Real(0L, wp));
    eval(Real(0L, wp), terms);
    for (std::size_t i = 0; i < m; ++i) {
        sums[i] = terms[i];
        maxabs[i] = abs(terms[i]);
    }
    int right = 0;
    int left = 0;
    for (int dir : {1, -1}) {
        int small_run = 0;
        int k = 0;
        while (true) {
            ++k;
            if (k > max_steps)
                throw IntegrationError("integrate_semi_infinite: tail not shrinking within |t| <= 20");
            eval(Real(dir * h0 * k, wp), terms);
            bool all_small = true;
            for (std::size_t i = 0; i < m; ++i) {
                sums[i] += terms[i];
                const Real a = abs(terms[i]);
                if (a > maxabs[i])
                    maxabs[i] = a;
                if (a > cut * maxabs[i])
                    all_small = false;
            }
            small_run = all_small ? small_run + 1 : 0;
            if (small_run >= 2)
                break;
        }
        (dir > 0 ? right : left) = k;
    }

    std::vector<Real> estimate(m, Real(0L, wp));
    for (std::size_t i = 0; i < m; ++i)
        estimate[i] = sums[i] * h0;

    Real h(h0, wp);
    for (int level = 1; level <= max_level; ++level) {
        const long count = (static_cast<long>(left) + right) << level;
        const Real step = h / 2;
        const Real t_left = -Real(h0 * left, wp);
        for (long j = 1; j < count; j += 2) {
            eval(t_left + step * j, terms);
            for (std::size_t i = 0; i < m; ++i)
                sums[i] += terms[i];
        }
        h = step;
        bool converged = level >= 3;
        for (std::size_t i = 0; i < m; ++i) {
            Real next = sums[i] * h;
            if (!next.is_finite())
                throw IntegrationError("integrate_semi_infinite: non-finite partial sum");
            const Real scale = max(abs(next), maxabs[i] * h);
            if (!scale.is_zero()) {
                const Real rel = abs(next - estimate[i]) / scale;
                if (rel * rel > tol / 100)
                    converged = false;
            }
            estimate[i] = std::move(next);
        }
        if (converged) {
            for (auto& e : estimate)
                e = e.with_precision(ctx.precision());
            return estimate;
        }
    }
    throw IntegrationError("integrate_semi_infinite: no convergence after " + std::to_string(max_level) +
                           " refinements");
}

/// Integral of f over (0, inf). f may carry an integrable y^p singularity (p > -1) at 0 and must
/// decay at least exponentially.
template <class F>
Real integrate_semi_infinite(F&& f, const NumericContext& ctx)
{
    auto wrapped = [&](const Real& y, std::vector<Real>& out) { out[0] = f(y); };
    return std::move(integrate_semi_infinite_many(wrapped, 1, ctx)[0]);
}

/// Integrals over (0, 1) through s = y/(1+y). `f(s, out)` fills out[0..m-1]; f must be bounded
/// near both endpoints or carry an integrable power singularity.
template <class F>
std::vector<Real> integrate_unit_interval_many(F&& f, std::size_t m, const NumericContext& ctx)
{
    auto mapped = [&](const Real& y, std::vector<Real>& out) {
        const Real one_plus = 1 + y;
        f(y / one_plus, out);
        const Real jac = 1 / (one_plus * one_plus);
        for (auto& o : out)
            o *= jac;
    };
    return integrate_semi_infinite_many(mapped, m, ctx);
}

// ---------------------------------------------------------------------------
// Central differences

/// Same stencil with an explicit absolute step h.
template <class F>
Real central_difference_step(F&& f, const Real& s0, int order, const Real& h)
{
    if (order != 1 && order != 2)
        throw std::invalid_argument("central_difference: order must be 1 or 2");
    const Real fm2 = f(s0 - 2 * h);
    const Real fm1 = f(s0 - h);
    const Real fp1 = f(s0 + h);
    const Real fp2 = f(s0 + 2 * h);
    if (order == 1)
        return (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
    const Real f0 = f(s0);
    return (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h);
}

/// Fourth-order central difference of f at s0 (order 1 or 2) with step ctx.diff_step()*max(|s0|,1).
template <class F>
Real central_difference(F&& f, const Real& s0, int order, const NumericContext& ctx)
{
    return central_difference_step(f, s0, order, ctx.diff_step() * max(abs(s0), Real(1L, ctx.precision())));
}

}  // namespace dfreud

#endif  // DFREUD_NUMERICS_HPP
