#ifndef DFREUD_ASYMPTOTICS_HPP
#define DFREUD_ASYMPTOTICS_HPP

// Asymptotic evaluators for beta_n: s -> 0, n -> infinity at fixed N, and n, N -> infinity with
// r = n/N fixed; plus the Coulomb-fluid endpoint and the Mhaskar-Rakhmanov-Saff number.

#include "dfreud/errors.hpp"
#include "dfreud/moments.hpp"
#include "dfreud/numeric_context.hpp"
#include "dfreud/real.hpp"
#include "dfreud/recurrence.hpp"

#include <array>
#include <vector>

namespace dfreud {

// ---------------------------------------------------------------------------
// s -> 0

/// beta_n = sqrt(q_n)/(2N) (1 + c_1 s + c_2 s^2 + c_3 s^3 + O(s^4)).
/// c_k are written in R = sqrt(q_n) = n + alpha Delta_n and p = p_n; c4 is the first omitted coefficient.
struct SmallSCoefficients {
    std::array<Real, 4> c;
    Real c4;
    Real prefactor;
};

inline SmallSCoefficients small_s_coefficients(int n, const WeightParams& params, Precision prec)
{
    const WeightParams w = params.at(prec);
    const ParityData pd = parity_data(n, w.alpha);
    const Real R = parity_delta(n) ? Real(n, prec) + w.alpha : Real(n, prec);
    const Real& p = pd.p_n;
    const Real x = R / w.bigN;
    const Real y = p / w.bigN;
    const Real iN = 1 / w.bigN;
    const Real iN2 = iN * iN;
    const Real x2 = x * x, y2 = y * y, xy = x * y;

    const Real c1 = 1 - 2 * x - y;
    const Real c2 = 1 - 6 * x - 3 * y + x2 * 17 / 2 + 8 * xy + y2 * 3 / 2 + 6 * iN2;
    const Real c3 = 1 - 12 * x - 6 * y + x2 * 85 / 2 + 40 * xy + y2 * 15 / 2 + 30 * iN2 - 46 * x2 * x -
                    x2 * y * 125 / 2 - 24 * x * y2 - 112 * x * iN2 - y2 * y * 5 / 2 - 50 * y * iN2;
    const Real c4 = 1 - 20 * x - 10 * y + x2 * 255 / 2 + 120 * xy + y2 * 45 / 2 + 90 * iN2 - 322 * x2 * x -
                    x2 * y * 875 / 2 - 168 * x * y2 - 784 * x * iN2 - y2 * y * 35 / 2 - 350 * y * iN2 +
                    x2 * x2 * 2247 / 8 + 496 * x2 * xy + x2 * y2 * 1155 / 4 + 1543 * x2 * iN2 + 64 * xy * y2 +
                    1344 * xy * iN2 + y2 * y2 * 35 / 8 + 245 * y2 * iN2 + 630 * iN2 * iN2;
    return {{Real(1L, prec), c1, c2, c3}, c4, R / (2 * w.bigN)};
}

/// Terms prefactor * c_k s^k, k = 0..3.
inline std::vector<Real> beta_small_s_terms(int n, const WeightParams& params, const NumericContext& ctx)
{
    const SmallSCoefficients sc = small_s_coefficients(n, params, ctx.precision());
    const Real s = params.s.with_precision(ctx.precision());
    std::vector<Real> terms;
    Real sk(1L, ctx.precision());
    for (const auto& c : sc.c) {
        terms.push_back(sc.prefactor * c * sk);
        sk *= s;
    }
    return terms;
}

inline Real beta_small_s(int n, const WeightParams& params, const NumericContext& ctx)
{
    Real sum(0L, ctx.precision());
    for (const auto& t : beta_small_s_terms(n, params, ctx))
        sum += t;
    return sum;
}

// ---------------------------------------------------------------------------
// n -> infinity, N fixed

/// beta_n = sqrt(n)/(2 sqrt(3Ns)) (1 + sum_{k=1}^7 d_k n^{-k/2}), with X = N(1-s)^2 + 12 s alpha Delta_n.
struct LargeNCoefficients {
    std::array<Real, 8> d;  // d[0] = 1, d[1..7]
    Real prefactor;         // sqrt(n)/(2 sqrt(3Ns))
};

inline LargeNCoefficients large_n_coefficients(int n, const WeightParams& params, Precision prec)
{
    const WeightParams w = params.at(prec);
    if (w.s_is_zero())
        throw DomainError("large_n_coefficients: s = 0");
    const Real& s = w.s;
    const Real& N = w.bigN;
    const Real sqrtN = sqrt(N);
    const Real sqrt3 = sqrt(Real(3L, prec));
    const Real sqrt_s = sqrt(s);
    const Real om = 1 - s;
    const Real adelta = parity_delta(n) ? w.alpha : Real(0L, prec);
    const Real X = N * om * om + 12 * s * adelta;

    std::array<Real, 8> d{Real(1L, prec), Real(0L, prec), Real(0L, prec), Real(0L, prec),
                          Real(0L, prec), Real(0L, prec), Real(0L, prec), Real(0L, prec)};
    d[1] = -sqrtN * om / (2 * sqrt3 * sqrt_s);
    d[2] = N * om * om / (24 * s) + adelta / 2;
    d[4] = Real::ratio(1, 24, prec) - X * X / (1152 * s * s);
    d[5] = -sqrtN * om / (48 * sqrt3 * sqrt_s);
    d[6] = X * (X - 12 * s) * (X + 12 * s) / (27648 * s * s * s);
    d[7] = sqrtN * om * X / (288 * sqrt3 * s * sqrt_s);
    const Real pref = sqrt(Real(n, prec)) / (2 * sqrt(3 * N * s));
    return {std::move(d), pref};
}

/// Terms prefactor * d_k n^{-k/2}, k = 0..7.
inline std::vector<Real> beta_large_n_terms(int n, const WeightParams& params, Precision prec)
{
    if (n < 1)
        throw std::invalid_argument("beta_large_n: n must be >= 1");
    const LargeNCoefficients lc = large_n_coefficients(n, params, prec);
    const Real inv_sqrt_n = 1 / sqrt(Real(n, prec));
    std::vector<Real> terms;
    Real f(1L, prec);
    for (const auto& d : lc.d) {
        terms.push_back(lc.prefactor * d * f);
        f *= inv_sqrt_n;
    }
    return terms;
}

inline Real beta_large_n(int n, const WeightParams& params, Precision prec)
{
    Real sum(0L, prec);
    for (const auto& t : beta_large_n_terms(n, params, prec))
        sum += t;
    return sum;
}

// ---------------------------------------------------------------------------
// n, N -> infinity, r = n/N fixed

struct DoubleScalingData {
    Real r;
    Real g_s;  // sqrt(1 - 2s + 12rs + s^2)
    Real f_s;  // 1 - 2s - 4rs + s^2
    Real a0;
    Real a1;   // parity of n
    Real a2;   // parity of n
};

/// Coefficients of beta_n = a0 + a1/N + a2/N^2 + O(N^-3) from the parity-split solution of the
/// recursion. a1 is written without the removable 1/f factor; a2 is the parity-split second order.
inline DoubleScalingData double_scaling_coefficients(int n, const Real& bigN_in, const Real& s_in,
                                                     const Real& alpha_in, Precision prec)
{
    const Real bigN = bigN_in.with_precision(prec);
    const Real s = s_in.with_precision(prec);
    const Real alpha = alpha_in.with_precision(prec);
    if (!(s > 0) || s > 1)
        throw DomainError("double_scaling: s must lie in (0, 1]");
    const Real r = Real(n, prec) / bigN;
    if (!(r > 0))
        throw DomainError("double_scaling: r = n/N must be positive");
    const Real g = sqrt(1 - 2 * s + 12 * r * s + s * s);
    const Real f = 1 - 2 * s - 4 * r * s + s * s;
    const Real a0 = (s - 1 + g) / (12 * s);
    const Real w = 2 * (1 - s) + g;

    // Even/odd first corrections as half-sum/half-difference of u1, v1.
    const Real u1 = alpha / (2 * g);
    const Real v1 = 3 * alpha / (2 * w);
    const Real e1 = (u1 - v1) / 2;
    const Real o1 = (u1 + v1) / 2;

    const Real a0a0pp = a0 * (-3 * s / (g * g * g));
    const Real b1 = -(e1 * (2 * o1 + e1) + a0a0pp);
    const Real b2 = -(o1 * (2 * e1 + o1) + a0a0pp);
    const Real u2 = (b1 + b2) * 2 * s / g;
    const Real v2 = (b2 - b1) * 6 * s / w;
    const bool odd = parity_delta(n) == 1;
    return {r, g, f, a0, odd ? o1 : e1, odd ? (u2 + v2) / 2 : (u2 - v2) / 2};
}

/// The a1, a2 displays exactly as printed (with 1/f factors). Throws SingularCoefficient near f = 0.
inline DoubleScalingData double_scaling_display_coefficients(int n, const Real& bigN_in, const Real& s_in,
                                                             const Real& alpha_in, Precision prec)
{
    DoubleScalingData d = double_scaling_coefficients(n, bigN_in, s_in, alpha_in, prec);
    const Real s = s_in.with_precision(prec);
    const Real alpha = alpha_in.with_precision(prec);
    const Real& g = d.g_s;
    const Real& f = d.f_s;
    const Real& r = d.r;
    const Real tol = Real::pow10(-(Precision{prec}.decimal_digits() / 2), prec);
    if (abs(f) < tol)
        throw SingularCoefficient("double_scaling: f(s) = 1 - 2s - 4rs + s^2 vanishes");
    const Real g3 = g * g * g;
    const Real base = s * (s - 1) / (2 * g3 * g) + s * (4 - 3 * alpha * alpha) / (8 * g3);
    if (parity_delta(n) == 0) {
        d.a1 = (s - 1 + g) * alpha / (4 * (s - 1) * g - 2 * g * g);
        d.a2 = base + 3 * alpha * alpha * s * (s - 1) / (2 * f * f) +
               (15 * alpha * alpha * s + 3 * alpha * alpha * s * s * (12 * r + 5 * s - 10)) / (8 * f * g);
    } else {
        d.a1 = alpha * (1 - s) / (2 * f) - 4 * alpha * s * r / (f * g);
        d.a2 = base + alpha * alpha * s * (1 - s) / (2 * f * f) - 3 * alpha * alpha * s / (8 * f * g);
    }
    return d;
}

inline std::vector<Real> beta_double_scaling_terms(int n, const Real& bigN, const Real& s, const Real& alpha,
                                                   Precision prec)
{
    const DoubleScalingData d = double_scaling_coefficients(n, bigN, s, alpha, prec);
    const Real iN = 1 / bigN.with_precision(prec);
    return {d.a0, d.a1 * iN, d.a2 * iN * iN};
}

inline Real beta_double_scaling(int n, const Real& bigN, const Real& s, const Real& alpha, Precision prec)
{
    Real sum(0L, prec);
    for (const auto& t : beta_double_scaling_terms(n, bigN, s, alpha, prec))
        sum += t;
    return sum;
}

// ---------------------------------------------------------------------------
// Coulomb fluid and MRS number

struct FluidEndpoint {
    Real b_squared;
    Real a_mu;
};

/// Positive root b^2 of (3/2) N s b^4 + N(1-s) b^2 = 2n + alpha; (2n + alpha)/N at s = 0.
inline Real coulomb_b_squared(int n, const WeightParams& params, Precision prec)
{
    const WeightParams w = params.at(prec);
    const Real m = (2 * n + w.alpha) / w.bigN;
    if (w.s_is_zero())
        return m;
    const Real om = 1 - w.s;
    // Rationalised root, stable as s -> 0.
    return 2 * m / (om + sqrt(om * om + 6 * w.s * m));
}

/// Positive root a of (3/2) N s a^4 + N(1-s) a^2 = mu, i.e. the normalisation
/// mu = (2/pi) int_0^1 a y Q'(a y)/sqrt(1-y^2) dy with Q(x) = N s x^4 + N(1-s) x^2.
inline Real mrs_number(const Real& mu_in, const WeightParams& params, Precision prec)
{
    const WeightParams w = params.at(prec);
    const Real mu = mu_in.with_precision(prec);
    if (!(mu > 0))
        throw DomainError("mrs_number: mu must be positive");
    const Real om = w.bigN * (1 - w.s);
    const Real a2 = 2 * mu / (om + sqrt(om * om + 6 * w.bigN * w.s * mu));
    return sqrt(a2);
}

}  // namespace dfreud

#endif  // DFREUD_ASYMPTOTICS_HPP
