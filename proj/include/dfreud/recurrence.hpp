#ifndef DFREUD_RECURRENCE_HPP
#define DFREUD_RECURRENCE_HPP

// The discrete Painleve I recursion for beta_n, its s-derivative and the second order ODE in s,
// the closed-form upper bound and the forward-iteration sensitivity experiment.

#include "dfreud/errors.hpp"
#include "dfreud/hankel.hpp"
#include "dfreud/moments.hpp"
#include "dfreud/numeric_context.hpp"
#include "dfreud/real.hpp"

#include <array>
#include <optional>
#include <vector>

namespace dfreud {

/// Delta_n = (1 - (-1)^n)/2, p_n = n + 2 alpha (even) | n - alpha (odd), q_n = n^2 | (n + alpha)^2.
struct ParityData {
    int delta_n;
    Real p_n;
    Real q_n;
};

inline int parity_delta(int n) { return (n % 2 + 2) % 2; }

inline ParityData parity_data(int n, const Real& alpha)
{
    const Precision p = alpha.precision();
    const Real nn(n, p);
    if (parity_delta(n) == 0)
        return {0, nn + 2 * alpha, nn * nn};
    const Real q = nn + alpha;
    return {1, nn - alpha, q * q};
}

/// Coefficients of the normal form x_{n+1} + x_n + x_{n-1} = (z_n + gamma (-1)^n)/x_n + delta.
struct DpiParameters {
    Real z_n;        // (2n + alpha)/(8Ns)
    Real gamma_dpi;  // -alpha/(8Ns)
    Real delta_dpi;  // (s - 1)/(2s)
};

inline DpiParameters dpi_parameters(int n, const WeightParams& params, Precision p)
{
    const WeightParams w = params.at(p);
    if (w.s_is_zero())
        throw DomainError("dpi_parameters: s = 0");
    const Real ns8 = 8 * w.bigN * w.s;
    return {(2 * n + w.alpha) / ns8, -w.alpha / ns8, (w.s - 1) / (2 * w.s)};
}

/// beta_n(0; alpha, N) = (n + alpha Delta_n)/(2N).
inline Real beta_at_s0(int n, const Real& alpha, const Real& bigN)
{
    if (n < 0)
        throw std::invalid_argument("beta_at_s0: n must be >= 0");
    const Real num = parity_delta(n) ? Real(n, alpha.precision()) + alpha : Real(n, alpha.precision());
    return num / (2 * bigN);
}

/// beta_1 = mu_2/mu_0 (s > 0) or (alpha+1)/(2N) at s = 0.
inline Real beta1_initial(const WeightParams& params, const NumericContext& ctx)
{
    const WeightParams w = params.at(ctx.precision());
    if (w.s_is_zero())
        return (w.alpha + 1) / (2 * w.bigN);
    const MomentTable mt = moment_table(params, 2, ctx);
    return mt.values[2] / mt.values[0];
}

/// Forward iteration beta_{n+1} = (n + alpha Delta_n)/(4Ns beta_n) - beta_n - beta_{n-1} - (1-s)/(2s)
/// from beta_0 = 0 and the supplied beta_1. Stops at the first non-positive or non-finite value,
/// recording its index in `halted_at` (the offending value is kept as the last entry).
inline BetaSequence dpi_forward(const WeightParams& params, const Real& beta1, int n_max, const NumericContext& ctx)
{
    const Precision p = ctx.precision();
    const WeightParams w = params.at(p);
    if (w.s_is_zero())
        throw DomainError("dpi_forward: s = 0 (use beta_at_s0)");
    if (!(beta1 > 0))
        throw DomainError("dpi_forward: beta_1 must be positive");
    if (n_max < 1)
        throw std::invalid_argument("dpi_forward: n_max must be >= 1");
    const Real four_ns = 4 * w.bigN * w.s;
    const Real kappa = (1 - w.s) / (2 * w.s);

    std::vector<Real> b;
    b.reserve(static_cast<std::size_t>(n_max) + 1);
    b.emplace_back(0L, p);
    b.push_back(beta1.with_precision(p));
    std::optional<int> halted;
    for (int n = 1; n < n_max; ++n) {
        const auto un = static_cast<std::size_t>(n);
        const Real rhs = parity_delta(n) ? Real(n, p) + w.alpha : Real(n, p);
        Real next = rhs / (four_ns * b[un]) - b[un] - b[un - 1] - kappa;
        const bool bad = !next.is_finite() || !(next > 0);
        b.push_back(std::move(next));
        if (bad) {
            halted = n + 1;
            break;
        }
    }
    return BetaSequence{params, BetaRoute::dpi, std::move(b), ctx.digits(), {}, halted};
}

/// Residuals of the recursion for 1 <= n <= len-2 (index 0 of the result is n = 1).
/// For s > 0: beta_n(beta_{n+1} + beta_n + beta_{n-1} + (1-s)/(2s)) - (n + alpha Delta_n)/(4Ns).
/// At s = 0 the s-multiplied form s beta_n(...) + beta_n (1-s)/2 - (n + alpha Delta_n)/(4N) is used.
inline std::vector<Real> dpi_residual(const BetaSequence& seq, const WeightParams& params)
{
    const auto& b = seq.betas;
    if (b.size() < 3)
        throw std::invalid_argument("dpi_residual: need at least beta_0, beta_1, beta_2");
    const Precision p = b[1].precision();
    const WeightParams w = params.at(p);
    std::vector<Real> r;
    for (std::size_t n = 1; n + 1 < b.size(); ++n) {
        const int ni = static_cast<int>(n);
        const Real num = parity_delta(ni) ? Real(ni, p) + w.alpha : Real(ni, p);
        const Real sum = b[n + 1] + b[n] + b[n - 1];
        if (w.s_is_zero())
            r.push_back(b[n] / 2 - num / (4 * w.bigN));
        else
            r.push_back(b[n] * (sum + (1 - w.s) / (2 * w.s)) - num / (4 * w.bigN * w.s));
    }
    return r;
}

/// beta_n'(s) = beta_n/(2s) [N(s+1)(beta_{n+1} - beta_{n-1}) - 1]; window = {beta_{n-1}, beta_n, beta_{n+1}}.
inline Real beta_prime(int n, const std::array<Real, 3>& window, const WeightParams& params)
{
    (void)n;
    const WeightParams w = params.at(window[1].precision());
    if (w.s_is_zero())
        throw DomainError("beta_prime: s = 0");
    return window[1] / (2 * w.s) * (w.bigN * (w.s + 1) * (window[2] - window[0]) - 1);
}

/// beta_n''(s) by differentiating the beta' relation once more and substituting it for beta_{n+-1}'.
/// window = {beta_{n-2}, ..., beta_{n+2}}.
inline Real beta_second(int n, const std::array<Real, 5>& window, const WeightParams& params)
{
    const WeightParams w = params.at(window[2].precision());
    if (w.s_is_zero())
        throw DomainError("beta_second: s = 0");
    const Real& b = window[2];
    const Real bp = beta_prime(n, {window[1], window[2], window[3]}, params);
    const Real bp_up = beta_prime(n + 1, {window[2], window[3], window[4]}, params);
    const Real bp_dn = beta_prime(n - 1, {window[0], window[1], window[2]}, params);
    const Real diff = window[3] - window[1];
    const Real bracket = w.bigN * (w.s + 1) * diff - 1;
    return (bp / (2 * w.s) - b / (2 * w.s * w.s)) * bracket +
           b / (2 * w.s) * (w.bigN * diff + w.bigN * (w.s + 1) * (bp_up - bp_dn));
}

/// Right-hand side of the second-order ODE for beta_n(s) given beta, beta' and the parity constants.
inline Real ode25_rhs(const Real& b, const Real& bp, const Real& p_n, const Real& q_n, const WeightParams& params)
{
    const WeightParams w = params.at(b.precision());
    const Real& s = w.s;
    const Real& nn = w.bigN;
    const Real sp1 = 1 + s;
    const Real sm1 = 1 - s;
    const Real s2 = s * s;
    const Real s3 = s2 * s;
    const Real s4 = s3 * s;
    return bp * bp / (2 * b) - (2 + s) / (s * sp1) * bp + 3 * nn * nn * sp1 * sp1 / (8 * s2) * b * b * b +
           nn * nn * sp1 * sp1 * sm1 / (4 * s3) * b * b +
           ((nn * nn * sm1 * sm1 * sp1 * sp1 * sp1 - 4 * s2 * (3 - s)) / (32 * s4 * sp1) +
            nn * sp1 * sp1 / (16 * s3) * p_n) *
               b -
           sp1 * sp1 * q_n / (128 * s4 * b);
}

/// Signed residual beta_n'' - rhs using beta' and beta'' from the differential-difference relation.
/// betas must cover indices n-2 .. n+2. `swap_parity` evaluates with the other parity's p_n, q_n.
inline Real ode25_residual_from(int n, const std::vector<Real>& betas, const WeightParams& params,
                                bool swap_parity = false)
{
    if (n < 2 || static_cast<std::size_t>(n) + 2 >= betas.size())
        throw std::invalid_argument("ode25_residual: need beta_{n-2} .. beta_{n+2} with n >= 2");
    const auto un = static_cast<std::size_t>(n);
    const std::array<Real, 5> win{betas[un - 2], betas[un - 1], betas[un], betas[un + 1], betas[un + 2]};
    const Real bp = beta_prime(n, {win[1], win[2], win[3]}, params);
    const Real bpp = beta_second(n, win, params);
    const Real alpha = params.alpha.with_precision(betas[un].precision());
    ParityData pd = parity_data(n, alpha);
    if (swap_parity) {
        // Same n, other branch of the parity definitions.
        const Real nn(n, alpha.precision());
        pd = pd.delta_n == 0 ? ParityData{1, nn - alpha, (nn + alpha) * (nn + alpha)}
                             : ParityData{0, nn + 2 * alpha, nn * nn};
    }
    return bpp - ode25_rhs(betas[un], bp, pd.p_n, pd.q_n, params);
}

/// ODE residual with beta_{n-2} .. beta_{n+2} taken from the Hankel route.
inline Real ode25_residual(int n, const WeightParams& params, const NumericContext& ctx)
{
    if (params.s_is_zero())
        throw DomainError("ode25_residual: s = 0");
    const BetaSequence seq = beta_from_moments(params, n + 2, ctx);
    return ode25_residual_from(n, seq.betas, params);
}

/// 0 < beta_n < -(1-s)/(4s) + sqrt(((1-s)/(4s))^2 + (n + alpha Delta_n)/(4Ns)).
inline Real upper_bound(int n, const WeightParams& params, Precision p)
{
    const WeightParams w = params.at(p);
    if (w.s_is_zero())
        throw DomainError("upper_bound: s = 0");
    const Real c = (1 - w.s) / (4 * w.s);
    const Real num = parity_delta(n) ? Real(n, p) + w.alpha : Real(n, p);
    return -c + sqrt(c * c + num / (4 * w.bigN * w.s));
}

struct SensitivityRun {
    WeightParams params;
    Real epsilon;
    int digits;
    std::optional<int> first_failure_index;
    std::vector<Real> trajectory;  // beta_0 .. beta_k, k = n_max or the failure index
};

/// Forward recursion from beta_1 + epsilon; failure (non-positive or non-finite beta) is data.
inline SensitivityRun sensitivity_run(const WeightParams& params, const Real& epsilon, int n_max,
                                      const NumericContext& ctx)
{
    if (params.s_is_zero())
        throw DomainError("sensitivity_run: s = 0");
    const Real b1 = beta1_initial(params, ctx) + epsilon.with_precision(ctx.precision());
    if (!(b1 > 0))
        return SensitivityRun{params, epsilon, ctx.digits(), 1, {Real(0L, ctx.precision()), b1}};
    BetaSequence seq = dpi_forward(params, b1, n_max, ctx);
    return SensitivityRun{params, epsilon, ctx.digits(), seq.halted_at, std::move(seq.betas)};
}

/// Several perturbations of the same initial value; beta_1 is computed once.
inline std::vector<SensitivityRun> sensitivity_sweep(const WeightParams& params, const std::vector<Real>& epsilons,
                                                     int n_max, const NumericContext& ctx)
{
    if (params.s_is_zero())
        throw DomainError("sensitivity_sweep: s = 0");
    const Real b1 = beta1_initial(params, ctx);
    std::vector<SensitivityRun> out;
    out.reserve(epsilons.size());
    for (const auto& eps : epsilons) {
        const Real start = b1 + eps.with_precision(ctx.precision());
        if (!(start > 0)) {
            out.push_back(SensitivityRun{params, eps, ctx.digits(), 1, {Real(0L, ctx.precision()), start}});
            continue;
        }
        BetaSequence seq = dpi_forward(params, start, n_max, ctx);
        out.push_back(SensitivityRun{params, eps, ctx.digits(), seq.halted_at, std::move(seq.betas)});
    }
    return out;
}

}  // namespace dfreud

#endif  // DFREUD_RECURRENCE_HPP
