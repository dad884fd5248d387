#ifndef DFREUD_HANKEL_HPP
#define DFREUD_HANKEL_HPP

// Hankel determinants of the moment matrix, the norms h_j and beta_n = h_n / h_{n-1}.

#include "dfreud/errors.hpp"
#include "dfreud/moments.hpp"
#include "dfreud/numeric_context.hpp"
#include "dfreud/numerics.hpp"
#include "dfreud/real.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace dfreud {

struct HankelData {
    WeightParams params;
    int n;
    std::vector<Real> h;  // h_0 .. h_{n-1}
    Real logdet;          // log D_n = sum log h_j
    int digits_used;
    double digits_lost;   // max_j log10(A_jj / h_j) observed in the factorization
};

enum class BetaRoute { hankel, dpi, expansion_smalls, expansion_largen, expansion_double };

inline const char* to_string(BetaRoute r)
{
    switch (r) {
    case BetaRoute::hankel: return "hankel";
    case BetaRoute::dpi: return "dpi";
    case BetaRoute::expansion_smalls: return "expansion_smalls";
    case BetaRoute::expansion_largen: return "expansion_largen";
    case BetaRoute::expansion_double: return "expansion_double";
    }
    return "unknown";
}

struct BetaSequence {
    WeightParams params;
    BetaRoute route;
    std::vector<Real> betas;  // beta_0 = 0, beta_1, ...
    int digits_used;
    std::vector<Real> h;            // norms, when the route produces them
    std::optional<int> halted_at;   // dpi: first index that came out non-positive or non-finite
};

/// One attempt at the working precision of `ctx`: LDL^T pivots of the n x n moment matrix.
/// Throws PrecisionExhausted when a pivot is not positive.
inline HankelData hankel_factor(const WeightParams& params, int n, const NumericContext& ctx)
{
    if (n < 1)
        throw std::invalid_argument("hankel: order n must be >= 1");
    const MomentTable mt = moment_table(params, 2 * n - 2, ctx);
    const auto& mu = mt.values;
    const auto un = static_cast<std::size_t>(n);
    const Precision p = ctx.precision();

    // Lower-triangular L (unit diagonal) stored with D on the diagonal.
    std::vector<std::vector<Real>> a(un, std::vector<Real>(un, Real(0L, p)));
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            a[i][j] = mu[i + j];

    std::vector<Real> h;
    h.reserve(un);
    double lost = 0.0;
    for (std::size_t j = 0; j < un; ++j) {
        Real d = a[j][j];
        for (std::size_t k = 0; k < j; ++k)
            if (!a[j][k].is_zero())
                d -= a[j][k] * a[j][k] * h[k];
        if (!(d > 0))
            throw PrecisionExhausted(static_cast<int>(j), ctx.digits());
        lost = std::max(lost, (log10(a[j][j] / d)).to_double());
        for (std::size_t i = j + 1; i < un; ++i) {
            Real v = a[i][j];
            for (std::size_t k = 0; k < j; ++k)
                if (!a[i][k].is_zero() && !a[j][k].is_zero())
                    v -= a[i][k] * a[j][k] * h[k];
            a[i][j] = v / d;
        }
        h.push_back(std::move(d));
    }
    Real logdet(0L, p);
    for (const auto& hj : h)
        logdet += log(hj);
    return HankelData{params, n, std::move(h), std::move(logdet), ctx.digits(), lost};
}

/// h_0 .. h_{n-1} accurate to ctx.digits(). The factorization is repeated at higher precision
/// until the digits lost to cancellation leave ctx.digits() intact, up to max_digits_cap().
inline HankelData h_sequence(const WeightParams& params, int n, const NumericContext& ctx)
{
    const int cap = max_digits_cap();
    int work = std::min(cap, ctx.digits() + 20 + 2 * n);
    while (true) {
        try {
            HankelData hd = hankel_factor(params, n, NumericContext(work));
            const int needed = ctx.digits() + static_cast<int>(std::ceil(hd.digits_lost)) + 10;
            if (needed <= work) {
                for (auto& hj : hd.h)
                    hj = hj.with_precision(ctx.precision());
                hd.logdet = hd.logdet.with_precision(ctx.precision());
                hd.digits_used = work;
                return hd;
            }
            if (work >= cap)
                throw PrecisionExhausted(n - 1, work);
            work = std::min(cap, std::max(needed + 10, work + 10));
        } catch (const PrecisionExhausted& e) {
            if (work >= cap)
                throw;
            work = std::min(cap, 2 * work);
        }
    }
}

/// beta_1 .. beta_{n_max} from ratios of consecutive Hankel pivots; beta_0 = 0.
inline BetaSequence beta_from_moments(const WeightParams& params, int n_max, const NumericContext& ctx)
{
    if (n_max < 1)
        throw std::invalid_argument("beta_from_moments: n_max must be >= 1");
    HankelData hd = h_sequence(params, n_max + 1, ctx);
    std::vector<Real> betas;
    betas.reserve(static_cast<std::size_t>(n_max) + 1);
    betas.emplace_back(0L, ctx.precision());
    for (int j = 1; j <= n_max; ++j)
        betas.push_back(hd.h[static_cast<std::size_t>(j)] / hd.h[static_cast<std::size_t>(j - 1)]);
    return BetaSequence{params, BetaRoute::hankel, std::move(betas), hd.digits_used, std::move(hd.h), std::nullopt};
}

/// log D_n(0) from the product formula
/// D_n(0) = (2 pi)^{n/2} / ((2N)^{n^2/2} N^{alpha n/2} n!) prod_{j=1}^n Gamma((alpha+1)/2 + [j/2]) / Gamma(1/2 + [j/2]) j!.
inline Real mehta_normand_logD0(int n, const Real& alpha_in, const Real& bigN_in, const NumericContext& ctx)
{
    if (n < 1)
        throw std::invalid_argument("mehta_normand_logD0: n must be >= 1");
    const Precision p = ctx.precision();
    const Real alpha = alpha_in.with_precision(p);
    const Real bigN = bigN_in.with_precision(p);
    if (!(alpha > -1) || !(bigN > 0))
        throw DomainError("mehta_normand_logD0: need alpha > -1 and N > 0");
    const Real nn(n, p);
    Real out = nn / 2 * log(2 * ctx.pi()) - nn * nn / 2 * log(2 * bigN) - alpha * nn / 2 * log(bigN) -
               gamma_log(nn + 1, ctx);
    const Real a_half = (alpha + 1) / 2;
    const Real half = ctx.ratio(1, 2);
    for (int j = 1; j <= n; ++j) {
        const long fl = j / 2;
        out += gamma_log(a_half + fl, ctx) - gamma_log(half + fl, ctx) + gamma_log(Real(j + 1, p), ctx);
    }
    return out;
}

}  // namespace dfreud

#endif  // DFREUD_HANKEL_HPP
