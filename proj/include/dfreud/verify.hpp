#ifndef DFREUD_VERIFY_HPP
#define DFREUD_VERIFY_HPP

// Invariant suites run over a parameter grid and collected into a VerificationReport.

#include "dfreud/asymptotics.hpp"
#include "dfreud/detasympt.hpp"
#include "dfreud/hankel.hpp"
#include "dfreud/polynomials.hpp"
#include "dfreud/recurrence.hpp"
#include "dfreud/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace dfreud {

/// One (s, alpha, N) point kept as decimal text so that it parses exactly.
struct GridPoint {
    std::string s;
    std::string alpha;
    std::string bigN;

    WeightParams params() const { return WeightParams::parse(s, alpha, bigN); }
    std::string label() const { return "s=" + s + ",alpha=" + alpha + ",N=" + bigN; }
};

inline std::vector<GridPoint> make_grid(const std::vector<std::string>& s, const std::vector<std::string>& alpha,
                                        const std::vector<std::string>& bigN)
{
    std::vector<GridPoint> g;
    for (const auto& a : s)
        for (const auto& b : alpha)
            for (const auto& c : bigN)
                g.push_back({a, b, c});
    return g;
}

inline nlohmann::json grid_to_json(const std::vector<GridPoint>& grid)
{
    auto j = nlohmann::json::array();
    for (const auto& p : grid)
        j.push_back({{"s", p.s}, {"alpha", p.alpha}, {"N", p.bigN}});
    return j;
}

namespace detail {

inline double log10_or_floor(const Real& v)
{
    if (v.is_zero())
        return -1000.0;
    return log10(abs(v)).to_double();
}

/// Residuals can be far below the double range; they are reported as log10 values.
inline Check log_check(std::string id, std::string description, const Real& measured, int threshold_exponent)
{
    return Check::make(std::move(id), std::move(description) + " (log10)", log10_or_floor(measured),
                       static_cast<double>(threshold_exponent));
}

inline Real relative_gap(const Real& a, const Real& b)
{
    const Real scale = max(abs(a), abs(b));
    return scale.is_zero() ? abs(a - b) : abs(a - b) / scale;
}

}  // namespace detail

/// Hankel route vs forward recursion, recursion residuals, upper bound and the s = 0 closed form.
inline VerificationReport verify_dpi(const std::vector<GridPoint>& grid, int digits, int n_max = 30)
{
    VerificationReport rep;
    rep.suite = "dpi";
    rep.digits = digits;
    rep.params_grid = grid_to_json(grid);
    const NumericContext ctx(digits);
    for (const auto& gp : grid) {
        const WeightParams w = gp.params();
        const BetaSequence hk = beta_from_moments(w, n_max, ctx);
        if (w.s_is_zero()) {
            Real worst(0L, ctx.precision());
            for (int n = 1; n <= n_max; ++n)
                worst = max(worst, detail::relative_gap(hk.betas[static_cast<std::size_t>(n)],
                                                        beta_at_s0(n, w.alpha.with_precision(ctx.precision()),
                                                                   w.bigN.with_precision(ctx.precision()))));
            rep.checks.push_back(detail::log_check("dpi.gaussian_closure[" + gp.label() + "]",
                                                   "Hankel beta_n vs (n + alpha Delta_n)/(2N)", worst,
                                                   -(digits - 20)));
            continue;
        }
        const BetaSequence fw = dpi_forward(w, hk.betas[1], n_max, ctx);
        Real worst(0L, ctx.precision());
        const std::size_t upto = std::min(hk.betas.size(), fw.betas.size());
        for (std::size_t n = 1; n < upto; ++n)
            worst = max(worst, detail::relative_gap(hk.betas[n], fw.betas[n]));
        rep.checks.push_back(detail::log_check("dpi.cross_route[" + gp.label() + "]",
                                               "max relative gap Hankel vs forward recursion, n <= " +
                                                   std::to_string(n_max),
                                               worst, -(digits / 3)));
        Real res(0L, ctx.precision());
        for (const auto& r : dpi_residual(hk, w))
            res = max(res, abs(r));
        rep.checks.push_back(detail::log_check("dpi.residual[" + gp.label() + "]",
                                               "max |recursion residual| on Hankel data", res, -(digits / 2)));
        double ratio = 0.0;
        for (int n = 1; n <= n_max; ++n)
            ratio = std::max(
                ratio, (hk.betas[static_cast<std::size_t>(n)] / upper_bound(n, w, ctx.precision())).to_double());
        rep.checks.push_back(Check::make("dpi.upper_bound[" + gp.label() + "]", "max beta_n / closed-form bound",
                                         ratio, 1.0));
    }
    return rep;
}

/// Second-order ODE in s evaluated on Hankel data.
inline VerificationReport verify_ode(const std::vector<GridPoint>& grid, int digits)
{
    VerificationReport rep;
    rep.suite = "ode";
    rep.digits = digits;
    rep.params_grid = grid_to_json(grid);
    const NumericContext ctx(digits);
    for (const auto& gp : grid) {
        const WeightParams w = gp.params();
        if (w.s_is_zero())
            continue;
        const BetaSequence hk = beta_from_moments(w, 9, ctx);
        for (int n : {6, 7}) {
            const Real res = ode25_residual_from(n, hk.betas, w);
            const Real scale = max(abs(hk.betas[static_cast<std::size_t>(n)]), Real(1L, ctx.precision()));
            rep.checks.push_back(detail::log_check("ode.residual[n=" + std::to_string(n) + "," + gp.label() + "]",
                                                   "|beta'' - rhs| relative", res / scale, -(digits / 2)));
        }
    }
    return rep;
}

/// Lowering relation, compatibility conditions, the polynomial ODE and orthogonality.
inline VerificationReport verify_poly(const std::vector<GridPoint>& grid, int digits, int n_max = 15)
{
    VerificationReport rep;
    rep.suite = "poly";
    rep.digits = digits;
    rep.params_grid = grid_to_json(grid);
    const NumericContext ctx(digits);
    const std::vector<std::string> zs{"0.3", "-0.3", "1.1", "-1.1", "2.7"};
    for (const auto& gp : grid) {
        const WeightParams w = gp.params();
        if (w.s_is_zero())
            continue;
        const BetaSequence hk = beta_from_moments(w, n_max + 2, ctx);
        const auto polys = build_polynomials(hk.betas, n_max + 1);
        Real low(0L, ctx.precision()), s1(low), s2(low), s2p(low), ode(low);
        for (int n = 1; n <= n_max; ++n)
            for (const auto& zt : zs) {
                const Real z = ctx.parse(zt);
                low = max(low, lowering_residual(n, z, w, hk.betas, polys).relative());
                const auto cr = compatibility_residuals(n, z, w, hk.betas);
                s1 = max(s1, cr.s1.relative());
                s2 = max(s2, cr.s2.relative());
                s2p = max(s2p, cr.s2_prime.relative());
                ode = max(ode, pn_ode_residual(n, z, w, hk.betas, polys).relative());
            }
        const int thr = -std::min(20, digits / 5);
        const std::string tag = "[" + gp.label() + "]";
        rep.checks.push_back(detail::log_check("poly.lowering" + tag, "lowering relation, n <= 15", low, thr));
        rep.checks.push_back(detail::log_check("poly.S1" + tag, "compatibility S1", s1, thr));
        rep.checks.push_back(detail::log_check("poly.S2" + tag, "compatibility S2", s2, thr));
        rep.checks.push_back(detail::log_check("poly.S2prime" + tag, "compatibility S2'", s2p, thr));
        rep.checks.push_back(detail::log_check("poly.ode" + tag, "second-order ODE in z", ode, thr));

        const NumericContext octx(std::max(80, std::min(digits, 100)));
        const auto g = orthogonality_check(8, w, octx);
        Real off(0L, octx.precision());
        for (std::size_t j = 0; j < g.size(); ++j)
            for (std::size_t k = 0; k < g.size(); ++k)
                if (j != k)
                    off = max(off, abs(g[j][k]));
        rep.checks.push_back(detail::log_check("poly.orthogonality" + tag,
                                               "max normalised off-diagonal inner product, j,k <= 8", off, -30));
    }
    return rep;
}

/// Exact log-derivative against finite differences and the sum formula; D_n(0) expansion order.
inline VerificationReport verify_logdet(const std::vector<GridPoint>& grid, int digits)
{
    VerificationReport rep;
    rep.suite = "logdet";
    rep.digits = digits;
    rep.params_grid = grid_to_json(grid);
    const NumericContext ctx(digits);
    for (const auto& gp : grid) {
        const WeightParams w = gp.params();
        if (w.s_is_zero() || w.s == 1)
            continue;  // the central-difference stencil must stay inside (0, 1]
        for (int n : {8, 9}) {
            const BetaSequence hk = beta_from_moments(w, n + 1, ctx);
            const Real exact = logdet_derivative_exact_from(n, hk.betas, w);
            const Real fd = logdet_derivative_fd(n, w, ctx);
            const Real sum = logdet_derivative_sum(n, hk.betas, w);
            const std::string tag = "[n=" + std::to_string(n) + "," + gp.label() + "]";
            rep.checks.push_back(detail::log_check("logdet.exact_vs_fd" + tag, "d/ds log D_n vs central difference",
                                                   detail::relative_gap(exact, fd), -std::min(20, digits / 5)));
            rep.checks.push_back(detail::log_check("logdet.exact_vs_sum" + tag, "d/ds log D_n vs sum formula",
                                                   detail::relative_gap(exact, sum), -(digits / 2)));
        }
    }
    std::vector<std::string> alphas;
    for (const auto& gp : grid)
        if (std::find(alphas.begin(), alphas.end(), gp.alpha) == alphas.end())
            alphas.push_back(gp.alpha);
    const NumericContext c50(50);
    for (const auto& a : alphas) {
        const Real alpha = c50.parse(a);
        for (int parity : {0, 1}) {
            double err[2];
            for (int i = 0; i < 2; ++i) {
                const int n = (i == 0 ? 20 : 40) + parity;
                const auto e = logdet_expansion(LogDetQuantity::D0, n, Real(1L, c50.precision()), alpha, c50);
                err[i] = abs(e.value - mehta_normand_logD0(n, alpha, Real(n, c50.precision()), c50)).to_double();
            }
            rep.checks.push_back(Check::make("logdet.D0_order[alpha=" + a + ",parity=" + std::to_string(parity) + "]",
                                             "|log2(err(n~20)/err(n~40)/4)|, within a factor 2 of n^-2",
                                             std::abs(std::log2(err[0] / err[1] / 4)), 1.0));
        }
    }
    return rep;
}

/// Remainder orders of the three beta expansions, the Lew-Quarles limit and the MRS ratio.
inline VerificationReport verify_asympt(int digits)
{
    VerificationReport rep;
    rep.suite = "asympt";
    rep.digits = digits;
    const int d = std::max(digits, 150);
    {
        const NumericContext ctx(60);
        double e[2];
        int i = 0;
        for (const char* s : {"0.01", "0.001"}) {
            const WeightParams w = WeightParams::parse(s, "1", "1");
            const BetaSequence hk = beta_from_moments(w, 4, ctx);
            e[i++] = abs(hk.betas[4] - beta_small_s(4, w, ctx)).to_double();
        }
        rep.checks.push_back(Check::make("asympt.small_s_order", "|log10(ratio s=1e-2 vs 1e-3) - log10(1e4)|, O(s^4)",
                                         std::abs(std::log10(e[0] / e[1]) - 4), 0.5));
    }
    {
        const NumericContext ctx(d);
        const WeightParams w = WeightParams::parse("0.5", "0", "1");
        const BetaSequence hk = beta_from_moments(w, 64, ctx);
        const double e16 = abs(hk.betas[16] - beta_large_n(16, w, ctx.precision())).to_double();
        const double e64 = abs(hk.betas[64] - beta_large_n(64, w, ctx.precision())).to_double();
        const double ratio = e16 / e64;
        rep.checks.push_back(Check::make("asympt.large_n_order", "distance of n=16/64 error ratio from [40, 400]",
                                         std::max({0.0, 40 - ratio, ratio - 400}), 0.0));
    }
    for (int parity : {0, 1}) {
        double e[2];
        int i = 0;
        for (int bigN : {20, 40}) {
            const NumericContext ctx(d);
            const WeightParams w = WeightParams::parse("0.5", "1", std::to_string(bigN));
            const int n = bigN + parity;
            const BetaSequence hk = beta_from_moments(w, n, ctx);
            e[i++] = abs(hk.betas[static_cast<std::size_t>(n)] -
                         beta_double_scaling(n, w.bigN, w.s, w.alpha, ctx.precision()))
                         .to_double();
        }
        const double ratio = e[0] / e[1];
        rep.checks.push_back(Check::make("asympt.double_scaling_order[parity=" + std::to_string(parity) + "]",
                                         "distance of N=20/40 error ratio from [4, 16]",
                                         std::max({0.0, 4 - ratio, ratio - 16}), 0.0));
    }
    {
        const Precision p = Precision::from_digits(60);
        const WeightParams w = WeightParams::parse("1", "0", "1");
        const Real b = beta_large_n(10000, w, p);
        const double v = (b / 100).to_double();
        rep.checks.push_back(Check::make("asympt.lew_quarles", "|beta_n/sqrt(n) - 1/(2 sqrt 3)| at n = 1e4",
                                         std::abs(v - 1 / (2 * std::sqrt(3.0))), 1e-3));
    }
    {
        // Forward recursion at 300 digits against the expansion: n^{7/2} |error| must settle to a constant.
        const NumericContext ctx(300);
        const WeightParams w = WeightParams::parse("1", "0", "1");
        const BetaSequence fw = dpi_forward(w, beta1_initial(w, ctx), 300, ctx);
        double scaled[2] = {std::nan(""), std::nan("")};
        if (!fw.halted_at) {
            int i = 0;
            for (int n : {100, 300})
                scaled[i++] = abs(fw.betas[static_cast<std::size_t>(n)] - beta_large_n(n, w, ctx.precision()))
                                  .to_double() *
                              std::pow(n, 3.5);
        }
        rep.checks.push_back(Check::make("asympt.lew_quarles_dpi",
                                         "|1 - (n^3.5 err at n=300)/(n^3.5 err at n=100)|, forward recursion",
                                         std::abs(1 - scaled[1] / scaled[0]), 0.1));
    }
    for (int n : {100, 200}) {
        const Precision p = Precision::from_digits(60);
        const WeightParams w = WeightParams::parse("0.5", "1", "1");
        const Real a = mrs_number(Real(2 * n, p), w, p);
        const double v = (beta_large_n(n, w, p) / (a * a)).to_double();
        rep.checks.push_back(Check::make("asympt.mrs[n=" + std::to_string(n) + "]",
                                         "n |beta_n/a^2 - 1/4| (must stay below 2)", n * std::abs(v - 0.25), 2.0));
    }
    return rep;
}

inline const std::vector<std::string>& verify_suites()
{
    static const std::vector<std::string> names{"all", "dpi", "ode", "poly", "logdet", "asympt"};
    return names;
}

inline VerificationReport run_verification(const std::string& suite, const std::vector<GridPoint>& grid, int digits)
{
    if (grid.empty())
        throw std::invalid_argument("verify: empty parameter grid");
    const auto& names = verify_suites();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw std::invalid_argument("verify: unknown suite '" + suite + "'");
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.suite = suite;
    rep.digits = digits;
    rep.params_grid = grid_to_json(grid);
    const bool all = suite == "all";
    if (all || suite == "dpi")
        rep.append(verify_dpi(grid, digits));
    if (all || suite == "ode")
        rep.append(verify_ode(grid, digits));
    if (all || suite == "poly")
        rep.append(verify_poly(grid, digits));
    if (all || suite == "logdet")
        rep.append(verify_logdet(grid, digits));
    if (all || suite == "asympt")
        rep.append(verify_asympt(digits));
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace dfreud

#endif  // DFREUD_VERIFY_HPP
