// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "dfreud/asymptotics.hpp"
#include "dfreud/detasympt.hpp"
#include "dfreud/hankel.hpp"
#include "dfreud/polynomials.hpp"
#include "dfreud/recurrence.hpp"
#include "dfreud/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace dfreud;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

// Every exact beta_n with s > 0 computed below, for the upper-bound criterion.
struct Recorded {
    WeightParams params;
    int n;
    Real beta;
};
std::vector<Recorded> recorded;

void record(const WeightParams& w, const std::vector<Real>& betas)
{
    if (w.s_is_zero())
        return;
    for (std::size_t n = 1; n < betas.size(); ++n)
        recorded.push_back({w, static_cast<int>(n), betas[n]});
}

std::string sci(double v)
{
    if (v <= -1000)
        return "below working precision";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

Outcome gaussian_closure()
{
    const NumericContext ctx(120);
    double worst = -1000;
    for (const char* a : {"0", "1", "2.5"})
        for (const char* bigN : {"1", "3"}) {
            const WeightParams w = WeightParams::parse("0", a, bigN);
            const BetaSequence hk = beta_from_moments(w, 20, ctx);
            for (int n = 1; n <= 20; ++n) {
                const Real exact = beta_at_s0(n, w.alpha.with_precision(ctx.precision()),
                                              w.bigN.with_precision(ctx.precision()));
                worst = std::max(worst, detail::log10_or_floor(hk.betas[static_cast<std::size_t>(n)] - exact));
            }
        }
    return {worst < -100, "max log10 |beta_n - (n + alpha Delta_n)/(2N)| = " + sci(worst)};
}

Outcome cross_route()
{
    const NumericContext ctx(150);
    double worst = -1000;
    for (const char* s : {"0.25", "0.5", "1"})
        for (const char* a : {"0", "1.5", "3"}) {
            const WeightParams w = WeightParams::parse(s, a, "1");
            const BetaSequence hk = beta_from_moments(w, 30, ctx);
            const BetaSequence fw = dpi_forward(w, beta1_initial(w, ctx), 30, ctx);
            record(w, hk.betas);
            if (fw.halted_at || fw.betas.size() < 31)
                return {false, "forward recursion halted at s=" + std::string(s) + ", alpha=" + a};
            record(w, fw.betas);
            for (std::size_t n = 1; n <= 30; ++n)
                worst = std::max(worst, detail::log10_or_floor(detail::relative_gap(hk.betas[n], fw.betas[n])));
        }
    return {worst < -50, "max log10 relative gap = " + sci(worst)};
}

Outcome lew_quarles()
{
    const WeightParams w = WeightParams::parse("1", "0", "1");
    const Precision p = Precision::from_digits(60);
    const double v = (beta_large_n(10000, w, p) / 100).to_double();
    const double gap = std::abs(v - 1 / (2 * std::sqrt(3.0)));

    const NumericContext ctx(300);
    const BetaSequence fw = dpi_forward(w, beta1_initial(w, ctx), 300, ctx);
    if (fw.halted_at)
        return {false, "forward recursion halted at n = " + std::to_string(*fw.halted_at)};
    record(w, fw.betas);
    double scaled[2];
    int i = 0;
    for (int n : {100, 300})
        scaled[i++] =
            abs(fw.betas[static_cast<std::size_t>(n)] - beta_large_n(n, w, ctx.precision())).to_double() *
            std::pow(n, 3.5);
    const double drift = std::abs(1 - scaled[1] / scaled[0]);
    return {gap < 1e-3 && drift < 0.1 && scaled[1] < 1,
            "|beta/sqrt(n) - 1/(2 sqrt 3)| = " + sci(gap) + "; n^3.5 err at n=100, 300: " + sci(scaled[0]) + ", " +
                sci(scaled[1])};
}

Outcome remainder_orders()
{
    std::ostringstream os;
    bool ok = true;
    const NumericContext ctx(150);
    {
        double e[2];
        int i = 0;
        for (const char* s : {"0.01", "0.001"}) {
            const WeightParams w = WeightParams::parse(s, "1", "1");
            const BetaSequence hk = beta_from_moments(w, 5, ctx);
            record(w, hk.betas);
            e[i++] = abs(hk.betas[4] - beta_small_s(4, w, ctx)).to_double();
        }
        const double r = e[0] / e[1];
        ok = ok && r >= 3e3 && r <= 3e4;
        os << "(a) " << sci(r);
    }
    {
        const WeightParams w = WeightParams::parse("0.5", "0", "1");
        const BetaSequence hk = beta_from_moments(w, 64, ctx);
        record(w, hk.betas);
        const double r = abs(hk.betas[16] - beta_large_n(16, w, ctx.precision())).to_double() /
                         abs(hk.betas[64] - beta_large_n(64, w, ctx.precision())).to_double();
        ok = ok && r >= 40 && r <= 400;
        os << " (b) " << sci(r);
    }
    for (int parity : {0, 1}) {
        double e[2];
        int i = 0;
        for (int bigN : {20, 40}) {
            const WeightParams w = WeightParams::parse("0.5", "1", std::to_string(bigN));
            const int n = bigN + parity;
            const BetaSequence hk = beta_from_moments(w, n, ctx);
            record(w, hk.betas);
            e[i++] = abs(hk.betas[static_cast<std::size_t>(n)] -
                         beta_double_scaling(n, w.bigN, w.s, w.alpha, ctx.precision()))
                         .to_double();
        }
        const double r = e[0] / e[1];
        ok = ok && r >= 4 && r <= 16;
        os << (parity ? " odd " : " (c) even ") << sci(r);
    }
    return {ok, "error ratios " + os.str()};
}

// Run after every other criterion has recorded its betas.
Outcome upper_bound_everywhere()
{
    double worst = 0;
    for (const auto& r : recorded) {
        const Precision p = r.beta.precision();
        if (!(r.beta > 0))
            return {false, "non-positive beta at n = " + std::to_string(r.n)};
        worst = std::max(worst, (r.beta / upper_bound(r.n, r.params, p)).to_double());
    }
    return {!recorded.empty() && worst < 1,
            std::to_string(recorded.size()) + " values, max beta_n / bound = " + sci(worst)};
}

Outcome mrs()
{
    const Precision p = Precision::from_digits(60);
    const WeightParams w = WeightParams::parse("0.5", "1", "1");
    std::ostringstream os;
    bool ok = true;
    for (int n : {100, 200}) {
        const Real a = mrs_number(Real(2L * n, p), w, p);
        const double dev = std::abs((beta_large_n(n, w, p) / (a * a)).to_double() - 0.25);
        ok = ok && dev < 2.0 / n;
        os << " n=" << n << ": " << sci(dev);
    }
    return {ok, "|beta_n/a^2 - 1/4|" + os.str()};
}

Outcome ladder_residuals()
{
    const auto grid = make_grid({"0.25", "0.5", "1"}, {"0", "1.5"}, {"1"});
    const NumericContext ctx(100);
    double worst = -1000;
    for (const auto& gp : grid) {
        const WeightParams w = gp.params();
        const BetaSequence hk = beta_from_moments(w, 17, ctx);
        record(w, hk.betas);
        const auto polys = build_polynomials(hk.betas, 16);
        for (int n = 1; n <= 15; ++n)
            for (const char* zt : {"0.3", "-0.3", "1.1", "-1.1", "2.7"}) {
                const Real z = ctx.parse(zt);
                const auto cr = compatibility_residuals(n, z, w, hk.betas);
                for (const Real& v : {lowering_residual(n, z, w, hk.betas, polys).relative(), cr.s1.relative(),
                                      cr.s2.relative(), cr.s2_prime.relative(),
                                      pn_ode_residual(n, z, w, hk.betas, polys).relative()})
                    worst = std::max(worst, detail::log10_or_floor(v));
            }
    }
    return {worst < -20, "max log10 relative residual = " + sci(worst)};
}

Outcome orthogonality()
{
    const NumericContext ctx(80);
    double worst = -1000;
    for (const char* s : {"0.25", "0.5", "1"})
        for (const char* a : {"0", "1.5"}) {
            const auto g = orthogonality_check(8, WeightParams::parse(s, a, "1"), ctx);
            for (std::size_t j = 0; j < g.size(); ++j)
                for (std::size_t k = 0; k < g.size(); ++k)
                    if (j != k)
                        worst = std::max(worst, detail::log10_or_floor(g[j][k]));
        }
    return {worst < -30, "max log10 normalised off-diagonal = " + sci(worst)};
}

Outcome logdet_derivative()
{
    const NumericContext ctx(100);
    const WeightParams w = WeightParams::parse("0.5", "1", "1");
    const BetaSequence hk = beta_from_moments(w, 9, ctx);
    record(w, hk.betas);
    const Real exact = logdet_derivative_exact_from(8, hk.betas, w);
    const double gap = detail::log10_or_floor(exact - logdet_derivative_fd(8, w, ctx));
    return {gap < -20, "log10 |exact - central difference| = " + sci(gap)};
}

Outcome coefficient_functions()
{
    std::ostringstream os;
    bool ok = true;
    const NumericContext ctx(50);
    const Real alpha = ctx.parse("1.5");
    for (const char* rs : {"0.9", "1"}) {
        const Real r = ctx.parse(rs);
        for (bool odd : {false, true}) {
            const auto got = coefficient_integrals(CoefficientSource::derived, r, alpha, odd, ctx,
                                                   {true, false, false, false});
            const Real want = r * r * (3 - 2 * log(Real(3L, ctx.precision())) - 2 * log(r)) / 8;
            const double gap = detail::log10_or_floor(*got[0] - want);
            ok = ok && gap < -8;
            os << "log10 |int A - closed form|, r=" << rs << (odd ? " odd: " : " even: ") << sci(gap) << "; ";
        }
    }

    // d/ds log D_n at s = 1/2, n = rN, minus the 1/N term, fitted to A N^2 + B N + C.
    const NumericContext c100(100);
    const Real s = c100.parse("0.5");
    const Real r = c100.parse("0.9");
    const Real a100 = c100.parse("1.5");
    const double Ns[3] = {20, 30, 40};
    double m[3][4];
    for (int i = 0; i < 3; ++i) {
        const int bigN = static_cast<int>(Ns[i]);
        const int n = static_cast<int>(std::lround(0.9 * bigN));
        const WeightParams w = WeightParams::parse("0.5", "1.5", std::to_string(bigN));
        const BetaSequence hk = beta_from_moments(w, n + 1, c100);
        record(w, hk.betas);
        const Real d = appendix_b_coefficients(s, r, a100, n % 2 == 1, c100.precision()).D_s;
        m[i][0] = Ns[i] * Ns[i];
        m[i][1] = Ns[i];
        m[i][2] = 1;
        m[i][3] = (logdet_derivative_exact_from(n, hk.betas, w) - d / bigN).to_double();
    }
    for (int k = 0; k < 3; ++k)
        for (int i = k + 1; i < 3; ++i) {
            const double f = m[i][k] / m[k][k];
            for (int j = k; j < 4; ++j)
                m[i][j] -= f * m[k][j];
        }
    double x[3];
    for (int k = 2; k >= 0; --k) {
        x[k] = m[k][3];
        for (int j = k + 1; j < 3; ++j)
            x[k] -= m[k][j] * x[j];
        x[k] /= m[k][k];
    }
    const auto ref = derived_expansion_coefficients(s, r, a100, false, c100.precision());
    const double want[3] = {ref.A_s.to_double(), ref.B_s.to_double(), ref.C_s.to_double()};
    const char* names[3] = {"A", "B", "C"};
    for (int k = 0; k < 3; ++k) {
        const double rel = std::abs(x[k] / want[k] - 1);
        ok = ok && rel < 0.02;
        os << names[k] << " fit " << sci(x[k]) << " vs " << sci(want[k]) << (k < 2 ? ", " : "");
    }
    return {ok, os.str()};
}

Outcome d0_order()
{
    const NumericContext ctx(50);
    std::ostringstream os;
    bool ok = true;
    for (const char* a : {"0", "1"}) {
        const Real alpha = ctx.parse(a);
        for (int parity : {0, 1}) {
            double err[2];
            for (int i = 0; i < 2; ++i) {
                const int n = (i == 0 ? 20 : 40) + parity;
                const auto e = logdet_expansion(LogDetQuantity::D0, n, Real(1L, ctx.precision()), alpha, ctx);
                err[i] = abs(e.value - mehta_normand_logD0(n, alpha, Real(static_cast<long>(n), ctx.precision()), ctx))
                             .to_double();
            }
            const double ratio = err[0] / err[1];
            ok = ok && ratio >= 2 && ratio <= 8;
            os << "alpha=" << a << (parity ? " odd " : " even ") << sci(ratio) << (parity && *a == '1' ? "" : ", ");
        }
    }
    return {ok, "error ratio n~20 / n~40: " + os.str()};
}

Outcome sensitivity()
{
    const NumericContext ctx(500);
    const WeightParams w = WeightParams::parse("0.5", "3", "1");
    std::vector<Real> eps;
    for (const char* e : {"0", "1e-1", "1e-3", "1e-5"})
        eps.push_back(ctx.parse(e));
    const auto runs = sensitivity_sweep(w, eps, 100, ctx);
    record(w, runs[0].trajectory);
    bool ok = !runs[0].first_failure_index && runs[0].trajectory.size() == 101;
    std::ostringstream os;
    os << "eps=0 reaches n=" << runs[0].trajectory.size() - 1 << "; failures";
    int prev = 0;
    for (std::size_t i = 1; i < runs.size(); ++i) {
        const auto& f = runs[i].first_failure_index;
        ok = ok && f.has_value() && *f >= prev;
        prev = f ? *f : prev;
        os << " " << (f ? std::to_string(*f) : std::string("none"));
    }
    return {ok, os.str()};
}

}  // namespace

int main()
{
    struct Item {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    // The bound criterion is evaluated last because it audits values produced by the others.
    const std::vector<Item> items{
        {1, "Gaussian closure at s = 0", gaussian_closure},
        {2, "Hankel vs forward recursion", cross_route},
        {3, "Lew-Quarles limit and n = 300 recursion", lew_quarles},
        {4, "remainder orders of the three expansions", remainder_orders},
        {6, "MRS ratio", mrs},
        {7, "ladder, compatibility and ODE residuals", ladder_residuals},
        {8, "orthogonality", orthogonality},
        {9, "exact log-derivative vs finite difference", logdet_derivative},
        {10, "coefficient functions: integral of A and N-fit", coefficient_functions},
        {11, "D_n(0) expansion order", d0_order},
        {12, "sensitivity of the forward recursion", sensitivity},
        {5, "upper bound on every computed beta_n", upper_bound_everywhere},
    };
    int failed = 0;
    for (const auto& it : items) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = it.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", it.id, it.name,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(items.size()) - failed, items.size());
    return failed == 0 ? 0 : 1;
}
