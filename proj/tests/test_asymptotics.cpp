#include "dfreud/asymptotics.hpp"
#include "dfreud/hankel.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace dfreud;

namespace {
const NumericContext ctx(60);
const Precision P = ctx.precision();
}

TEST(SmallS, ReducesToGaussian)
{
    for (const char* a : {"0", "1.5"}) {
        const WeightParams w = WeightParams::parse("0", a, "2");
        for (int n : {3, 4})
            EXPECT_AGREE(beta_small_s(n, w, ctx), beta_at_s0(n, w.alpha.with_precision(P), w.bigN.with_precision(P)),
                         -55);
    }
}

TEST(SmallS, FirstCoefficientWithoutAlpha)
{
    const WeightParams w = WeightParams::parse("0.1", "0", "3");
    for (int n : {4, 5}) {
        const auto sc = small_s_coefficients(n, w, P);
        EXPECT_AGREE(sc.c[1], (ctx.num(3) - 3 * n) / 3, -55);
    }
}

TEST(SmallS, FourthOrderRemainder)
{
    const NumericContext c(100);
    for (int n : {4, 5}) {
        double e[2];
        int i = 0;
        for (const char* s : {"0.01", "0.001"}) {
            const WeightParams w = WeightParams::parse(s, "1", "1");
            e[i++] = abs(beta_from_moments(w, n, c).betas[static_cast<std::size_t>(n)] - beta_small_s(n, w, c))
                         .to_double();
        }
        EXPECT_GT(e[0] / e[1], 3e3) << n;
        EXPECT_LT(e[0] / e[1], 3e4) << n;
    }
}

TEST(SmallS, OmittedCoefficientPredictsError)
{
    const NumericContext c(100);
    const WeightParams w = WeightParams::parse("0.001", "1", "1");
    const auto sc = small_s_coefficients(4, w, c.precision());
    const Real predicted = sc.prefactor * sc.c4 * pow(c.parse("0.001"), 4.0);
    const Real actual = beta_from_moments(w, 4, c).betas[4] - beta_small_s(4, w, c);
    EXPECT_NEAR((actual / predicted).to_double(), 1.0, 0.05);
}

TEST(LargeN, QuarticFreudValue)
{
    const WeightParams w = WeightParams::parse("1", "0", "1");
    const Real sqrt3 = sqrt(ctx.num(3));
    for (int n : {10, 100}) {
        const Real nn = ctx.num(n);
        const Real expected = sqrt(nn / 3) / 2 + pow(nn, -1.5) / (48 * sqrt3);
        EXPECT_REL_AGREE(beta_large_n(n, w, P), expected, -55);
    }
}

TEST(LargeN, FirstCorrection)
{
    const WeightParams w = WeightParams::parse("0.5", "1", "2");
    const auto lc = large_n_coefficients(7, w, P);
    const Real s = ctx.parse("0.5");
    EXPECT_AGREE(lc.d[1], -sqrt(ctx.num(2)) * (1 - s) / (2 * sqrt(3 * s)), -55);
    EXPECT_TRUE(lc.d[3].is_zero());
}

TEST(LargeN, RemainderOrderSevenHalves)
{
    const NumericContext c(150);
    const WeightParams w = WeightParams::parse("0.5", "0", "1");
    const BetaSequence hk = beta_from_moments(w, 64, c);
    const double ratio = abs(hk.betas[16] - beta_large_n(16, w, c.precision())).to_double() /
                         abs(hk.betas[64] - beta_large_n(64, w, c.precision())).to_double();
    EXPECT_GT(ratio, 128.0 / 3);
    EXPECT_LT(ratio, 128.0 * 3);
}

TEST(LargeN, LewQuarlesLimit)
{
    const WeightParams w = WeightParams::parse("1", "0", "1");
    EXPECT_NEAR((beta_large_n(10000, w, P) / 100).to_double(), 1 / (2 * std::sqrt(3.0)), 1e-3);
}

TEST(DoubleScaling, LeadingRoot)
{
    const auto d = double_scaling_coefficients(10, ctx.num(10), ctx.num(1), ctx.num(0), P);
    EXPECT_AGREE(d.a0, sqrt(ctx.num(3)) / 6, -55);
    EXPECT_TRUE(abs(d.a1) < ctx.parse("1e-50"));
    // leading order of the recursion: 6 s a0^2 + (1 - s) a0 = r/2
    const auto h = double_scaling_coefficients(9, ctx.num(10), ctx.parse("0.3"), ctx.num(0), P);
    const Real s = ctx.parse("0.3"), r = ctx.parse("0.9");
    EXPECT_AGREE(6 * s * h.a0 * h.a0 + (1 - s) * h.a0, r / 2, -55);
}

TEST(DoubleScaling, EvenAlphaZeroHasNoFirstCorrection)
{
    const auto d = double_scaling_coefficients(20, ctx.num(25), ctx.parse("0.4"), ctx.num(0), P);
    EXPECT_TRUE(abs(d.a1) < ctx.parse("1e-50"));
}

TEST(DoubleScaling, ThirdOrderRemainderBothParities)
{
    const NumericContext c(150);
    for (int parity : {0, 1}) {
        double e[2];
        int i = 0;
        for (int bigN : {20, 40}) {
            const WeightParams w = WeightParams::parse("0.5", "1", std::to_string(bigN));
            const int n = bigN + parity;
            e[i++] = abs(beta_from_moments(w, n, c).betas[static_cast<std::size_t>(n)] -
                         beta_double_scaling(n, w.bigN, w.s, w.alpha, c.precision()))
                         .to_double();
        }
        EXPECT_GT(e[0] / e[1], 4.0) << parity;
        EXPECT_LT(e[0] / e[1], 16.0) << parity;
    }
}

TEST(DoubleScaling, DisplayFormSingularWhereRegularisedIsNot)
{
    // f = 1 - 2s - 4rs + s^2 vanishes at s = 2 - sqrt 3 when r = 1/2.
    const Real s = 2 - sqrt(ctx.num(3));
    EXPECT_THROW(double_scaling_display_coefficients(5, ctx.num(10), s, ctx.num(1), P), SingularCoefficient);
    EXPECT_NO_THROW(double_scaling_coefficients(5, ctx.num(10), s, ctx.num(1), P));
}

TEST(Coulomb, Roots)
{
    EXPECT_AGREE(coulomb_b_squared(3, WeightParams::parse("1", "0", "1"), P), ctx.num(2), -55);
    const WeightParams tiny = WeightParams::parse("1e-8", "1.5", "2");
    EXPECT_NEAR(coulomb_b_squared(4, tiny, P).to_double(), (8 + 1.5) / 2, 1e-6);
    const WeightParams w0 = WeightParams::parse("0", "1.5", "2");
    EXPECT_AGREE(coulomb_b_squared(4, w0, P), ctx.parse("4.75"), -55);
}

TEST(Coulomb, LeadingOrderOfBeta)
{
    const WeightParams w = WeightParams::parse("0.5", "0", "200");
    const NumericContext c(60);
    const Real b2 = coulomb_b_squared(200, w, c.precision());
    const Real beta = beta_double_scaling(200, w.bigN, w.s, w.alpha, c.precision());
    EXPECT_NEAR((beta / (b2 / 4)).to_double(), 1.0, 1e-2);
}

TEST(Mrs, SpecialValues)
{
    EXPECT_AGREE(mrs_number(ctx.ratio(3, 2), WeightParams::parse("1", "0", "1"), P), ctx.num(1), -55);
    const Real a = mrs_number(ctx.num(7), WeightParams::parse("0", "0", "2"), P);
    EXPECT_AGREE(a * a, ctx.parse("3.5"), -55);
}

TEST(Mrs, NormalisationIntegral)
{
    // mu = (2/pi) int_0^{pi/2} a sin(t) Q'(a sin t) dt, Q = N s x^4 + N (1 - s) x^2.
    const WeightParams w = WeightParams::parse("0.3", "0", "1.7");
    const Real mu = ctx.parse("5.5");
    const Real a = mrs_number(mu, w, P);
    const Real s = ctx.parse("0.3"), bigN = ctx.parse("1.7");
    auto f = [&](const Real& u, std::vector<Real>& out) {
        const Real x = a * sin(ctx.pi() / 2 * u);
        out[0] = x * (4 * bigN * s * x * x * x + 2 * bigN * (1 - s) * x);
    };
    const Real integral = integrate_unit_interval_many(f, 1, ctx)[0];  // already the mean over (0, pi/2)
    EXPECT_REL_AGREE(integral, mu, -40);
}

TEST(Mrs, RatioToQuarter)
{
    const WeightParams w = WeightParams::parse("0.5", "1", "1");
    for (int n : {100, 200}) {
        const Real a = mrs_number(ctx.num(2 * n), w, P);
        EXPECT_LT(std::abs((beta_large_n(n, w, P) / (a * a)).to_double() - 0.25), 2.0 / n);
    }
}
