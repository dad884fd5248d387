#include "dfreud/hankel.hpp"
#include "dfreud/recurrence.hpp"
#include "test_util.hpp"

using namespace dfreud;

namespace {
const NumericContext ctx(60);
}

TEST(BetaAtZero, ClosedForm)
{
    const Real one = ctx.num(1);
    EXPECT_AGREE(beta_at_s0(4, ctx.num(0), one), ctx.num(2), -55);
    EXPECT_AGREE(beta_at_s0(3, ctx.num(2), one), ctx.parse("2.5"), -55);
    EXPECT_TRUE(beta_at_s0(0, ctx.num(3), one).is_zero());
}

TEST(Parity, Constants)
{
    const Real a = ctx.parse("1.5");
    const ParityData e = parity_data(4, a);
    EXPECT_EQ(e.delta_n, 0);
    EXPECT_AGREE(e.p_n, 4 + 2 * a, -55);
    EXPECT_AGREE(e.q_n, ctx.num(16), -55);
    const ParityData o = parity_data(5, a);
    EXPECT_EQ(o.delta_n, 1);
    EXPECT_AGREE(o.p_n, 5 - a, -55);
    EXPECT_AGREE(o.q_n, (5 + a) * (5 + a), -55);
}

TEST(Beta1, Values)
{
    const Real a = ctx.parse("0.7"), bigN = ctx.num(3);
    EXPECT_REL_AGREE(beta1_initial(WeightParams::parse("0", "0.7", "3"), ctx), (a + 1) / (2 * bigN), -50);
    const Real quartic = exp(gamma_log(ctx.ratio(3, 4), ctx) - gamma_log(ctx.ratio(1, 4), ctx));
    EXPECT_REL_AGREE(beta1_initial(WeightParams::parse("1", "0", "1"), ctx), quartic, -45);
    const WeightParams w = WeightParams::parse("0.3", "2", "1");
    EXPECT_REL_AGREE(beta1_initial(w, ctx), beta_from_moments(w, 1, ctx).betas[1], -30);
}

TEST(Dpi, OneHandStep)
{
    const WeightParams w = WeightParams::parse("1", "0", "1");
    const Real b1 = beta1_initial(w, ctx);
    const BetaSequence seq = dpi_forward(w, b1, 2, ctx);
    // 4 beta_1 (beta_2 + beta_1) = 1 for exp(-x^4)
    EXPECT_REL_AGREE(seq.betas[2], 1 / (4 * b1) - b1, -50);
    EXPECT_REL_AGREE(seq.betas[2], beta_from_moments(w, 2, ctx).betas[2], -40);
    EXPECT_NEAR(seq.betas[2].to_double(), 0.401680, 1e-6);
}

TEST(Dpi, RejectsZeroS)
{
    const WeightParams w = WeightParams::parse("0", "0", "1");
    EXPECT_THROW(dpi_forward(w, ctx.parse("0.5"), 5, ctx), DomainError);
}

TEST(Dpi, MatchesHankelRoute)
{
    const NumericContext c(150);
    for (const char* s : {"0.25", "1"}) {
        const WeightParams w = WeightParams::parse(s, "1.5", "1");
        const BetaSequence hk = beta_from_moments(w, 30, c);
        const BetaSequence fw = dpi_forward(w, beta1_initial(w, c), 30, c);
        ASSERT_FALSE(fw.halted_at.has_value());
        for (std::size_t n = 1; n <= 30; ++n)
            EXPECT_REL_AGREE(hk.betas[n], fw.betas[n], -50) << s << " n=" << n;
    }
}

TEST(Dpi, ResidualOnHankelData)
{
    const NumericContext c(120);
    const WeightParams w = WeightParams::parse("0.5", "1", "1");
    const BetaSequence hk = beta_from_moments(w, 26, c);
    for (const auto& r : dpi_residual(hk, w))
        EXPECT_LT(test::log_abs(r), -40);
}

TEST(Dpi, ResidualSeesPerturbation)
{
    const WeightParams w = WeightParams::parse("0.5", "1", "1");
    BetaSequence hk = beta_from_moments(w, 8, ctx);
    hk.betas[4] += ctx.parse("1e-5");
    const auto r = dpi_residual(hk, w);
    // beta_4 enters r_3, r_4 and r_5 (index 0 is n = 1).
    EXPECT_LT(test::log_abs(r[0]), -40);
    for (int k : {2, 3, 4}) {
        const double lr = test::log_abs(r[static_cast<std::size_t>(k)]);
        EXPECT_GT(lr, -6.5) << k;
        EXPECT_LT(lr, -3.5) << k;
    }
}

TEST(Dpi, ResidualAtZeroS)
{
    const WeightParams w = WeightParams::parse("0", "2", "1");
    const BetaSequence hk = beta_from_moments(w, 10, ctx);
    for (const auto& r : dpi_residual(hk, w))
        EXPECT_LT(test::log_abs(r), -50);
}

TEST(BetaPrime, MatchesFiniteDifference)
{
    const NumericContext c(80);
    const WeightParams w = WeightParams::parse("0.5", "1", "1");
    const BetaSequence hk = beta_from_moments(w, 6, c);
    const Real analytic = beta_prime(5, {hk.betas[4], hk.betas[5], hk.betas[6]}, w);
    auto f = [&](const Real& s) {
        const WeightParams ws(s.with_precision(Precision{WeightParams::storage_bits}), w.alpha, w.bigN);
        return beta_from_moments(ws, 5, c).betas[5];
    };
    EXPECT_REL_AGREE(analytic, central_difference(f, c.parse("0.5"), 1, c), -25);
}

TEST(BetaPrime, FirstIndex)
{
    const WeightParams w = WeightParams::parse("0.4", "0", "2");
    const BetaSequence hk = beta_from_moments(w, 3, ctx);
    const Real& b1 = hk.betas[1];
    const Real s = ctx.parse("0.4");
    EXPECT_REL_AGREE(beta_prime(1, {ctx.num(0), b1, hk.betas[2]}, w),
                     b1 / (2 * s) * (2 * (s + 1) * hk.betas[2] - 1), -55);
}

TEST(Ode, ResidualSmallAndParitySensitive)
{
    const NumericContext c(100);
    const WeightParams w = WeightParams::parse("0.5", "1", "1");
    const BetaSequence hk = beta_from_moments(w, 9, c);
    for (int n : {6, 7}) {
        EXPECT_LT(test::log_abs(ode25_residual_from(n, hk.betas, w)), -20) << n;
        EXPECT_GT(test::log_abs(ode25_residual_from(n, hk.betas, w, true)), -5) << n;
    }
}

TEST(UpperBound, ValuesAndMonotone)
{
    const WeightParams w = WeightParams::parse("1", "0", "1");
    EXPECT_AGREE(upper_bound(4, w, ctx.precision()), ctx.num(1), -55);
    const WeightParams g = WeightParams::parse("0.25", "1.5", "1");
    Real prev = upper_bound(1, g, ctx.precision());
    const BetaSequence hk = beta_from_moments(g, 30, ctx);
    for (int n = 2; n <= 30; ++n) {
        const Real cur = upper_bound(n, g, ctx.precision());
        if (n % 2 == 0)
            EXPECT_TRUE(cur > upper_bound(n - 2, g, ctx.precision()));
        EXPECT_TRUE(hk.betas[static_cast<std::size_t>(n)] < cur) << n;
        prev = cur;
    }
}

TEST(Sensitivity, PerturbationsFailEarlier)
{
    const NumericContext c(200);
    const WeightParams w = WeightParams::parse("0.5", "3", "1");
    std::vector<Real> eps{c.num(0), c.parse("1e-1"), c.parse("1e-3"), c.parse("1e-5")};
    const auto runs = sensitivity_sweep(w, eps, 40, c);
    EXPECT_FALSE(runs[0].first_failure_index.has_value());
    EXPECT_EQ(runs[0].trajectory.size(), 41u);
    int prev = 0;
    for (std::size_t i = 1; i < runs.size(); ++i) {
        ASSERT_TRUE(runs[i].first_failure_index.has_value()) << i;
        EXPECT_GE(*runs[i].first_failure_index, prev);
        prev = *runs[i].first_failure_index;
    }
    const auto single = sensitivity_run(w, eps[2], 40, c);
    EXPECT_EQ(single.first_failure_index, runs[2].first_failure_index);
}

TEST(Sensitivity, NegativeStartFailsImmediately)
{
    const WeightParams w = WeightParams::parse("0.5", "0", "1");
    const auto run = sensitivity_run(w, ctx.num(-10), 10, ctx);
    ASSERT_TRUE(run.first_failure_index.has_value());
    EXPECT_EQ(*run.first_failure_index, 1);
}
