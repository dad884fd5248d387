#include "dfreud/moments.hpp"
#include "test_util.hpp"

using namespace dfreud;

namespace {
const NumericContext ctx(60);
}

TEST(WeightParams, Validation)
{
    EXPECT_THROW(WeightParams::parse("0.5", "-1", "1"), DomainError);
    EXPECT_THROW(WeightParams::parse("0.5", "0", "0"), DomainError);
    EXPECT_THROW(WeightParams::parse("1.01", "0", "1"), DomainError);
    EXPECT_THROW(WeightParams::parse("-0.1", "0", "1"), DomainError);
    EXPECT_NO_THROW(WeightParams::parse("0", "-0.5", "2"));
}

TEST(Mu0, GaussianByQuadrature)
{
    EXPECT_AGREE(mu0_quadrature(WeightParams::parse("0", "0", "1"), ctx), sqrt(ctx.pi()), -50);
    const WeightParams w = WeightParams::parse("0", "2.5", "3");
    const Real a = ctx.parse("2.5");
    const Real expected = exp(gamma_log((a + 1) / 2, ctx)) * pow(ctx.num(3), -(a + 1) / 2);
    EXPECT_REL_AGREE(mu0_quadrature(w, ctx), expected, -50);
    EXPECT_REL_AGREE(mu0_gaussian(a, ctx.num(3), ctx), expected, -55);
}

TEST(Mu0, QuarticByQuadrature)
{
    // int exp(-x^4) over R = Gamma(1/4)/2
    const Real expected = exp(gamma_log(ctx.ratio(1, 4), ctx)) / 2;
    EXPECT_REL_AGREE(mu0_quadrature(WeightParams::parse("1", "0", "1"), ctx), expected, -50);
}

TEST(ParabolicCylinder, MinusOne)
{
    EXPECT_REL_AGREE(parabolic_cylinder_D(ctx.num(-1), ctx.num(0), ctx), sqrt(ctx.pi() / 2), -50);
    // D_{-1}(5) = e^{-25/4} int_0^inf exp(-t^2/2 - 5t) dt, evaluated at doubled digits.
    const NumericContext hi(120);
    const Real oracle =
        exp(hi.parse("-6.25")) * integrate_semi_infinite([&](const Real& t) { return exp(-t * t / 2 - 5 * t); }, hi);
    EXPECT_REL_AGREE(parabolic_cylinder_D(ctx.num(-1), ctx.num(5), ctx), oracle, -50);
}

TEST(ParabolicCylinder, RejectsNonNegativeOrder)
{
    EXPECT_THROW(parabolic_cylinder_D(ctx.num(0), ctx.num(1), ctx), DomainError);
}

TEST(Mu0, ClosedFormMatchesQuadrature)
{
    for (const char* point : {"0.5,1,2", "0.5,0,1", "0.1,2.5,1", "0.9,-0.5,3"}) {
        const std::string t(point);
        const auto c1 = t.find(','), c2 = t.rfind(',');
        const WeightParams w =
            WeightParams::parse(t.substr(0, c1), t.substr(c1 + 1, c2 - c1 - 1), t.substr(c2 + 1));
        EXPECT_REL_AGREE(mu0_closed_form(w, ctx), mu0_quadrature(w, ctx), -40) << point;
    }
    EXPECT_THROW(mu0_closed_form(WeightParams::parse("0", "1", "1"), ctx), DomainError);
}

TEST(MomentTable, ParityAndShift)
{
    const WeightParams w = WeightParams::parse("0.3", "1.5", "2");
    const MomentTable t = moment_table(w, 6, ctx);
    ASSERT_EQ(t.values.size(), 7u);
    EXPECT_TRUE(t.values[3].is_zero());
    EXPECT_TRUE(t.values[1].is_zero());
    EXPECT_REL_AGREE(t.values[2], mu0_quadrature(w.with_alpha(w.alpha + 2), ctx), -45);
    EXPECT_REL_AGREE(t.values[4], mu0_quadrature(w.with_alpha(w.alpha + 4), ctx), -45);
}

TEST(MomentTable, GaussianSecondMoment)
{
    const MomentTable t = moment_table(WeightParams::parse("0", "0", "1"), 4, ctx);
    EXPECT_EQ(t.source, MomentSource::closed_form);
    EXPECT_REL_AGREE(t.values[2], sqrt(ctx.pi()) / 2, -55);
    EXPECT_REL_AGREE(t.values[4], 3 * sqrt(ctx.pi()) / 4, -55);
    const MomentTable q = moment_table(WeightParams::parse("0", "0", "1"), 4, ctx, MomentSource::quadrature);
    EXPECT_REL_AGREE(q.values[2], t.values[2], -50);
}

TEST(MomentTable, SourcesAgreeForPositiveS)
{
    const WeightParams w = WeightParams::parse("0.5", "1", "1");
    const MomentTable a = moment_table(w, 8, ctx, MomentSource::quadrature);
    const MomentTable b = moment_table(w, 8, ctx, MomentSource::closed_form);
    for (int k = 0; k <= 8; k += 2)
        EXPECT_REL_AGREE(a.values[static_cast<std::size_t>(k)], b.values[static_cast<std::size_t>(k)], -40) << k;
}
