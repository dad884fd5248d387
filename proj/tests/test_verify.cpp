#include "dfreud/report.hpp"
#include "dfreud/verify.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace dfreud;

TEST(Report, NanMeasurementFails)
{
    EXPECT_FALSE(Check::make("x", "nan", std::nan(""), 1.0).pass);
    EXPECT_TRUE(Check::make("x", "equal", 1.0, 1.0).pass);
    EXPECT_FALSE(Check::make("x", "above", 1.5, 1.0).pass);
}

TEST(Report, JsonRoundTrip)
{
    VerificationReport r;
    r.suite = "dpi";
    r.digits = 80;
    r.wall_time = 1.25;
    r.params_grid = grid_to_json(make_grid({"0.5"}, {"0", "1"}, {"1"}));
    r.checks.push_back(Check::make("a", "finite", -60.0, -40.0));
    r.checks.push_back(Check::make("b", "not a number", std::nan(""), 1.0));
    r.checks.push_back(Check::make("c", "infinite", -std::numeric_limits<double>::infinity(), 0.0));
    const nlohmann::json j = r;
    const std::string text = j.dump();
    EXPECT_EQ(text.find("NaN"), std::string::npos);
    const VerificationReport back = nlohmann::json::parse(text).get<VerificationReport>();
    EXPECT_EQ(back.suite, "dpi");
    EXPECT_EQ(back.digits, 80);
    ASSERT_EQ(back.checks.size(), 3u);
    EXPECT_TRUE(back.checks[0].pass);
    EXPECT_TRUE(std::isnan(back.checks[1].measured));
    EXPECT_TRUE(std::isinf(back.checks[2].measured));
    EXPECT_EQ(back.params_grid.size(), 2u);
    EXPECT_FALSE(back.all_pass());
}

TEST(Verify, GridIsCartesian)
{
    const auto g = make_grid({"0", "0.5"}, {"0", "1", "2"}, {"1"});
    EXPECT_EQ(g.size(), 6u);
    EXPECT_EQ(g[4].label(), "s=0.5,alpha=1,N=1");
}

TEST(Verify, RejectsEmptyGridAndUnknownSuite)
{
    EXPECT_THROW(run_verification("dpi", {}, 60), std::invalid_argument);
    EXPECT_THROW(run_verification("nope", make_grid({"0.5"}, {"0"}, {"1"}), 60), std::invalid_argument);
}

TEST(Verify, SuitesPassOnSmallGrid)
{
    const auto grid = make_grid({"0", "0.5", "1"}, {"0", "1.5"}, {"1"});
    for (const char* suite : {"dpi", "ode", "logdet"}) {
        const VerificationReport r = run_verification(suite, grid, 60);
        EXPECT_FALSE(r.checks.empty()) << suite;
        for (const auto& c : r.checks)
            EXPECT_TRUE(c.pass) << c.id << " " << c.measured << " > " << c.threshold;
    }
}

TEST(Verify, DpiChecksCoverGaussianClosure)
{
    const VerificationReport r = run_verification("dpi", make_grid({"0"}, {"2.5"}, {"3"}), 60);
    ASSERT_EQ(r.checks.size(), 1u);
    EXPECT_NE(r.checks[0].id.find("gaussian_closure"), std::string::npos);
    EXPECT_TRUE(r.checks[0].pass);
}
