#include <gtest/gtest.h>

#include "gaussens/errors.hpp"
#include "gaussens/verify.hpp"

using namespace gaussens;

TEST(Verify, AnalyticSuitePassesAtDefaultTolerances) {
    VerifyOptions o;
    o.suite = "analytic";
    const VerifyReport r = run_verify(o);
    ASSERT_FALSE(r.checks.empty());
    for (const auto& c : r.checks) {
        EXPECT_EQ(c.suite, "analytic");
        EXPECT_TRUE(c.pass) << c.tag << " residual " << c.residual;
        EXPECT_EQ(c.tolerance, default_verify_tolerances().at(c.tag));
    }
    EXPECT_TRUE(r.all_pass());
    EXPECT_EQ(r.to_json().at("checks").size(), r.checks.size());
}

TEST(Verify, EveryTagHasADefaultTolerance) {
    VerifyOptions o;
    o.suite = "replica";
    for (const auto& c : run_verify(o).checks) EXPECT_TRUE(default_verify_tolerances().count(c.tag)) << c.tag;
    EXPECT_EQ(verify_suites().front(), "all");
    EXPECT_EQ(verify_suites().size(), 5u);
}

TEST(Verify, CorruptedToleranceFails) {
    VerifyOptions o;
    o.suite = "replica";
    o.overrides["replica.master_determinant"] = 1e-30;
    const VerifyReport r = run_verify(o);
    EXPECT_FALSE(r.all_pass());
}

TEST(Verify, PerTagOverrideOnlyTouchesThatTag) {
    VerifyOptions o;
    o.suite = "analytic";
    o.overrides["analytic.purity_det"] = 1e-300;
    for (const auto& c : run_verify(o).checks) {
        const double expect = c.tag == "analytic.purity_det" ? 1e-300 : default_verify_tolerances().at(c.tag);
        EXPECT_EQ(c.tolerance, expect) << c.tag;
        EXPECT_EQ(c.pass, c.residual <= expect) << c.tag;
    }
    o.overrides["analytic.purity_det"] = -1.0;
    EXPECT_THROW(run_verify(o), ConfigError);
}

TEST(Verify, UnknownSuiteOrTagIsAConfigError) {
    VerifyOptions o;
    o.suite = "nonsense";
    EXPECT_THROW(run_verify(o), ConfigError);
    VerifyOptions t;
    t.suite = "analytic";
    t.overrides["no_such_tag"] = 1.0;
    EXPECT_THROW(run_verify(t), ConfigError);
}
