#include <gtest/gtest.h>

#include <cmath>

#include "gaussens/analytic.hpp"
#include "gaussens/errors.hpp"
#include "gaussens/observables.hpp"
#include "gaussens/symplectic.hpp"

using namespace gaussens;

namespace {

SampleBatch constant_batch(const Matrix& c, int n) {
    SampleBatch b;
    b.n_modes = static_cast<int>(c.rows() / 2);
    for (int k = 0; k < n; ++k) {
        b.samples.push_back(c);
        b.constraint_residuals.push_back(0.0);
        b.symplectic_residuals.push_back(0.0);
        b.purity_residuals.push_back(0.0);
        b.weights.push_back(1.0);
        b.epsilon_index.push_back(0);
        b.chain_index.push_back(0);
    }
    return b;
}

}  // namespace

TEST(BatchMeans, ConstantSeriesHasZeroError) {
    const ScalarStats s = batch_means(std::vector<double>(50, 0.25), std::vector<double>(50, 1.0));
    EXPECT_EQ(s.mean, 0.25);
    EXPECT_EQ(s.std_error, 0.0);
    EXPECT_EQ(s.ess, 50.0);
    EXPECT_THROW(batch_means({}, {}), InsufficientSamples);
    EXPECT_THROW(batch_means({1.0}, {}), DimensionError);
}

TEST(BatchMeans, IidSeriesErrorIsNearSigmaOverRootN) {
    Rng rng(8);
    std::normal_distribution<double> g;
    std::vector<double> v(10000);
    for (double& x : v) x = g(rng);
    const ScalarStats s = batch_means(v, std::vector<double>(v.size(), 1.0));
    EXPECT_NEAR(s.std_error, 0.01, 0.004);
    EXPECT_LE(std::abs(s.mean), 4 * s.std_error);
}

TEST(Richardson, RecoversExactQuadraticIntercept) {
    const std::vector<double> eps = {0.1, 0.05, 0.025};
    std::vector<double> mean;
    for (double e : eps) mean.push_back(0.4 + 3.0 * e * e);
    const RichardsonFit f = richardson_extrapolate(eps, mean, {0.01, 0.01, 0.01});
    EXPECT_NEAR(f.value, 0.4, 1e-12);
    EXPECT_NEAR(f.slope, 3.0, 1e-9);
    EXPECT_EQ(richardson_extrapolate({0.1}, {0.7}, {0.02}).value, 0.7);
    EXPECT_THROW(richardson_extrapolate({0.1, 0.2}, {0.7}, {0.02}), DimensionError);
}

TEST(EstimateObservables, ConstantTwoModeSqueezedBatch) {
    const Matrix c = covariance_from_symplectic(two_mode_squeezer(2, 0, 1, 0.5)).matrix();
    const SampleBatch b = constant_batch(c, 20);
    const ObservableTable t = estimate_observables(b, ModeSubset(2, {0}), {2, 3});
    const double lam = std::cosh(1.0);
    EXPECT_NEAR(t.find("trace_rho_pow", 2).mean, 1.0 / lam, 1e-12);
    EXPECT_NEAR(t.find("trace_rho_pow", 3).mean, renyi_trace_single(lam, 3), 1e-12);
    EXPECT_NEAR(t.find("entropy_nats", 1).mean, entropy_single(lam), 1e-12);
    EXPECT_EQ(t.find("trace_rho_pow", 2).std_error, 0.0);
    EXPECT_THROW(t.find("trace_rho_pow", 7), Error);
    EXPECT_EQ(t.to_csv().substr(0, 34), "observable,x,mean,stderr,ess,n\ntra");
}

TEST(EstimateObservables, RejectsTinyOrMismatchedBatches) {
    const Matrix c = Matrix::Identity(4, 4);
    EXPECT_THROW(estimate_observables(SampleBatch{}, ModeSubset(2, {0}), {2}), InsufficientSamples);
    EXPECT_THROW(estimate_observables(constant_batch(c, 20), ModeSubset(3, {0}), {2}), DimensionError);
}

TEST(EstimateObservables, SubsystemEntropyOfEightModes) {
    // Four independent two-mode squeezers pairing mode k with k+4; A = {0,1,2,3} holds one half of each.
    Matrix s = Matrix::Identity(16, 16);
    const double r[] = {0.2, 0.4, 0.6, 0.8};
    double expect = 0.0;
    for (int k = 0; k < 4; ++k) {
        s = (two_mode_squeezer(8, k, k + 4, r[k]).matrix() * s).eval();
        expect += entropy_single(std::cosh(2 * r[k]));
    }
    const SampleBatch b = constant_batch(s * s.transpose(), 12);
    const ObservableTable t = estimate_observables(b, ModeSubset::range(8, 0, 4), {2});
    EXPECT_NEAR(t.find("entropy_nats", 1).mean, expect, 1e-10);
}

TEST(ModePairCorrelation, NormOfOffDiagonalBlock) {
    const double r = 0.3;
    const Matrix c = covariance_from_symplectic(two_mode_squeezer(2, 0, 1, r)).matrix();
    const SampleBatch b = constant_batch(c, 10);
    const ConstraintSpec spec = ConstraintSpec::scenario_one({std::cosh(2 * r), std::cosh(2 * r)});
    const CorrelationSummary s = mode_pair_correlation(b, spec, 0, 1);
    EXPECT_NEAR(s.mean, std::sqrt(2.0) * std::sinh(2 * r), 1e-12);
    EXPECT_NEAR(s.sd, 0.0, 1e-14);
    EXPECT_EQ(s.min, s.max);
    EXPECT_THROW(mode_pair_correlation(b, spec, 1, 1), DomainError);
    EXPECT_THROW(mode_pair_correlation(b, spec, 0, 2), DomainError);
    const ConstraintSpec same({{2.0, 2.0}});
    EXPECT_THROW(mode_pair_correlation(b, same, 0, 1), DomainError);
}
