#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gaussens/analytic.hpp"
#include "gaussens/errors.hpp"
#include "gaussens/quadrature.hpp"
#include "gaussens/rng.hpp"
#include "gaussens/symplectic.hpp"

using namespace gaussens;

TEST(TensorTrapezoid, GaussianIntegralsInEachDimension) {
    for (int d = 1; d <= 4; ++d) {
        const auto f = [d](const double* x) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += x[k] * x[k];
            return std::exp(-s);
        };
        const double v = tensor_trapezoid(f, std::vector<double>(static_cast<std::size_t>(d), 8.0), 48, Exec::Serial);
        EXPECT_NEAR(v, std::pow(std::sqrt(std::numbers::pi), d), 1e-10) << "d = " << d;
    }
}

TEST(TensorTrapezoid, SerialAndParallelAreBitIdentical) {
    const auto f = [](const double* x) { return std::exp(-x[0] * x[0] - 0.5 * x[1] * x[1] - x[2] * x[3] * 0.1 - x[3] * x[3]); };
    const std::vector<double> hw = {6, 7, 6, 6};
    EXPECT_EQ(tensor_trapezoid(f, hw, 24, Exec::Serial), tensor_trapezoid(f, hw, 24, Exec::Parallel));
}

TEST(TensorTrapezoid, RejectsUnsupportedDimension) {
    const auto f = [](const double*) { return 1.0; };
    EXPECT_THROW(tensor_trapezoid(f, std::vector<double>(5, 1.0), 4, Exec::Serial), DimensionError);
}

TEST(AdaptiveTrapezoid, ThrowsWhenItCannotConverge) {
    // A kink-free but wildly oscillating integrand never settles at these grid sizes.
    const auto f = [](const double* x) { return std::cos(400.0 * x[0]); };
    EXPECT_THROW(adaptive_trapezoid(f, {1.0}, 1e-12, Exec::Serial, 8, 64), ConvergenceError);
}

TEST(PurityByQuadrature, VacuumAndThermal) {
    EXPECT_NEAR(purity_by_quadrature(Matrix::Identity(2, 2)).value, 1.0, 1e-7);
    EXPECT_NEAR(purity_by_quadrature(Matrix(2.0 * Matrix::Identity(2, 2))).value, 0.5, 1e-7);
}

TEST(PurityByQuadrature, CorrelatedTwoModeMarginal) {
    Rng rng(101);
    const Matrix c = covariance_from_symplectic(random_symplectic(3, 0.7, rng)).matrix();
    const Matrix ca = c.topLeftCorner(4, 4);
    EXPECT_NEAR(purity_by_quadrature(ca).value, 1.0 / std::sqrt(ca.determinant()), 1e-6);
    EXPECT_NEAR(purity_by_quadrature(ca).value, renyi_trace_mixed(ca, 2), 1e-6);
}

TEST(PurityByQuadrature, RandomSingleModeStates) {
    Rng rng(202);
    for (int k = 0; k < 10; ++k) {
        const Matrix c = covariance_from_symplectic(random_symplectic(2, 1.0, rng)).matrix();
        const Matrix ca = c.topLeftCorner(2, 2);
        EXPECT_NEAR(purity_by_quadrature(ca).value, renyi_trace_mixed(ca, 2), 1e-6);
    }
}

TEST(PurityByQuadrature, SerialAndParallelAreBitIdentical) {
    Matrix c(2, 2);
    c << 2.2, 0.4, 0.4, 1.3;
    EXPECT_EQ(purity_by_quadrature(c, 1e-7, Exec::Serial).value, purity_by_quadrature(c, 1e-7, Exec::Parallel).value);
}

TEST(CoherentRepTrace, ThirdMomentAtLambdaTwo) {
    const QuadratureResult r = coherent_rep_trace(Matrix(2.0 * Matrix::Identity(2, 2)));
    EXPECT_NEAR(r.value, 4.0 / 13.0, 1e-5);
}

TEST(CoherentRepTrace, NearPureLimit) {
    const double lam = 1.0 + 1e-4;
    const double v = coherent_rep_trace(Matrix(lam * Matrix::Identity(2, 2))).value;
    EXPECT_NEAR(v, renyi_trace_single(lam, 3), 1e-5);
    EXPECT_NEAR(v, 1.0, 2e-4);
}

TEST(CoherentRepTrace, PhaseFactorAblationDisagrees) {
    const Matrix c = 2.0 * Matrix::Identity(2, 2);
    const double without = coherent_rep_trace(c, 3, false).value;
    EXPECT_GT(std::abs(without - 4.0 / 13.0), 1e-3);
}

TEST(CoherentRepTrace, OnlyOrderThreeSupported) {
    EXPECT_THROW(coherent_rep_trace(Matrix(Matrix::Identity(2, 2)), 4), DomainError);
}
