#include <gtest/gtest.h>

#include <cmath>

#include "gaussens/analytic.hpp"
#include "gaussens/errors.hpp"
#include "gaussens/fock.hpp"
#include "gaussens/symplectic.hpp"

using namespace gaussens;

namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST(ThermalState, VacuumProjector) {
    const FockOperator rho = thermal_state(1.0);
    EXPECT_EQ(rho.cutoff, 0);
    EXPECT_EQ(rho.matrix(0, 0), Complex(1.0, 0.0));
}

TEST(ThermalState, MeanOccupationAndPurity) {
    const FockOperator rho = thermal_state(3.0);
    const CMatrix a = annihilation(rho.cutoff + 1);
    const double nbar = (rho.matrix * a.adjoint() * a).trace().real();
    EXPECT_NEAR(nbar, 1.0, 1e-10);
    EXPECT_NEAR(trace_power(rho, 2), 1.0 / 3.0, 1e-10);
}

TEST(ThermalState, DensityOperatorInvariants) {
    for (double lam : {1.5, 2.0, 5.0}) {
        const FockOperator rho = thermal_state(lam);
        EXPECT_NEAR(rho.matrix.trace().real(), 1.0, 1e-14);
        EXPECT_NEAR(max_abs(CMatrix(rho.matrix - rho.matrix.adjoint())), 0.0, 0.0);
        EXPECT_GE(rho.matrix.real().diagonal().minCoeff(), 0.0);
        EXPECT_LT(rho.tail_bound, kFockTailTolerance);
    }
}

TEST(ThermalState, CutoffSelectionAndErrors) {
    const int need = required_cutoff(2.0);
    EXPECT_LT(std::pow(1.0 / 3.0, need + 1), 1e-12);
    EXPECT_GE(std::pow(1.0 / 3.0, need), 1e-12);
    try {
        thermal_state(2.0, 5);
        FAIL() << "expected InsufficientCutoff";
    } catch (const InsufficientCutoff& e) {
        EXPECT_EQ(e.required_cutoff(), need);
    }
    EXPECT_THROW(required_cutoff(1e9), InsufficientCutoff);
    EXPECT_THROW(thermal_state(0.5), DomainError);
}

TEST(TracePower, MatchesClosedForm) {
    for (double lam : {1.0, 1.5, 2.0, 3.0, 5.0}) {
        const FockOperator rho = thermal_state(lam);
        for (int x = 2; x <= 6; ++x) EXPECT_NEAR(trace_power(rho, x), renyi_trace_single(lam, x), 1e-8);
    }
    EXPECT_NEAR(trace_power(thermal_state(2.0, 60), 3), 4.0 / 13.0, 1e-8);
    EXPECT_NEAR(trace_power(thermal_state(5.0), 2), 0.2, 1e-8);
    EXPECT_NEAR(trace_power(thermal_state(1.0), 5), 1.0, 0.0);
}

TEST(FockCovariance, ThermalRoundtripWithinTail) {
    for (double lam : {1.0, 1.5, 3.0, 7.0}) {
        const FockOperator rho = thermal_state(lam);
        const Matrix c = fock_covariance(rho);
        EXPECT_NEAR(max_abs(Matrix(c - lam * Matrix::Identity(2, 2))), 0.0, 1e-8) << lam;
    }
}

TEST(FockCovariance, StateHamiltonianRoundtrip) {
    const Matrix q = state_hamiltonian(CovarianceMatrix(Matrix(3.0 * Matrix::Identity(2, 2))));
    const Matrix c = fock_covariance(gibbs_state(q, 120));
    EXPECT_NEAR(max_abs(Matrix(c - 3.0 * Matrix::Identity(2, 2))), 0.0, 1e-6);
}

TEST(FockCovariance, SqueezedThermalRoundtrip) {
    // A squeezed, rotated thermal state: the branch of the inverse must give back the same C.
    Matrix c(2, 2);
    c << 2.6, 0.7, 0.7, 1.9;
    const Matrix q = state_hamiltonian(CovarianceMatrix(c));
    const Matrix back = fock_covariance(gibbs_state(q, 150));
    EXPECT_NEAR(max_abs(Matrix(back - c)), 0.0, 1e-6);
}

TEST(Displacement, ZeroIsIdentity) {
    const FockOperator d = displacement(vec2(0, 0), 20);
    EXPECT_NEAR(max_abs(CMatrix(d.matrix - CMatrix::Identity(21, 21))), 0.0, 1e-13);
}

TEST(Displacement, VacuumColumnIsCoherentState) {
    // D_r|0> = |α>, α = (q0 + i p0)/√2.
    const double q0 = 0.7, p0 = -0.4;
    const Complex alpha(q0 / std::sqrt(2.0), p0 / std::sqrt(2.0));
    const FockOperator d = displacement(vec2(q0, p0), 40);
    Complex amp = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < 15; ++n) {
        EXPECT_NEAR(std::abs(d.matrix(n, 0) - amp), 0.0, 1e-12) << "n = " << n;
        amp *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
}

TEST(Displacement, UnitaryOnLowLevels) {
    const FockOperator d = displacement(vec2(0.9, 0.3), 60);
    EXPECT_TRUE(d.within_validity);
    const CMatrix u = d.matrix.topLeftCorner(61, 61);
    const CMatrix g = (u.adjoint() * u).topLeftCorner(20, 20);
    EXPECT_NEAR(max_abs(CMatrix(g - CMatrix::Identity(20, 20))), 0.0, 1e-10);
    EXPECT_FALSE(displacement_valid(vec2(20, 0), 60));
}

TEST(Displacement, GroupLawSignConvention) {
    const Vector r = vec2(0.3, -0.2), rp = vec2(0.1, 0.25);
    EXPECT_LE(group_law_residual(r, rp, 40, -1.0), 1e-6);
    EXPECT_LE(group_law_residual(r, rp, 60, -1.0), 1e-12);
    // The opposite phase is measurably wrong for non-commuting displacements.
    EXPECT_GT(group_law_residual(r, rp, 60, +1.0), 1e-2);
}

TEST(Displacement, TwoModeGroupLaw) {
    Vector r(4), rp(4);
    r << 0.2, -0.1, 0.15, 0.3;
    rp << -0.25, 0.05, 0.1, -0.2;
    EXPECT_LE(group_law_residual(r, rp, 25, -1.0, 6), 1e-8);
}

TEST(CharacteristicFunction, HandValues) {
    EXPECT_EQ(characteristic_function(Matrix::Identity(2, 2), vec2(0, 0)), 1.0);
    EXPECT_NEAR(characteristic_function(Matrix::Identity(2, 2), vec2(2, 0)), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(characteristic_function(Matrix::Identity(2, 2), vec2(1.2, 1.6)), std::exp(-1.0), 1e-15);
}

TEST(CharacteristicFunction, MatchesFockTrace) {
    for (double lam : {1.0, 2.0, 3.0}) {
        const FockOperator rho = thermal_state(lam, 60);
        for (const Vector& r : {vec2(0.3, -0.2), vec2(1.0, 0.5), vec2(-0.7, 1.3)}) {
            const Complex f = fock_characteristic(rho, r);
            EXPECT_NEAR(f.real(), characteristic_function(lam * Matrix::Identity(2, 2), r), 1e-6);
            EXPECT_NEAR(f.imag(), 0.0, 1e-10);
        }
    }
}

TEST(CharacteristicFunction, SqueezedStateMatchesFockTrace) {
    Matrix c(2, 2);
    c << 2.6, 0.7, 0.7, 1.9;
    const FockOperator rho = gibbs_state(state_hamiltonian(CovarianceMatrix(c)), 80);
    const Vector r = vec2(0.6, -0.4);
    EXPECT_NEAR(fock_characteristic(rho, r).real(), characteristic_function(c, r), 1e-6);
}
