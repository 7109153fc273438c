#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gaussens/analytic.hpp"
#include "gaussens/constraints.hpp"
#include "gaussens/errors.hpp"
#include "gaussens/replica.hpp"
#include "gaussens/symplectic.hpp"

using namespace gaussens;

TEST(ReplicaMatrices, SmallOrders) {
    const ReplicaMatrices r3 = build_replica_matrices(3);
    Matrix j(2, 2), m(2, 2);
    j << 0, 1, -1, 0;
    m << 2, 1, 1, 2;
    EXPECT_EQ(r3.j, j);
    EXPECT_EQ(r3.m, m);
    const ReplicaMatrices r2 = build_replica_matrices(2);
    EXPECT_EQ(r2.j, Matrix::Zero(1, 1));
    EXPECT_THROW(build_replica_matrices(1), DomainError);
}

TEST(ReplicaMatrices, ShiftEigenvaluesAreOddRootsOfMinusOne) {
    for (int x = 3; x <= 9; ++x) {
        const int n = x - 1;
        Eigen::ComplexEigenSolver<CMatrix> es(build_replica_matrices(x).t.cast<Complex>());
        std::vector<bool> hit(static_cast<std::size_t>(n), false);
        for (const Complex& ev : es.eigenvalues()) {
            bool found = false;
            for (int l = 1; l <= n; ++l) {
                const Complex expect = std::polar(1.0, std::numbers::pi * (2 * l - 1) / n);
                if (std::abs(ev - expect) < 1e-10 && !hit[static_cast<std::size_t>(l - 1)]) {
                    hit[static_cast<std::size_t>(l - 1)] = found = true;
                    break;
                }
            }
            EXPECT_TRUE(found) << "x = " << x << " eigenvalue " << ev;
        }
    }
}

TEST(ReplicaMatrices, ShiftPowerIsMinusIdentityInIntegers) {
    // T^{x-1} = -1 exactly (antiperiodic shift).
    for (int x = 2; x <= 12; ++x) {
        const auto p = shift_power_integer(x, x - 1);
        for (int a = 0; a < x - 1; ++a)
            for (int b = 0; b < x - 1; ++b)
                EXPECT_EQ(p[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], a == b ? -1 : 0);
    }
}

TEST(ReplicaMatrices, DeterminantOfOneMinusShiftIsTwo) {
    for (int x = 3; x <= 12; ++x) {
        const Matrix t = build_replica_matrices(x).t;
        EXPECT_NEAR((Matrix::Identity(x - 1, x - 1) - t).determinant(), 2.0, 1e-12) << "x = " << x;
    }
}

TEST(JGeometricIdentity, HoldsExactlyAtThreeAndTightlyAtEight) {
    EXPECT_EQ(j_geometric_identity_check(3), 0.0);
    EXPECT_LE(j_geometric_identity_check(8), 1e-12);
    EXPECT_THROW(j_geometric_identity_check(2), DomainError);
}

TEST(MasterDeterminant, OrderTwoIsPurity) {
    Matrix c = Matrix::Zero(4, 4);
    c.diagonal() << 2, 2, 3.5, 3.5;
    const ReplicaProblem p(2, CovarianceMatrix(c));
    EXPECT_NEAR(master_determinant(p).value, 1.0 / std::sqrt(c.determinant()), 1e-14);
}

TEST(MasterDeterminant, SingleModeMatchesRenyi) {
    EXPECT_NEAR(master_determinant(ReplicaProblem::isotropic(3, {2.0})).value, 4.0 / 13.0, 1e-13);
    for (double mu : {1.2, 2.0, 6.0})
        for (int x = 2; x <= 8; ++x)
            EXPECT_NEAR(master_determinant(ReplicaProblem::isotropic(x, {mu})).value, renyi_trace_single(mu, x),
                        1e-12 * renyi_trace_single(mu, x));
}

TEST(MasterDeterminant, FactorizesOverModes) {
    const double v = master_determinant(ReplicaProblem::isotropic(4, {2.0, 3.0})).value;
    EXPECT_NEAR(v, replica_closed_form({2.0}, 4) * replica_closed_form({3.0}, 4), 1e-14);
    EXPECT_NEAR(v, renyi_trace_single(2.0, 4) * renyi_trace_single(3.0, 4), 1e-14);
}

TEST(MasterDeterminant, ValueIsRealPositive) {
    const MasterDeterminant m = master_determinant(ReplicaProblem::isotropic(7, {1.5, 2.5, 4.0}));
    EXPECT_GT(m.value, 0.0);
    EXPECT_LE(m.imag_relative, 1e-9);
}

TEST(ReplicaProblem, RejectsNonIsotropicBlocks) {
    Matrix c = Matrix::Identity(2, 2) * 2.0;
    c(0, 0) = 3.0;
    EXPECT_THROW(ReplicaProblem(3, CovarianceMatrix(c)), DomainError);
    EXPECT_THROW(ReplicaProblem::isotropic(1, {2.0}), DomainError);
    EXPECT_THROW(ReplicaProblem::isotropic(3, {0.5}), DomainError);
}

TEST(FinalIdentity, SweepsFromTheModuleExamples) {
    std::vector<int> xs;
    for (int x = 2; x <= 8; ++x) xs.push_back(x);
    EXPECT_LE(final_identity_check({2.0}, xs), 1e-10);
    EXPECT_LE(final_identity_check({1.5, 2.5, 4.0}, {5}), 1e-9);
    EXPECT_LE(final_identity_check({1.0 + 1e-6, 10.0}, xs), 1e-9);
}

TEST(FinalIdentity, SerialAndParallelAreBitIdentical) {
    const std::vector<int> xs = {2, 3, 4, 5, 6, 7, 8};
    const std::vector<double> mu = {1.5, 2.5, 4.0};
    EXPECT_EQ(final_identity_check(mu, xs, Exec::Serial), final_identity_check(mu, xs, Exec::Parallel));
}

TEST(ToeplitzCofactor, HandValuesAndSignPattern) {
    const ToeplitzCofactor t = toeplitz_cofactor(2.0, 3);
    EXPECT_NEAR(t.closed_form, -10.0, 1e-13);
    EXPECT_NEAR(t.direct, -10.0, 1e-13);
    for (int x = 2; x <= 9; ++x) {
        const double sign = (x % 2 == 0) ? 1.0 : -1.0;
        EXPECT_GT(sign * toeplitz_cofactor(1.7, x).closed_form, 0.0) << "x = " << x;
    }
}

TEST(ToeplitzCofactor, AgreesWithContinuantIncludingNearPure) {
    for (double mu : {1.0 + 1e-6, 1.5, 2.0, 5.0, 10.0})
        for (int x = 2; x <= 10; ++x) {
            const ToeplitzCofactor t = toeplitz_cofactor(mu, x);
            EXPECT_NEAR(t.direct / t.closed_form, 1.0, 1e-10) << mu << " " << x;
        }
}

TEST(DeltaJ, AllThreeFormsAgree) {
    for (double mu : {1.0 + 1e-6, 1.5, 2.0, 5.0, 10.0})
        for (int x = 2; x <= 8; ++x) {
            const DeltaJ d = delta_j(mu, x);
            EXPECT_NEAR(d.intermediate_form / d.final_form, 1.0, 1e-10) << mu << " " << x;
            EXPECT_NEAR(d.matrix_form / d.final_form, 1.0, 1e-10) << mu << " " << x;
        }
}

TEST(DeltaJ, OrderTwoAtMuThree) {
    // Every form evaluates to 18 here, which reproduces the purity 1/3.
    const DeltaJ d = delta_j(3.0, 2);
    EXPECT_NEAR(d.final_form, 18.0, 1e-12);
    EXPECT_NEAR(d.matrix_form, 18.0, 1e-12);
    EXPECT_NEAR(trace_from_delta(d.final_form, 2), 1.0 / 3.0, 1e-14);
}

TEST(DeltaJ, PureLimitGivesUnitTrace) {
    for (int x = 2; x <= 8; ++x) EXPECT_NEAR(trace_from_delta(delta_j(1.0, x).final_form, x), 1.0, 1e-13);
}

TEST(DeltaJ, ReassemblesRenyiTrace) {
    for (double mu : {1.3, 2.0, 7.0})
        for (int x = 2; x <= 8; ++x)
            EXPECT_NEAR(trace_from_delta(delta_j(mu, x).final_form, x) / renyi_trace_single(mu, x), 1.0, 1e-12);
}

TEST(Saddle, EquationsHoldForScenarioOneAndTwo) {
    for (const ConstraintSpec& spec : {ConstraintSpec::scenario_one({1.5, 2.0, 3.0, 7.0}),
                                       ConstraintSpec({{2.0, 2.5}, {1.2}, {4.0, 3.0, 1.1}})}) {
        const CovarianceMatrix chat = build_constraint_matrix(spec);
        const int n = spec.n_modes();
        const SaddleSolution sol = saddle_point_solution(chat, n);
        const SaddleResiduals r = saddle_residuals(sol, chat, spec, 1e-8);
        EXPECT_LE(r.sad1, 1e-10);
        EXPECT_LE(r.sad2, 1e-10);
        EXPECT_LE(r.a_tilde_rel, 1e-7);
        EXPECT_EQ(r.block_leak, 0.0);
        EXPECT_EQ(r.b0_antisymmetry, 0.0);
        EXPECT_EQ(r.a0_symmetry, 0.0);
        EXPECT_EQ(max_abs(Matrix(sol.a0.real())), 0.0);
    }
}

TEST(Saddle, ATildeDeviationIsLinearInEpsilon) {
    const ConstraintSpec spec = ConstraintSpec::scenario_one({2.0, 3.0});
    const CovarianceMatrix chat = build_constraint_matrix(spec);
    const SaddleSolution sol = saddle_point_solution(chat, 6);
    const double a = saddle_residuals(sol, chat, spec, 1e-4).a_tilde_abs;
    const double b = saddle_residuals(sol, chat, spec, 1e-5).a_tilde_abs;
    EXPECT_NEAR(a / b, 10.0, 0.01);
}

TEST(Saddle, RejectsPureMarginals) {
    const ConstraintSpec spec = ConstraintSpec::scenario_one({1.0, 2.0});
    EXPECT_THROW(saddle_point_solution(build_constraint_matrix(spec), 4), DomainError);
}

TEST(Prefactor, FactorialRatio) {
    EXPECT_NEAR(prefactor_integral(5, 1).value, 0.25, 1e-15);
    EXPECT_NEAR(prefactor_integral(4, 2).value, 1.0 / 6.0, 1e-15);
    const PrefactorValue d = prefactor_integral(4, 0);
    EXPECT_TRUE(d.degenerate);
    EXPECT_EQ(d.value, 1.0);
    EXPECT_THROW(prefactor_integral(3, 3), DomainError);
}

TEST(Prefactor, MonteCarloWithinThreeSigma) {
    for (auto [n, n_a] : std::vector<std::pair<int, int>>{{4, 1}, {4, 2}, {5, 1}}) {
        const MonteCarloEstimate e = prefactor_integral_mc(n, n_a, 200000, 42);
        EXPECT_LE(std::abs(e.mean - prefactor_integral(n, n_a).value), 3.0 * e.std_error) << n << "," << n_a;
        EXPECT_EQ(e.samples, 200000);
    }
}

TEST(Prefactor, MonteCarloSerialAndParallelAreBitIdentical) {
    const MonteCarloEstimate a = prefactor_integral_mc(6, 2, 100000, 9, Exec::Serial);
    const MonteCarloEstimate b = prefactor_integral_mc(6, 2, 100000, 9, Exec::Parallel);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.std_error, b.std_error);
}
