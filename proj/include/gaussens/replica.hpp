#pragma once

#include <cstdint>
#include <vector>

#include "gaussens/constraints.hpp"
#include "gaussens/parallel.hpp"
#include "gaussens/symplectic.hpp"

namespace gaussens {

// Replica order x, subsystem constraint block Ĉ_A (λ·1 per mode) and N_A.
class ReplicaProblem {
public:
    ReplicaProblem(int x, CovarianceMatrix chat_a);
    static ReplicaProblem isotropic(int x, const std::vector<double>& mu);

    int x() const { return x_; }
    int n_a() const { return chat_.n_modes(); }
    const CovarianceMatrix& constraint_block() const { return chat_; }
    std::vector<double> mu() const;

private:
    int x_;
    CovarianceMatrix chat_;
};

struct ReplicaMatrices {
    Matrix t;  // antiperiodic shift, (x-1)×(x-1)
    Matrix j;  // +1 above, -1 below the diagonal
    Matrix m;  // 1 + e eᵀ
    Vector e;
};

ReplicaMatrices build_replica_matrices(int x);
// Integer powers T^{x-1} computed in exact integer arithmetic.
std::vector<std::vector<long long>> shift_power_integer(int x, int power);
double j_geometric_identity_check(int x);

struct MasterDeterminant {
    double value = 0.0;
    double imag_relative = 0.0;  // |Im| / |Re| of the result before discarding Im
    double log_abs_det = 0.0;
};

// 2^{N_A(x-1)} det[Ĉ_A ⊗ (1 + eeᵀ) - iΩ ⊗ J]^{-1/2}
MasterDeterminant master_determinant(const ReplicaProblem& problem);

// Closed form of the per-mode product 2^x/((μ+1)^x - (μ-1)^x).
double replica_closed_form(const std::vector<double>& mu, int x);

struct ToeplitzCofactor {
    double closed_form = 0.0;
    double direct = 0.0;  // continuant recurrence of the (x-2)×(x-2) tridiagonal matrix
};
ToeplitzCofactor toeplitz_cofactor(double mu, int x);

struct DeltaJ {
    double final_form = 0.0;
    double intermediate_form = 0.0;  // through X from the direct Toeplitz cofactor
    double matrix_form = 0.0;        // det(μ² M - J (1 - eeᵀ/x) J)
};
DeltaJ delta_j(double mu, int x);
// 2^{x-1} (x Δ_j)^{-1/2}; the per-mode trace reassembled from Δ_j.
double trace_from_delta(double delta, int x);

// Max relative error of master_determinant vs the closed form over x in xs.
double final_identity_check(const std::vector<double>& mu, const std::vector<int>& xs,
                            Exec exec = Exec::Serial);

struct SaddleSolution {
    CMatrix a0;  // symmetric, purely imaginary in this realization
    Matrix b0;   // real antisymmetric
    int n = 0;
};

// τ̂₂ is realized as the real matrix Ω (per mode [[0,1],[-1,0]]).
SaddleSolution saddle_point_solution(const CovarianceMatrix& chat, int n);

struct SaddleResiduals {
    double sad1 = 0.0;            // max|Ω - (N/2)[G₊⁻¹ - G₋⁻¹]|
    double sad2 = 0.0;            // max|hat(C) - (N/2) hat[G₊⁻¹ + G₋⁻¹]|
    double a_tilde_abs = 0.0;     // max|Ã₀(ε) - (2/N)Ĉ|
    double a_tilde_rel = 0.0;     // a_tilde_abs / max|(2/N)Ĉ|
    double block_leak = 0.0;      // entries of A₀, B₀ outside the window-diagonal pattern
    double b0_antisymmetry = 0.0;
    double a0_symmetry = 0.0;
};

// Saddle equations evaluated at ε = 0; Ã₀ evaluated at the given ε.
SaddleResiduals saddle_residuals(const SaddleSolution& sol, const CovarianceMatrix& chat,
                                 const ConstraintSpec& spec, double epsilon);

struct PrefactorValue {
    double value = 1.0;
    bool degenerate = false;  // N_A = 0 convention
};
PrefactorValue prefactor_integral(int n, int n_a);

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;
};

// ∫ d^{2N_A} r (1 + rᵀr)^{-N} / ∫ d^{2N_A} r e^{-rᵀr} by importance sampling from a multivariate
// Cauchy proposal. Blocks of fixed size are seeded from (seed, block index) so the serial and
// OpenMP paths agree bit-for-bit.
MonteCarloEstimate prefactor_integral_mc(int n, int n_a, std::int64_t samples, std::uint64_t seed,
                                         Exec exec = Exec::Parallel);

}  // namespace gaussens
