#pragma once

#include "gaussens/linalg.hpp"
#include "gaussens/parallel.hpp"
#include "gaussens/symplectic.hpp"

namespace gaussens {

inline constexpr double kFockTailTolerance = 1e-12;
inline constexpr int kFockCutoffCap = 600;

// Truncated Fock-space operator on m ≤ 2 modes; dimension (cutoff+1)^m.
struct FockOperator {
    int cutoff = 0;
    int n_modes = 1;
    CMatrix matrix;
    double tail_bound = 0.0;      // neglected geometric tail (density operators)
    bool within_validity = true;  // displacement: |r| inside the documented radius
};

// Smallest cutoff with q^{cutoff+1} < tol, q = (λ-1)/(λ+1). Throws InsufficientCutoff above the cap.
int required_cutoff(double lambda, double tol = kFockTailTolerance);

FockOperator thermal_state(double lambda, int cutoff);
FockOperator thermal_state(double lambda);

double trace_power(const FockOperator& rho, int x);

CMatrix annihilation(int dim);
CMatrix position_op(int dim);
CMatrix momentum_op(int dim);

// Symmetrized single-mode covariance [[2<q²>, <qp+pq>], [.., 2<p²>]].
Matrix fock_covariance(const FockOperator& rho);

// Validity radius: |α|² + 8|α| + 10 ≤ cutoff with α = |r|/√2.
bool displacement_valid(const Vector& r, int cutoff);

// D_r = exp(-i rᵀΩξ̂) for one (r ∈ R²) or two (r ∈ R⁴) modes. The generator is exponentiated in
// a space enlarged by `pad` levels and then truncated.
FockOperator displacement(const Vector& r, int cutoff, int pad = 40);

// max |D_r D_r' - e^{s (i/2) rᵀΩr'} D_{r+r'}| on the lowest `probe` levels, with s = phase_sign.
double group_law_residual(const Vector& r, const Vector& rp, int cutoff, double phase_sign, int probe = 10);

// Gaussian characteristic function exp(-¼ rᵀΩᵀCΩr).
double characteristic_function(const Matrix& c_a, const Vector& r);
// Tr[ρ D_r] for a single-mode truncated state.
Complex fock_characteristic(const FockOperator& rho, const Vector& r);

// Single-mode Gibbs state exp(-ξᵀqξ)/Z in truncated Fock space.
FockOperator gibbs_state(const Matrix& q, int cutoff, int pad = 60);

}  // namespace gaussens
