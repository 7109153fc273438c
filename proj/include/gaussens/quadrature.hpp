#pragma once

#include <functional>
#include <vector>

#include "gaussens/linalg.hpp"
#include "gaussens/parallel.hpp"

namespace gaussens {

struct QuadratureResult {
    double value = 0.0;
    double last_change = 0.0;  // |I_n - I_{n/2}| at acceptance
    int intervals = 0;         // per axis
};

// Trapezoid sum of f over the tensor grid x_k = half_width_k · (-1 + 2 i / n), i = 0..n, for
// 1 ≤ dim ≤ 4. The outermost axis is split into slabs whose partial sums are combined in slab
// order, so the serial and OpenMP paths return identical values.
double tensor_trapezoid(const std::function<double(const double*)>& f, const std::vector<double>& half_width,
                        int intervals, Exec exec);

// Doubles the per-axis interval count from `start` until two successive estimates agree to
// tol/2; throws ConvergenceError if `max_intervals` is reached first.
QuadratureResult adaptive_trapezoid(const std::function<double(const double*)>& f,
                                    const std::vector<double>& half_width, double tol, Exec exec,
                                    int start = 8, int max_intervals = 128);

// ∫ χ² d^{2n}r / (2π)^n for a 1–2 mode covariance matrix; the grid is scaled per axis by the
// marginal width of χ².
QuadratureResult purity_by_quadrature(const Matrix& c_a, double tol = 1e-7, Exec exec = Exec::Parallel);

// (2π)^{-2} ∫ χ(r1) χ(r2) χ(-r1-r2) e^{(i/2) r1ᵀΩr2} d²r1 d²r2 for a single mode (x = 3). With
// include_phase = false the phase factor is dropped (negative control).
QuadratureResult coherent_rep_trace(const Matrix& c_a, int x = 3, bool include_phase = true,
                                    double tol = 1e-7, Exec exec = Exec::Parallel);

}  // namespace gaussens
