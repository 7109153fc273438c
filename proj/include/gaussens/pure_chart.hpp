#pragma once

#include <vector>

#include "gaussens/constraints.hpp"
#include "gaussens/linalg.hpp"

namespace gaussens {

// Global chart of the pure-state manifold {C = SSᵀ} by H = log C. H ranges over the linear space
// p = {P symmetric : PΩ = -ΩP} of dimension N(N+1), whose 2×2 blocks have the form [[a,b],[b,-a]].
// Coordinates are taken in a Frobenius-orthonormal basis of p.
class PureStateChart {
public:
    explicit PureStateChart(int n_modes);

    int n_modes() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }

    Matrix to_matrix(const Vector& h) const;
    // ⟨X, E_k⟩ for every basis element; equals the coordinates of the Frobenius projection onto p.
    Vector coordinates(const Matrix& x) const;

private:
    struct Element {
        int i, j;    // mode blocks (i ≤ j)
        bool z;      // Z = diag(1,-1) or X = [[0,1],[1,0]] pattern
        double norm; // 1/√2 on diagonal blocks, 1/2 on off-diagonal pairs
    };
    int n_;
    std::vector<Element> basis_;
};

// exp(H) with the eigen-decomposition kept for Fréchet derivatives.
struct ChartPoint {
    Vector h;
    Matrix c;        // e^H
    Matrix u;        // eigenvectors of H
    Vector a;        // eigenvalues of H (ascending)
};

ChartPoint evaluate_chart(const PureStateChart& chart, const Vector& h);
// Coordinates of log C for a pure covariance matrix.
Vector chart_coordinates(const PureStateChart& chart, const Matrix& c);
// S = e^{H/2}: the symmetric symplectic square root of C.
Matrix chart_symplectic(const ChartPoint& p);

// log of the density of the Sp(2N)-invariant measure on pure states in the chart coordinates:
// Σ_i log s(2h_i) + Σ_{i<j} [log s(h_i - h_j) + log s(h_i + h_j)], s(δ) = sinh(δ/2)/(δ/2), where
// h_i are the N non-negative eigenvalues of H (up to an additive constant).
double log_invariant_density(const Vector& eigenvalues);

// Independent constraint components: upper triangle (with diagonal) of every window-diagonal block.
class ConstraintMap {
public:
    explicit ConstraintMap(const ConstraintSpec& spec);

    int size() const { return static_cast<int>(rows_.size()); }
    Vector values(const Matrix& c) const;  // hat(C) - Ĉ on the independent components
    // Jacobian d q / d h (size() × chart.dim()) at a chart point.
    Matrix jacobian(const PureStateChart& chart, const ChartPoint& p) const;

private:
    std::vector<int> rows_, cols_;
    Vector target_;
};

}  // namespace gaussens
