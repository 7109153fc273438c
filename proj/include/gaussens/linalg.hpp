#pragma once

#include <Eigen/Dense>
#include <complex>

namespace gaussens {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

Matrix kron(const Matrix& a, const Matrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

// log|det| and phase of a complex matrix from a partially pivoted LU factorization.
// The phase is reduced to (-pi, pi].
struct LogDet {
    double log_abs = 0.0;
    double phase = 0.0;
};
LogDet log_det(const CMatrix& m);

// Symmetric eigendecomposition helpers; input must be symmetric.
Matrix sym_function(const Matrix& m, double (*f)(double));
Matrix sym_sqrt(const Matrix& m);

}  // namespace gaussens
