#include "gaussens/linalg.hpp"

#include <cmath>
#include <numbers>

namespace gaussens {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

LogDet log_det(const CMatrix& m) {
    Eigen::PartialPivLU<CMatrix> lu(m);
    const CMatrix& f = lu.matrixLU();
    LogDet out;
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
        out.log_abs += std::log(std::abs(f(i, i)));
        out.phase += std::arg(f(i, i));
    }
    if (lu.permutationP().determinant() < 0) out.phase += std::numbers::pi;
    out.phase = std::remainder(out.phase, 2.0 * std::numbers::pi);
    return out;
}

Matrix sym_function(const Matrix& m, double (*f)(double)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Vector d = es.eigenvalues().unaryExpr(f);
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

Matrix sym_sqrt(const Matrix& m) {
    return sym_function(m, [](double v) { return std::sqrt(std::max(v, 0.0)); });
}

}  // namespace gaussens
