#include "gaussens/fock.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gaussens/errors.hpp"

namespace gaussens {

namespace {

const Complex kI(0.0, 1.0);

CMatrix hermitian_exp(const CMatrix& h, Complex factor) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const CVector d = (factor * es.eigenvalues().cast<Complex>()).array().exp();
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix single_mode_displacement(double q0, double p0, int dim, int pad) {
    const int big = dim + pad;
    const CMatrix g = q0 * momentum_op(big) - p0 * position_op(big);
    return hermitian_exp(g, -kI).topLeftCorner(dim, dim);
}

}  // namespace

int required_cutoff(double lambda, double tol) {
    if (!(lambda >= 1.0)) throw DomainError("thermal state requires lambda >= 1");
    const double q = (lambda - 1.0) / (lambda + 1.0);
    if (q == 0.0) return 0;
    int n = 0;
    while (std::pow(q, n + 1) >= tol) {
        if (++n > kFockCutoffCap)
            throw InsufficientCutoff("required Fock cutoff exceeds the cap of " + std::to_string(kFockCutoffCap),
                                     n);
    }
    return n;
}

FockOperator thermal_state(double lambda, int cutoff) {
    if (!(lambda >= 1.0)) throw DomainError("thermal state requires lambda >= 1");
    if (cutoff < 0) throw DomainError("cutoff must be >= 0");
    const double q = (lambda - 1.0) / (lambda + 1.0);
    const double tail = std::pow(q, cutoff + 1);
    if (tail >= kFockTailTolerance) {
        const int need = required_cutoff(lambda);
        throw InsufficientCutoff("cutoff " + std::to_string(cutoff) + " too small for lambda " +
                                     std::to_string(lambda) + "; need at least " + std::to_string(need),
                                 need);
    }
    FockOperator rho;
    rho.cutoff = cutoff;
    rho.tail_bound = tail;
    Vector p(cutoff + 1);
    for (int n = 0; n <= cutoff; ++n) p(n) = (1.0 - q) * std::pow(q, n);
    p /= p.sum();
    rho.matrix = p.cast<Complex>().asDiagonal();
    return rho;
}

FockOperator thermal_state(double lambda) { return thermal_state(lambda, required_cutoff(lambda)); }

double trace_power(const FockOperator& rho, int x) {
    if (x < 2) throw DomainError("trace_power: x must be >= 2");
    CMatrix acc = rho.matrix;
    for (int k = 1; k < x; ++k) acc = acc * rho.matrix;
    return acc.trace().real();
}

CMatrix annihilation(int dim) {
    CMatrix a = CMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

CMatrix position_op(int dim) {
    const CMatrix a = annihilation(dim);
    return (a + a.adjoint()) / std::numbers::sqrt2;
}

CMatrix momentum_op(int dim) {
    const CMatrix a = annihilation(dim);
    return (a - a.adjoint()) / (kI * std::numbers::sqrt2);
}

Matrix fock_covariance(const FockOperator& rho) {
    if (rho.n_modes != 1) throw DimensionError("fock_covariance: single-mode state required");
    const int dim = rho.cutoff + 1;
    // Build on a slightly larger space so the products are exact on the retained block.
    const CMatrix q = position_op(dim + 2);
    const CMatrix p = momentum_op(dim + 2);
    const CMatrix qq = (q * q).topLeftCorner(dim, dim);
    const CMatrix pp = (p * p).topLeftCorner(dim, dim);
    const CMatrix qp = (q * p + p * q).topLeftCorner(dim, dim);
    Matrix c(2, 2);
    c(0, 0) = 2.0 * (rho.matrix * qq).trace().real();
    c(1, 1) = 2.0 * (rho.matrix * pp).trace().real();
    c(0, 1) = c(1, 0) = (rho.matrix * qp).trace().real();
    return c;
}

bool displacement_valid(const Vector& r, int cutoff) {
    const double alpha = r.norm() / std::numbers::sqrt2;
    return alpha * alpha + 8.0 * alpha + 10.0 <= cutoff;
}

FockOperator displacement(const Vector& r, int cutoff, int pad) {
    if (r.size() != 2 && r.size() != 4) throw DimensionError("displacement: r must have 2 or 4 entries");
    FockOperator d;
    d.cutoff = cutoff;
    d.n_modes = static_cast<int>(r.size() / 2);
    d.within_validity = displacement_valid(r, cutoff);
    const int dim = cutoff + 1;
    d.matrix = single_mode_displacement(r(0), r(1), dim, pad);
    if (d.n_modes == 2) d.matrix = kron(d.matrix, single_mode_displacement(r(2), r(3), dim, pad));
    return d;
}

double group_law_residual(const Vector& r, const Vector& rp, int cutoff, double phase_sign, int probe) {
    const FockOperator a = displacement(r, cutoff);
    const FockOperator b = displacement(rp, cutoff);
    const FockOperator ab = displacement(r + rp, cutoff);
    const Matrix om = omega(static_cast<int>(r.size() / 2));
    const Complex phase = std::exp(kI * (0.5 * phase_sign * r.dot(om * rp)));
    const CMatrix diff = a.matrix * b.matrix - phase * ab.matrix;
    const int p = std::min<int>(probe, static_cast<int>(diff.rows()));
    return max_abs(CMatrix(diff.topLeftCorner(p, p)));
}

double characteristic_function(const Matrix& c_a, const Vector& r) {
    const Matrix om = omega(static_cast<int>(c_a.rows() / 2));
    const Vector w = om * r;
    return std::exp(-0.25 * w.dot(c_a * w));
}

Complex fock_characteristic(const FockOperator& rho, const Vector& r) {
    const FockOperator d = displacement(r, rho.cutoff);
    return (rho.matrix * d.matrix).trace();
}

FockOperator gibbs_state(const Matrix& q, int cutoff, int pad) {
    if (q.rows() != 2 || q.cols() != 2) throw DimensionError("gibbs_state: 2x2 exponent required");
    const int big = cutoff + 1 + pad;
    const CMatrix x = position_op(big + 2);
    const CMatrix p = momentum_op(big + 2);
    const CMatrix h = (q(0, 0) * x * x + q(0, 1) * (x * p + p * x) + q(1, 1) * p * p).topLeftCorner(big, big);
    const CMatrix hh = 0.5 * (h + h.adjoint());
    FockOperator rho;
    rho.cutoff = cutoff;
    rho.matrix = hermitian_exp(hh, Complex(-1.0, 0.0)).topLeftCorner(cutoff + 1, cutoff + 1);
    const double z = rho.matrix.trace().real();
    rho.matrix /= z;
    return rho;
}

}  // namespace gaussens
