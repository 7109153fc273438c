#include "gaussens/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gaussens/errors.hpp"

namespace gaussens {

namespace {

void require_even_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0)
        throw DimensionError(std::string(what) + ": expected a non-empty 2N x 2N matrix, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

}  // namespace

SymplecticForm::SymplecticForm(int n_modes) : n_modes_(n_modes) {
    if (n_modes < 1) throw DomainError("build_omega: n_modes must be >= 1");
    m_ = Matrix::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        m_(2 * k, 2 * k + 1) = 1.0;
        m_(2 * k + 1, 2 * k) = -1.0;
    }
}

SymplecticForm build_omega(int n_modes) { return SymplecticForm(n_modes); }
Matrix omega(int n_modes) { return SymplecticForm(n_modes).matrix(); }

double symplectic_residual(const Matrix& s) {
    require_even_square(s, "is_symplectic");
    const Matrix om = omega(static_cast<int>(s.rows() / 2));
    return max_abs(s * om * s.transpose() - om);
}

bool is_symplectic(const Matrix& s, double tol) { return symplectic_residual(s) <= tol; }

SymplecticMatrix SymplecticMatrix::checked(Matrix s, double tol) {
    const double res = symplectic_residual(s);
    if (res > tol)
        throw DomainError("matrix is not symplectic: residual " + std::to_string(res));
    return SymplecticMatrix(std::move(s));
}

SymplecticMatrix SymplecticMatrix::unchecked(Matrix s) {
    require_even_square(s, "SymplecticMatrix");
    return SymplecticMatrix(std::move(s));
}

CovarianceMatrix::CovarianceMatrix(Matrix c) {
    require_even_square(c, "CovarianceMatrix");
    const double scale = std::max(1.0, max_abs(c));
    if (max_abs(c - c.transpose()) > 1e-9 * scale)
        throw DomainError("CovarianceMatrix: input is not symmetric");
    m_ = 0.5 * (c + c.transpose());
}

double purity_residual(const Matrix& c) {
    const Matrix om = omega(static_cast<int>(c.rows() / 2));
    const Matrix co = c * om;
    return max_abs(co * co + Matrix::Identity(c.rows(), c.cols()));
}

double CovarianceMatrix::purity_residual() const { return gaussens::purity_residual(m_); }

ModeSubset::ModeSubset(int parent_modes, std::vector<int> selected)
    : parent_(parent_modes), sel_(std::move(selected)) {
    if (sel_.empty()) throw DomainError("ModeSubset: empty subset");
    for (std::size_t k = 0; k < sel_.size(); ++k) {
        if (sel_[k] < 0 || sel_[k] >= parent_)
            throw DomainError("ModeSubset: index " + std::to_string(sel_[k]) + " out of range");
        if (k > 0 && sel_[k] <= sel_[k - 1])
            throw DomainError("ModeSubset: indices must be strictly increasing");
    }
}

ModeSubset ModeSubset::range(int parent_modes, int first, int count) {
    std::vector<int> v(static_cast<std::size_t>(std::max(count, 0)));
    for (int k = 0; k < count; ++k) v[static_cast<std::size_t>(k)] = first + k;
    return ModeSubset(parent_modes, std::move(v));
}

CovarianceMatrix covariance_from_symplectic(const SymplecticMatrix& s, bool validate, double tol) {
    if (validate && !is_symplectic(s.matrix(), tol))
        throw DomainError("covariance_from_symplectic: input is not symplectic");
    Matrix c = s.matrix() * s.matrix().transpose();
    return CovarianceMatrix(0.5 * (c + c.transpose()));
}

Matrix restrict(const Matrix& c, const ModeSubset& a) {
    if (c.rows() != 2 * a.parent_modes())
        throw DimensionError("restrict: subset parent size does not match matrix");
    const int n = a.size();
    Matrix out(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.block(2 * i, 2 * j, 2, 2) = c.block(2 * a.selected()[i], 2 * a.selected()[j], 2, 2);
    return out;
}

CovarianceMatrix restrict(const CovarianceMatrix& c, const ModeSubset& a) {
    return CovarianceMatrix(restrict(c.matrix(), a));
}

SymplecticSpectrum symplectic_spectrum(const Matrix& c) {
    require_even_square(c, "symplectic_spectrum");
    Eigen::LLT<Matrix> llt(c);
    if (llt.info() != Eigen::Success)
        throw SpectralError("symplectic_spectrum: matrix is not positive definite");
    const int n = static_cast<int>(c.rows() / 2);
    SymplecticSpectrum out;
    if (n == 1) {
        out.values = {std::sqrt(c.determinant())};
        return out;
    }
    Eigen::EigenSolver<Matrix> es(omega(n) * c, false);
    std::vector<double> moduli(static_cast<std::size_t>(2 * n));
    for (int k = 0; k < 2 * n; ++k) moduli[static_cast<std::size_t>(k)] = std::abs(es.eigenvalues()(k));
    std::sort(moduli.begin(), moduli.end(), std::greater<>());
    out.values.resize(static_cast<std::size_t>(n));
    // Each ν appears as the pair ±iν; average the two copies.
    for (int k = 0; k < n; ++k)
        out.values[static_cast<std::size_t>(k)] =
            0.5 * (moduli[static_cast<std::size_t>(2 * k)] + moduli[static_cast<std::size_t>(2 * k + 1)]);
    return out;
}

SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& c) { return symplectic_spectrum(c.matrix()); }

Matrix state_hamiltonian(const CovarianceMatrix& single_mode) {
    if (single_mode.n_modes() != 1) throw DimensionError("state_hamiltonian: single-mode input required");
    const Matrix& c = single_mode.matrix();
    const double nu = symplectic_spectrum(c).values[0];
    if (!(nu > 1.0 + 1e-8))
        throw DomainError("state_hamiltonian: marginal is pure (nu = " + std::to_string(nu) +
                          "); q diverges");
    // K = -C Ω^{-1} = C Ω has eigenvalues ±iν. f(z) = -atan(1/z) picks the branch giving
    // q = Ω^{-1} f(K) = ν arccoth(ν) C^{-1}, which is positive definite.
    const Matrix om = omega(1);
    Eigen::ComplexEigenSolver<CMatrix> es(CMatrix(c * om));
    const CMatrix& v = es.eigenvectors();
    CVector fz = es.eigenvalues().unaryExpr([](Complex z) { return -std::atan(1.0 / z); });
    const CMatrix fk = v * fz.asDiagonal() * v.inverse();
    const Matrix q = (-om * fk.real());
    return 0.5 * (q + q.transpose());
}

Matrix passive_from_unitary(const CMatrix& u) {
    const Eigen::Index n = u.rows();
    Matrix o(2 * n, 2 * n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) {
            const double re = u(a, b).real();
            const double im = u(a, b).imag();
            o(2 * a, 2 * b) = re;
            o(2 * a, 2 * b + 1) = -im;
            o(2 * a + 1, 2 * b) = im;
            o(2 * a + 1, 2 * b + 1) = re;
        }
    return o;
}

CMatrix haar_unitary(int n, Rng& rng) {
    std::normal_distribution<double> g(0.0, std::numbers::sqrt2 / 2.0);
    CMatrix z(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double re = g(rng);
            const double im = g(rng);
            z(i, j) = Complex(re, im);
        }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix& r = qr.matrixQR();
    for (int k = 0; k < n; ++k) {
        const Complex d = r(k, k);
        const double m = std::abs(d);
        if (m > 0.0) q.col(k) *= d / m;
    }
    return q;
}

Matrix random_passive(int n_modes, Rng& rng) { return passive_from_unitary(haar_unitary(n_modes, rng)); }

SymplecticMatrix random_symplectic(int n_modes, double squeeze_bound, Rng& rng) {
    if (n_modes < 1) throw DomainError("random_symplectic: n_modes must be >= 1");
    if (!(squeeze_bound >= 0.0)) throw DomainError("random_symplectic: squeeze_bound must be >= 0");
    const Matrix o1 = random_passive(n_modes, rng);
    const Matrix o2 = random_passive(n_modes, rng);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vector d(2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        const double r = squeeze_bound * u(rng);
        d(2 * k) = std::exp(r);
        d(2 * k + 1) = std::exp(-r);
    }
    return SymplecticMatrix::unchecked(o1 * d.asDiagonal() * o2);
}

SymplecticMatrix random_symplectic(int n_modes, double squeeze_bound, std::uint64_t seed) {
    Rng rng(seed);
    return random_symplectic(n_modes, squeeze_bound, rng);
}

SymplecticMatrix single_mode_squeezer(int n_modes, int mode, double r) {
    Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
    s(2 * mode, 2 * mode) = std::exp(r);
    s(2 * mode + 1, 2 * mode + 1) = std::exp(-r);
    return SymplecticMatrix::unchecked(std::move(s));
}

SymplecticMatrix two_mode_squeezer(int n_modes, int i, int j, double r) {
    if (i == j || i < 0 || j < 0 || i >= n_modes || j >= n_modes)
        throw DomainError("two_mode_squeezer: invalid mode pair");
    Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
    const double c = std::cosh(r);
    const double sh = std::sinh(r);
    s(2 * i, 2 * i) = c;
    s(2 * i + 1, 2 * i + 1) = c;
    s(2 * j, 2 * j) = c;
    s(2 * j + 1, 2 * j + 1) = c;
    s(2 * i, 2 * j) = sh;
    s(2 * i + 1, 2 * j + 1) = -sh;
    s(2 * j, 2 * i) = sh;
    s(2 * j + 1, 2 * i + 1) = -sh;
    return SymplecticMatrix::unchecked(std::move(s));
}

}  // namespace gaussens
