#pragma once

#include <cstdint>
#include <vector>

#include "gaussens/linalg.hpp"
#include "gaussens/rng.hpp"

namespace gaussens {

struct Tolerances {
    double symplectic = 1e-10;
    double purity = 1e-8;
};

// Canonical form: N copies of [[0,1],[-1,0]] on the diagonal, interleaved (q1,p1,...,qN,pN).
class SymplecticForm {
public:
    explicit SymplecticForm(int n_modes);
    int n_modes() const { return n_modes_; }
    const Matrix& matrix() const { return m_; }

private:
    int n_modes_;
    Matrix m_;
};

SymplecticForm build_omega(int n_modes);
Matrix omega(int n_modes);

double symplectic_residual(const Matrix& s);
bool is_symplectic(const Matrix& s, double tol = Tolerances{}.symplectic);

class SymplecticMatrix {
public:
    // Throws DomainError if s fails is_symplectic(tol).
    static SymplecticMatrix checked(Matrix s, double tol = Tolerances{}.symplectic);
    static SymplecticMatrix unchecked(Matrix s);

    int n_modes() const { return static_cast<int>(m_.rows() / 2); }
    const Matrix& matrix() const { return m_; }

private:
    explicit SymplecticMatrix(Matrix s) : m_(std::move(s)) {}
    Matrix m_;
};

class CovarianceMatrix {
public:
    // Validates shape and symmetry (relative 1e-9) and symmetrizes.
    explicit CovarianceMatrix(Matrix c);

    int n_modes() const { return static_cast<int>(m_.rows() / 2); }
    const Matrix& matrix() const { return m_; }
    Matrix block(int i, int j) const { return m_.block(2 * i, 2 * j, 2, 2); }

    // max |(CΩ)^2 + 1|
    double purity_residual() const;
    bool is_pure(double tol = Tolerances{}.purity) const { return purity_residual() <= tol; }

private:
    Matrix m_;
};

class ModeSubset {
public:
    ModeSubset(int parent_modes, std::vector<int> selected);
    static ModeSubset range(int parent_modes, int first, int count);

    int parent_modes() const { return parent_; }
    int size() const { return static_cast<int>(sel_.size()); }
    const std::vector<int>& selected() const { return sel_; }

private:
    int parent_;
    std::vector<int> sel_;
};

struct SymplecticSpectrum {
    std::vector<double> values;  // descending
};

double purity_residual(const Matrix& c);

CovarianceMatrix covariance_from_symplectic(const SymplecticMatrix& s, bool validate = true,
                                            double tol = Tolerances{}.symplectic);
CovarianceMatrix restrict(const CovarianceMatrix& c, const ModeSubset& a);
Matrix restrict(const Matrix& c, const ModeSubset& a);
SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& c);
SymplecticSpectrum symplectic_spectrum(const Matrix& c);

// Quadratic exponent q of ρ ∝ exp(-ξᵀ q ξ) for a single mixed mode, branch chosen so q > 0.
Matrix state_hamiltonian(const CovarianceMatrix& single_mode);

// Passive (symplectic-orthogonal) matrix from an N×N unitary: [[Re U, -Im U],[Im U, Re U]] in
// interleaved ordering.
Matrix passive_from_unitary(const CMatrix& u);
CMatrix haar_unitary(int n, Rng& rng);
Matrix random_passive(int n_modes, Rng& rng);

// O1 · diag(e^{r_k}, e^{-r_k}) · O2 with r_k uniform in [0, squeeze_bound].
SymplecticMatrix random_symplectic(int n_modes, double squeeze_bound, std::uint64_t seed);
SymplecticMatrix random_symplectic(int n_modes, double squeeze_bound, Rng& rng);

SymplecticMatrix single_mode_squeezer(int n_modes, int mode, double r);
// Two-mode squeezer on modes (i, j); the mode blocks of SSᵀ are cosh(2r)·1.
SymplecticMatrix two_mode_squeezer(int n_modes, int i, int j, double r);

}  // namespace gaussens
