#include "gaussens/pure_chart.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gaussens/errors.hpp"

namespace gaussens {

PureStateChart::PureStateChart(int n_modes) : n_(n_modes) {
    if (n_modes < 1) throw DomainError("PureStateChart: n_modes must be >= 1");
    const double diag_norm = 1.0 / std::numbers::sqrt2;
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) {
            const double nrm = (i == j) ? diag_norm : 0.5;
            basis_.push_back({i, j, true, nrm});
            basis_.push_back({i, j, false, nrm});
        }
}

Matrix PureStateChart::to_matrix(const Vector& h) const {
    if (h.size() != dim()) throw DimensionError("PureStateChart: coordinate size mismatch");
    Matrix m = Matrix::Zero(2 * n_, 2 * n_);
    for (int k = 0; k < dim(); ++k) {
        const Element& e = basis_[static_cast<std::size_t>(k)];
        const double v = h(k) * e.norm;
        const auto add = [&](int bi, int bj) {
            if (e.z) {
                m(2 * bi, 2 * bj) += v;
                m(2 * bi + 1, 2 * bj + 1) -= v;
            } else {
                m(2 * bi, 2 * bj + 1) += v;
                m(2 * bi + 1, 2 * bj) += v;
            }
        };
        add(e.i, e.j);
        if (e.i != e.j) add(e.j, e.i);
    }
    return m;
}

Vector PureStateChart::coordinates(const Matrix& x) const {
    Vector h(dim());
    for (int k = 0; k < dim(); ++k) {
        const Element& e = basis_[static_cast<std::size_t>(k)];
        const auto pair = [&](int bi, int bj) {
            return e.z ? x(2 * bi, 2 * bj) - x(2 * bi + 1, 2 * bj + 1)
                       : x(2 * bi, 2 * bj + 1) + x(2 * bi + 1, 2 * bj);
        };
        double s = pair(e.i, e.j);
        if (e.i != e.j) s += pair(e.j, e.i);
        h(k) = s * e.norm;
    }
    return h;
}

ChartPoint evaluate_chart(const PureStateChart& chart, const Vector& h) {
    ChartPoint p;
    p.h = h;
    Eigen::SelfAdjointEigenSolver<Matrix> es(chart.to_matrix(h));
    p.u = es.eigenvectors();
    p.a = es.eigenvalues();
    p.c = p.u * p.a.array().exp().matrix().asDiagonal() * p.u.transpose();
    p.c = 0.5 * (p.c + p.c.transpose());
    return p;
}

Vector chart_coordinates(const PureStateChart& chart, const Matrix& c) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(c);
    if (es.eigenvalues().minCoeff() <= 0.0) throw SpectralError("chart_coordinates: C is not positive definite");
    const Matrix h = es.eigenvectors() * es.eigenvalues().array().log().matrix().asDiagonal() *
                     es.eigenvectors().transpose();
    return chart.coordinates(h);
}

Matrix chart_symplectic(const ChartPoint& p) {
    return p.u * (0.5 * p.a.array()).exp().matrix().asDiagonal() * p.u.transpose();
}

namespace {

// log(sinh(x)/x) for x ≥ 0
double log_sinhc(double x) {
    x = std::abs(x);
    if (x < 1e-4) return x * x / 6.0;
    if (x > 20.0) return x - std::numbers::ln2 - std::log(x) + std::log1p(-std::exp(-2.0 * x));
    return std::log(std::sinh(x) / x);
}

// s(δ) = sinh(δ/2)/(δ/2)
double log_s(double delta) { return log_sinhc(0.5 * delta); }

}  // namespace

double log_invariant_density(const Vector& eigenvalues) {
    std::vector<double> ev(eigenvalues.data(), eigenvalues.data() + eigenvalues.size());
    std::sort(ev.begin(), ev.end(), std::greater<>());
    const std::size_t n = ev.size() / 2;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += log_s(2.0 * ev[i]);
        for (std::size_t j = i + 1; j < n; ++j) s += log_s(ev[i] - ev[j]) + log_s(ev[i] + ev[j]);
    }
    return s;
}

ConstraintMap::ConstraintMap(const ConstraintSpec& spec) {
    const Matrix chat = build_constraint_matrix(spec).matrix();
    std::vector<double> t;
    for (int w = 0; w < spec.n_windows(); ++w) {
        const int o = 2 * spec.window_offsets()[static_cast<std::size_t>(w)];
        const int n = 2 * static_cast<int>(spec.windows()[static_cast<std::size_t>(w)].size());
        for (int a = o; a < o + n; ++a)
            for (int b = a; b < o + n; ++b) {
                rows_.push_back(a);
                cols_.push_back(b);
                t.push_back(chat(a, b));
            }
    }
    target_ = Eigen::Map<Vector>(t.data(), static_cast<Eigen::Index>(t.size()));
}

Vector ConstraintMap::values(const Matrix& c) const {
    Vector v(size());
    for (int k = 0; k < size(); ++k)
        v(k) = c(rows_[static_cast<std::size_t>(k)], cols_[static_cast<std::size_t>(k)]) - target_(k);
    return v;
}

Matrix ConstraintMap::jacobian(const PureStateChart& chart, const ChartPoint& p) const {
    const Eigen::Index dim = p.a.size();
    // Divided differences of exp: Φ_ij = e^{(a_i+a_j)/2} · sinh(δ/2)/(δ/2), δ = a_i - a_j.
    Matrix phi(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double half = 0.5 * (p.a(i) - p.a(j));
            const double sc = std::abs(half) < 1e-8 ? 1.0 + half * half / 6.0 : std::sinh(half) / half;
            phi(i, j) = std::exp(0.5 * (p.a(i) + p.a(j))) * sc;
        }
    Matrix jac(size(), chart.dim());
    // ∂C_ab/∂h_k = ⟨L(H, e_a e_bᵀ), E_k⟩ since the Fréchet derivative of exp is self-adjoint.
    for (int k = 0; k < size(); ++k) {
        const Vector ua = p.u.row(rows_[static_cast<std::size_t>(k)]).transpose();
        const Vector ub = p.u.row(cols_[static_cast<std::size_t>(k)]).transpose();
        const Matrix inner = (ua * ub.transpose()).cwiseProduct(phi);
        const Matrix l = p.u * inner * p.u.transpose();
        jac.row(k) = chart.coordinates(l).transpose();
    }
    return jac;
}

}  // namespace gaussens
