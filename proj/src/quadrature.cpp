#include "gaussens/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gaussens/errors.hpp"
#include "gaussens/symplectic.hpp"

namespace gaussens {

namespace {

// Integrand support is cut at this many marginal standard deviations (e^{-40.5} ≈ 2.6e-18).
constexpr double kWidthSigmas = 9.0;

double trapezoid_weight(int i, int n) { return (i == 0 || i == n) ? 0.5 : 1.0; }

}  // namespace

double tensor_trapezoid(const std::function<double(const double*)>& f, const std::vector<double>& half_width,
                        int intervals, Exec exec) {
    const int dim = static_cast<int>(half_width.size());
    if (dim < 1 || dim > 4) throw DimensionError("tensor_trapezoid supports 1 to 4 dimensions");
    if (intervals < 2) throw DomainError("tensor_trapezoid needs at least 2 intervals");
    const int n = intervals;
    std::vector<double> h(static_cast<std::size_t>(dim));
    double cell = 1.0;
    for (int k = 0; k < dim; ++k) {
        h[static_cast<std::size_t>(k)] = 2.0 * half_width[static_cast<std::size_t>(k)] / n;
        cell *= h[static_cast<std::size_t>(k)];
    }
    long long inner = 1;
    for (int k = 1; k < dim; ++k) inner *= (n + 1);

    std::vector<double> slab(static_cast<std::size_t>(n + 1), 0.0);
    const auto body = [&](int i0) {
        double pt[4];
        int idx[4] = {i0, 0, 0, 0};
        pt[0] = -half_width[0] + i0 * h[0];
        double acc = 0.0;
        for (long long lin = 0; lin < inner; ++lin) {
            long long rem = lin;
            double w = trapezoid_weight(i0, n);
            for (int k = dim - 1; k >= 1; --k) {
                idx[k] = static_cast<int>(rem % (n + 1));
                rem /= (n + 1);
                pt[k] = -half_width[static_cast<std::size_t>(k)] + idx[k] * h[static_cast<std::size_t>(k)];
                w *= trapezoid_weight(idx[k], n);
            }
            acc += w * f(pt);
        }
        slab[static_cast<std::size_t>(i0)] = acc;
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (int i0 = 0; i0 <= n; ++i0) body(i0);
    } else {
        for (int i0 = 0; i0 <= n; ++i0) body(i0);
    }
    double total = 0.0;
    for (double s : slab) total += s;
    return total * cell;
}

QuadratureResult adaptive_trapezoid(const std::function<double(const double*)>& f,
                                    const std::vector<double>& half_width, double tol, Exec exec, int start,
                                    int max_intervals) {
    QuadratureResult r;
    int n = start;
    double prev = tensor_trapezoid(f, half_width, n, exec);
    while (true) {
        if (2 * n > max_intervals)
            throw ConvergenceError("quadrature did not converge to " + std::to_string(tol) + " within " +
                                   std::to_string(max_intervals) + " intervals per axis");
        n *= 2;
        const double cur = tensor_trapezoid(f, half_width, n, exec);
        const double change = std::abs(cur - prev);
        prev = cur;
        if (change <= 0.5 * tol) {
            r.value = cur;
            r.last_change = change;
            r.intervals = n;
            return r;
        }
    }
}

QuadratureResult purity_by_quadrature(const Matrix& c_a, double tol, Exec exec) {
    if (c_a.rows() != 2 && c_a.rows() != 4)
        throw DimensionError("purity_by_quadrature: only 1 or 2 modes are supported");
    Eigen::LLT<Matrix> llt(c_a);
    if (llt.info() != Eigen::Success) throw SpectralError("purity_by_quadrature: C_A not positive definite");
    const int n = static_cast<int>(c_a.rows() / 2);
    const Matrix om = omega(n);
    // χ² = exp(-½ rᵀ A r) with A = ΩᵀCΩ.
    const Matrix a = om.transpose() * c_a * om;
    const Matrix cov = a.inverse();
    std::vector<double> hw(static_cast<std::size_t>(2 * n));
    for (int k = 0; k < 2 * n; ++k) hw[static_cast<std::size_t>(k)] = kWidthSigmas * std::sqrt(cov(k, k));
    const int dim = 2 * n;
    const auto f = [&a, dim](const double* r) {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) {
            double row = 0.0;
            for (int j = 0; j < dim; ++j) row += a(i, j) * r[j];
            s += r[i] * row;
        }
        return std::exp(-0.5 * s);
    };
    QuadratureResult r = adaptive_trapezoid(f, hw, tol, exec);
    const double norm = std::pow(2.0 * std::numbers::pi, n);
    r.value /= norm;
    r.last_change /= norm;
    return r;
}

QuadratureResult coherent_rep_trace(const Matrix& c_a, int x, bool include_phase, double tol, Exec exec) {
    if (c_a.rows() != 2) throw DimensionError("coherent_rep_trace: single-mode input required");
    if (x != 3) throw DomainError("coherent_rep_trace: only x = 3 is supported (4-D quadrature)");
    const Matrix om = omega(1);
    const Matrix a = om.transpose() * c_a * om;
    // Exponent -¼[r1ᵀAr1 + r2ᵀAr2 + (r1+r2)ᵀA(r1+r2)] = -½ vᵀ Q v.
    Matrix q(4, 4);
    q << a, 0.5 * a, 0.5 * a, a;
    const Matrix cov = q.inverse();
    std::vector<double> hw(4);
    for (int k = 0; k < 4; ++k) hw[static_cast<std::size_t>(k)] = kWidthSigmas * std::sqrt(cov(k, k));
    const auto f = [&q, include_phase](const double* v) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i) {
            double row = 0.0;
            for (int j = 0; j < 4; ++j) row += q(i, j) * v[j];
            s += v[i] * row;
        }
        const double g = std::exp(-0.5 * s);
        if (!include_phase) return g;
        // ½ r1ᵀΩr2 with Ω = [[0,1],[-1,0]]
        const double phase = 0.5 * (v[0] * v[3] - v[1] * v[2]);
        return g * std::cos(phase);
    };
    QuadratureResult r = adaptive_trapezoid(f, hw, tol, exec);
    const double norm = std::pow(2.0 * std::numbers::pi, 2);
    r.value /= norm;
    r.last_change /= norm;
    return r;
}

}  // namespace gaussens
