#include "gaussens/replica.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gaussens/errors.hpp"
#include "gaussens/rng.hpp"

namespace gaussens {

namespace {

void require_x(int x, int min_x) {
    if (x < min_x) throw DomainError("replica order x must be >= " + std::to_string(min_x));
}

void require_mu(double mu) {
    if (!(mu >= 1.0)) throw DomainError("mu must be >= 1");
}

}  // namespace

ReplicaProblem::ReplicaProblem(int x, CovarianceMatrix chat_a) : x_(x), chat_(std::move(chat_a)) {
    require_x(x, 2);
    const Matrix& c = chat_.matrix();
    for (int i = 0; i < chat_.n_modes(); ++i)
        for (int j = 0; j < chat_.n_modes(); ++j) {
            const Matrix b = c.block(2 * i, 2 * j, 2, 2);
            const bool ok = (i == j) ? (std::abs(b(0, 1)) + std::abs(b(1, 0)) + std::abs(b(0, 0) - b(1, 1)) == 0.0)
                                     : (b.cwiseAbs().maxCoeff() == 0.0);
            if (!ok) throw DomainError("ReplicaProblem: Ĉ_A must be block-diagonal with λ·1 blocks");
        }
    for (double m : mu()) require_mu(m);
}

ReplicaProblem ReplicaProblem::isotropic(int x, const std::vector<double>& mu) {
    Vector d(2 * static_cast<Eigen::Index>(mu.size()));
    for (std::size_t k = 0; k < mu.size(); ++k) d(2 * k) = d(2 * k + 1) = mu[k];
    return ReplicaProblem(x, CovarianceMatrix(Matrix(d.asDiagonal())));
}

std::vector<double> ReplicaProblem::mu() const {
    std::vector<double> out;
    for (int i = 0; i < chat_.n_modes(); ++i) out.push_back(chat_.matrix()(2 * i, 2 * i));
    return out;
}

ReplicaMatrices build_replica_matrices(int x) {
    require_x(x, 2);
    const int n = x - 1;
    ReplicaMatrices r;
    r.e = Vector::Ones(n);
    r.m = Matrix::Identity(n, n) + r.e * r.e.transpose();
    r.j = Matrix::Zero(n, n);
    r.t = Matrix::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) r.j(a, b) = a < b ? 1.0 : (a > b ? -1.0 : 0.0);
    for (int a = 0; a + 1 < n; ++a) r.t(a, a + 1) = 1.0;
    r.t(n - 1, 0) -= 1.0;
    return r;
}

std::vector<std::vector<long long>> shift_power_integer(int x, int power) {
    require_x(x, 2);
    const int n = x - 1;
    using IMat = std::vector<std::vector<long long>>;
    IMat t(n, std::vector<long long>(n, 0));
    for (int a = 0; a + 1 < n; ++a) t[a][a + 1] = 1;
    t[n - 1][0] -= 1;
    IMat acc(n, std::vector<long long>(n, 0));
    for (int a = 0; a < n; ++a) acc[a][a] = 1;
    for (int p = 0; p < power; ++p) {
        IMat next(n, std::vector<long long>(n, 0));
        for (int a = 0; a < n; ++a)
            for (int k = 0; k < n; ++k)
                if (acc[a][k] != 0)
                    for (int b = 0; b < n; ++b) next[a][b] += acc[a][k] * t[k][b];
        acc = std::move(next);
    }
    return acc;
}

double j_geometric_identity_check(int x) {
    require_x(x, 3);
    const ReplicaMatrices r = build_replica_matrices(x);
    const Matrix id = Matrix::Identity(x - 1, x - 1);
    const Matrix rhs = (id + r.t) * (id - r.t).inverse();
    return max_abs(r.j - rhs);
}

MasterDeterminant master_determinant(const ReplicaProblem& problem) {
    const ReplicaMatrices r = build_replica_matrices(problem.x());
    const int na = problem.n_a();
    const CMatrix c = problem.constraint_block().matrix().cast<Complex>();
    const CMatrix om = omega(na).cast<Complex>();
    const CMatrix k = kron(c, CMatrix(r.m.cast<Complex>())) -
                      Complex(0.0, 1.0) * kron(om, CMatrix(r.j.cast<Complex>()));
    const LogDet ld = log_det(k);
    const double log_pref = na * (problem.x() - 1) * std::numbers::ln2;
    const Complex val = std::exp(Complex(log_pref - 0.5 * ld.log_abs, -0.5 * ld.phase));
    MasterDeterminant out;
    out.log_abs_det = ld.log_abs;
    out.imag_relative = std::abs(val.imag()) / std::abs(val.real());
    out.value = val.real();
    if (!(out.value > 0.0) || out.imag_relative > 1e-9)
        throw SpectralError("master_determinant: determinant is not real positive (unphysical input)");
    return out;
}

double replica_closed_form(const std::vector<double>& mu, int x) {
    double p = 1.0;
    for (double m : mu) p *= std::pow(2.0, x) / (std::pow(m + 1.0, x) - std::pow(m - 1.0, x));
    return p;
}

ToeplitzCofactor toeplitz_cofactor(double mu, int x) {
    require_x(x, 2);
    require_mu(mu);
    ToeplitzCofactor out;
    const double sign = (x % 2 == 0) ? 1.0 : -1.0;
    out.closed_form = sign * (std::pow(mu + 1.0, 2 * x - 2) - std::pow(mu - 1.0, 2 * x - 2)) / (4.0 * mu);
    const double diag = -2.0 * (mu * mu + 1.0);
    const double off = mu * mu - 1.0;
    double d_prev = 1.0;
    double d = 1.0;
    for (int k = 1; k <= x - 2; ++k) {
        const double next = (k == 1) ? diag : diag * d - off * off * d_prev;
        d_prev = d;
        d = next;
    }
    out.direct = d;
    return out;
}

DeltaJ delta_j(double mu, int x) {
    require_x(x, 2);
    require_mu(mu);
    DeltaJ out;
    const double p = std::pow(mu + 1.0, x - 1) + std::pow(mu - 1.0, x - 1);
    const double num = 2.0 * std::pow(mu * mu - 1.0, x - 1) + std::pow(mu + 1.0, 2 * x - 1) -
                       std::pow(mu - 1.0, 2 * x - 1);
    out.final_form = num * num / (4.0 * x * p * p);

    const double sign = (x % 2 == 0) ? 1.0 : -1.0;
    const double big_x = sign * 4.0 * toeplitz_cofactor(mu, x).direct / (p * p);
    const double f = 1.0 + mu * mu * big_x;
    out.intermediate_form = p * p * f * f / (4.0 * x);

    const ReplicaMatrices r = build_replica_matrices(x);
    const Matrix id = Matrix::Identity(x - 1, x - 1);
    const Matrix proj = id - r.e * r.e.transpose() / static_cast<double>(x);
    out.matrix_form = (mu * mu * r.m - r.j * proj * r.j).determinant();
    return out;
}

double trace_from_delta(double delta, int x) {
    return std::pow(2.0, x - 1) / std::sqrt(static_cast<double>(x) * delta);
}

double final_identity_check(const std::vector<double>& mu, const std::vector<int>& xs, Exec exec) {
    std::vector<double> err(xs.size(), 0.0);
    const auto body = [&](std::size_t k) {
        const double det = master_determinant(ReplicaProblem::isotropic(xs[k], mu)).value;
        const double ref = replica_closed_form(mu, xs[k]);
        err[k] = std::abs(det - ref) / std::abs(ref);
    };
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t k = 0; k < n; ++k) body(static_cast<std::size_t>(k));
    } else {
        for (std::ptrdiff_t k = 0; k < n; ++k) body(static_cast<std::size_t>(k));
    }
    double m = 0.0;
    for (double e : err) m = std::max(m, e);
    return m;
}

SaddleSolution saddle_point_solution(const CovarianceMatrix& chat, int n) {
    if (n < 1) throw DomainError("saddle_point_solution: N must be positive");
    const Matrix& c = chat.matrix();
    const Matrix om = omega(chat.n_modes());
    // The saddle exists only when Ĉ - iΩ is positive definite, i.e. every λ > 1.
    const CMatrix herm = c.cast<Complex>() - Complex(0.0, 1.0) * om.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 1e-12))
        throw DomainError("saddle point unreachable: requires all lambda > 1");
    const Matrix inv_minus = (om - c).inverse();
    const Matrix inv_plus = (om + c).inverse();
    SaddleSolution s;
    s.n = n;
    s.b0 = 0.5 * n * (inv_minus + inv_plus);
    s.a0 = (0.5 * n * (inv_minus - inv_plus)).cast<Complex>() / Complex(0.0, 1.0);
    return s;
}

SaddleResiduals saddle_residuals(const SaddleSolution& sol, const CovarianceMatrix& chat,
                                 const ConstraintSpec& spec, double epsilon) {
    const Matrix& c = chat.matrix();
    const Eigen::Index dim = c.rows();
    const Matrix om = omega(chat.n_modes());
    const CMatrix id = CMatrix::Identity(dim, dim);
    const CMatrix b = sol.b0.cast<Complex>();
    const Complex i(0.0, 1.0);
    const double half_n = 0.5 * sol.n;

    const auto inverses = [&](double eps) {
        const CMatrix gp = eps * id - i * sol.a0 + b;
        const CMatrix gm = eps * id - i * sol.a0 - b;
        return std::pair<CMatrix, CMatrix>(gp.inverse(), gm.inverse());
    };

    SaddleResiduals r;
    {
        const auto [gp, gm] = inverses(0.0);
        r.sad1 = max_abs(CMatrix(om.cast<Complex>() - half_n * (gp - gm)));
        const CMatrix s = half_n * (gp + gm);
        const Matrix hat_re = hat_projection(Matrix(s.real()), spec);
        const Matrix hat_im = hat_projection(Matrix(s.imag()), spec);
        r.sad2 = std::max(max_abs(Matrix(hat_projection(c, spec) - hat_re)), max_abs(hat_im));
    }
    {
        const auto [gp, gm] = inverses(epsilon);
        const CMatrix a_tilde = gp + gm;
        const Matrix target = (2.0 / sol.n) * c;
        r.a_tilde_abs = max_abs(CMatrix(a_tilde - target.cast<Complex>()));
        r.a_tilde_rel = r.a_tilde_abs / max_abs(target);
    }
    r.block_leak = std::max(max_abs(Matrix(sol.b0 - hat_projection(sol.b0, spec))),
                            std::max(max_abs(Matrix(sol.a0.real() - hat_projection(Matrix(sol.a0.real()), spec))),
                                     max_abs(Matrix(sol.a0.imag() - hat_projection(Matrix(sol.a0.imag()), spec)))));
    r.b0_antisymmetry = max_abs(Matrix(sol.b0 + sol.b0.transpose()));
    r.a0_symmetry = max_abs(CMatrix(sol.a0 - sol.a0.transpose()));
    return r;
}

PrefactorValue prefactor_integral(int n, int n_a) {
    if (n_a < 0 || n <= n_a) throw DomainError("prefactor_integral requires N > N_A >= 0");
    if (n_a == 0) return {1.0, true};
    return {std::exp(std::lgamma(n - n_a) - std::lgamma(n)), false};
}

namespace {

constexpr std::int64_t kMcBlock = 1 << 14;

struct BlockSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

BlockSums prefactor_block(int n, int n_a, std::int64_t count, std::uint64_t seed, std::int64_t block) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(block));
    std::normal_distribution<double> g(0.0, 1.0);
    const int d = 2 * n_a;
    // weight = (1+|r|²)^{(1+d)/2 - N} · Γ(1/2) / Γ((1+d)/2); the π^{N_A} factors cancel.
    const double expo = 0.5 * (1.0 + d) - n;
    const double log_norm = 0.5 * std::log(std::numbers::pi) - std::lgamma(0.5 * (1.0 + d));
    BlockSums s;
    for (std::int64_t k = 0; k < count; ++k) {
        double r2 = 0.0;
        for (int a = 0; a < d; ++a) {
            const double z = g(rng);
            r2 += z * z;
        }
        const double w = g(rng);
        r2 /= w * w;
        const double val = std::exp(expo * std::log1p(r2) + log_norm);
        s.sum += val;
        s.sum_sq += val * val;
    }
    return s;
}

}  // namespace

MonteCarloEstimate prefactor_integral_mc(int n, int n_a, std::int64_t samples, std::uint64_t seed, Exec exec) {
    if (n_a < 1 || n <= n_a) throw DomainError("prefactor_integral_mc requires N > N_A >= 1");
    if (samples < 2) throw DomainError("prefactor_integral_mc needs at least 2 samples");
    const std::int64_t n_blocks = (samples + kMcBlock - 1) / kMcBlock;
    std::vector<BlockSums> partial(static_cast<std::size_t>(n_blocks));
    const auto body = [&](std::int64_t b) {
        const std::int64_t count = std::min(kMcBlock, samples - b * kMcBlock);
        partial[static_cast<std::size_t>(b)] = prefactor_block(n, n_a, count, seed, b);
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < n_blocks; ++b) body(b);
    } else {
        for (std::int64_t b = 0; b < n_blocks; ++b) body(b);
    }
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& p : partial) {
        sum += p.sum;
        sum_sq += p.sum_sq;
    }
    const double m = static_cast<double>(samples);
    MonteCarloEstimate out;
    out.samples = samples;
    out.mean = sum / m;
    const double var = std::max(0.0, (sum_sq / m - out.mean * out.mean) * m / (m - 1.0));
    out.std_error = std::sqrt(var / m);
    return out;
}

}  // namespace gaussens
