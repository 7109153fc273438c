#include "gaussens/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "json.hpp"

#include "gaussens/errors.hpp"
#include "gaussens/manifest.hpp"
#include "gaussens/pure_chart.hpp"
#include "gaussens/rng.hpp"

namespace gaussens {

std::string to_string(SamplerMethod m) {
    return m == SamplerMethod::AmbientSoft ? "ambient-soft" : "manifold-walk";
}

SamplerMethod sampler_method_from_string(const std::string& s) {
    if (s == "ambient-soft") return SamplerMethod::AmbientSoft;
    if (s == "manifold-walk") return SamplerMethod::ManifoldWalk;
    throw ConfigError("unknown sampler method '" + s + "'");
}

void SamplerConfig::validate() const {
    if (n_samples < 1) throw ConfigError("n_samples must be >= 1");
    if (n_chains < 1) throw ConfigError("n_chains must be >= 1");
    if (burn_in < 0 || thinning < 1) throw ConfigError("burn_in must be >= 0 and thinning >= 1");
    if (!(step_size > 0.0)) throw ConfigError("step_size must be positive");
    if (!(spec.min_lambda() > 1.0 + 1e-6))
        throw DomainError("sampling requires every lambda > 1 + 1e-6 (pure marginals are degenerate)");
    if (method == SamplerMethod::AmbientSoft) {
        if (spec.n_modes() > 6) throw ConfigError("ambient-soft sampler is limited to N <= 6");
        if (epsilon_schedule.empty()) throw ConfigError("ambient-soft sampler needs an epsilon schedule");
        for (std::size_t k = 0; k < epsilon_schedule.size(); ++k) {
            if (!(epsilon_schedule[k] > 0.0)) throw ConfigError("epsilon values must be positive");
            if (k > 0 && !(epsilon_schedule[k] < epsilon_schedule[k - 1]))
                throw ConfigError("epsilon schedule must be strictly decreasing");
        }
    }
}

std::string config_hash(const SamplerConfig& c) {
    nlohmann::json j = {{"windows", c.spec.windows()},
                        {"method", to_string(c.method)},
                        {"epsilon_schedule", c.epsilon_schedule},
                        {"step_size", c.step_size},
                        {"burn_in", c.burn_in},
                        {"thinning", c.thinning},
                        {"seed", c.seed},
                        {"n_samples", c.n_samples},
                        {"n_chains", c.n_chains},
                        {"max_newton_iterations", c.max_newton_iterations},
                        {"target_acceptance", c.target_acceptance}};
    return sha256_hex(j.dump());
}

namespace {

double target_scale(const ConstraintSpec& spec) {
    const auto l = spec.lambdas();
    return std::max(1.0, *std::max_element(l.begin(), l.end()));
}

// Pairs every mode with the next free mode of another window.
std::vector<std::pair<int, int>> cross_window_pairs(const ConstraintSpec& spec) {
    const int n = spec.n_modes();
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        if (used[static_cast<std::size_t>(i)]) continue;
        for (int j = i + 1; j < n; ++j) {
            if (!used[static_cast<std::size_t>(j)] && spec.window_of(j) != spec.window_of(i)) {
                used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = true;
                pairs.emplace_back(i, j);
                break;
            }
        }
    }
    return pairs;
}

bool polish(const PureStateChart& chart, const ConstraintMap& cmap, Vector& h, double tol) {
    ChartPoint p = evaluate_chart(chart, h);
    Vector q = cmap.values(p.c);
    double mu = 1e-3;
    for (int it = 0; it < 300; ++it) {
        if (q.lpNorm<Eigen::Infinity>() <= tol) return true;
        const Matrix jac = cmap.jacobian(chart, p);
        const Matrix jjt = jac * jac.transpose();
        bool improved = false;
        for (int tries = 0; tries < 20 && !improved; ++tries) {
            const Matrix lhs = jjt + mu * Matrix::Identity(jjt.rows(), jjt.cols());
            const Vector y = lhs.ldlt().solve(q);
            const Vector trial = h - jac.transpose() * y;
            ChartPoint pt = evaluate_chart(chart, trial);
            const Vector qt = cmap.values(pt.c);
            if (qt.allFinite() && qt.norm() < q.norm()) {
                h = trial;
                p = std::move(pt);
                q = qt;
                mu = std::max(mu / 4.0, 1e-14);
                improved = true;
            } else {
                mu *= 8.0;
            }
        }
        if (!improved) return false;
    }
    return q.lpNorm<Eigen::Infinity>() <= tol;
}

}  // namespace

Matrix feasible_start(const ConstraintSpec& spec, std::uint64_t seed) {
    const int n = spec.n_modes();
    const auto lam = spec.lambdas();
    Matrix s = Matrix::Identity(2 * n, 2 * n);
    for (const auto& [i, j] : cross_window_pairs(spec)) {
        const double target = std::sqrt(lam[static_cast<std::size_t>(i)] * lam[static_cast<std::size_t>(j)]);
        const double r = 0.5 * std::acosh(target);
        s = two_mode_squeezer(n, i, j, r).matrix() * s;
    }
    const PureStateChart chart(n);
    const ConstraintMap cmap(spec);
    const double tol = 1e-12 * target_scale(spec);
    const Vector h0 = chart_coordinates(chart, s * s.transpose());
    Rng rng = make_stream(seed, 0xfeedULL);
    std::normal_distribution<double> g(0.0, 1.0);
    // The paired-squeezer point lies on a degenerate stratum (the constraint Jacobian drops rank
    // there), so polish from a random perturbation of it.
    for (int attempt = 0; attempt < 12; ++attempt) {
        Vector h = h0;
        for (Eigen::Index k = 0; k < h.size(); ++k) h(k) += 0.3 * g(rng);
        if (polish(chart, cmap, h, tol)) return evaluate_chart(chart, h).c;
    }
    throw ConvergenceError("could not find a pure state meeting the constraints (spec may be infeasible)");
}

Matrix symplectic_cleanup(const Matrix& x) {
    const int n = static_cast<int>(x.rows() / 2);
    const Matrix om = omega(n);
    const Matrix g = -om * x.transpose() * om * x;
    const Matrix id = Matrix::Identity(x.rows(), x.cols());
    if (max_abs(Matrix(g - id)) > 0.5) throw ConvergenceError("symplectic_cleanup: input too far from the group");
    // Coupled Newton-Schulz: Y → G^{1/2}, Z → G^{-1/2}.
    Matrix y = g;
    Matrix z = id;
    for (int it = 0; it < 60; ++it) {
        const Matrix t = 0.5 * (3.0 * id - z * y);
        y = y * t;
        z = t * z;
        if (max_abs(Matrix(t - id)) < 1e-15) break;
    }
    return x * z;
}

namespace {

struct ChainOutput {
    std::vector<Matrix> samples;
    std::vector<double> cres, sres, pres;
    std::vector<int> eps_index;
    std::int64_t proposals = 0, accepted = 0, discarded = 0;
    std::vector<double> monitor;
    std::vector<double> step_sizes;
};

std::pair<int, int> monitor_entry(const ConstraintSpec& spec) {
    for (int j = 1; j < spec.n_modes(); ++j)
        if (spec.window_of(j) != spec.window_of(0)) return {0, 2 * j};
    return {0, 1};
}

double lag1_autocorrelation(const std::vector<double>& v) {
    if (v.size() < 3) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double c0 = 0.0, c1 = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        c0 += (v[k] - mean) * (v[k] - mean);
        if (k + 1 < v.size()) c1 += (v[k] - mean) * (v[k + 1] - mean);
    }
    return c0 > 0.0 ? c1 / c0 : 0.0;
}

double adapt_rate(int t) { return 1.0 / std::pow(1.0 + t / 10.0, 0.6); }

// ---------------------------------------------------------------- manifold walk

struct ManifoldState {
    ChartPoint pt;
    Matrix vr;    // normal-space basis (d × r)
    Matrix pinv;  // (Q Vr)^+ = Σ⁻¹ Uᵀ (r × m)
    int rank = 0;
    double log_target = 0.0;
};

ManifoldState make_manifold_state(const PureStateChart& chart, const ConstraintMap& cmap, const Vector& h) {
    ManifoldState s;
    s.pt = evaluate_chart(chart, h);
    const Matrix jac = cmap.jacobian(chart, s.pt);
    Eigen::BDCSVD<Matrix> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();
    const double cut = 1e-8 * sv(0);
    int r = 0;
    double log_pdet = 0.0;
    while (r < sv.size() && sv(r) > cut) log_pdet += std::log(sv(r++));
    s.rank = r;
    s.vr = svd.matrixV().leftCols(r);
    s.pinv = sv.head(r).cwiseInverse().asDiagonal() * svd.matrixU().leftCols(r).transpose();
    s.log_target = log_invariant_density(s.pt.a) - log_pdet;
    return s;
}

// Solves q(base + Vr a) = 0 for a with a chord iteration; returns false on failure.
bool project_normal(const PureStateChart& chart, const ConstraintMap& cmap, const Vector& base,
                    const ManifoldState& at, int max_iter, double tol, Vector& out) {
    Vector a = Vector::Zero(at.rank);
    for (int it = 0; it <= max_iter; ++it) {
        const Vector y = base + at.vr * a;
        const ChartPoint p = evaluate_chart(chart, y);
        const Vector q = cmap.values(p.c);
        if (!q.allFinite()) return false;
        if (q.lpNorm<Eigen::Infinity>() <= tol) {
            out = y;
            return true;
        }
        a -= at.pinv * q;
        if (!a.allFinite() || a.norm() > 1e3) return false;
    }
    return false;
}

ChainOutput run_manifold_chain(const SamplerConfig& cfg, const Matrix& start, int chain, int n_keep) {
    const ConstraintSpec& spec = cfg.spec;
    const PureStateChart chart(spec.n_modes());
    const ConstraintMap cmap(spec);
    const Matrix chat = build_constraint_matrix(spec).matrix();
    const double tol = 1e-11 * target_scale(spec);
    const auto [mi, mj] = monitor_entry(spec);
    Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(chain) + 1);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    ManifoldState x = make_manifold_state(chart, cmap, chart_coordinates(chart, start));
    double sigma = cfg.step_size;
    ChainOutput out;
    const int d = chart.dim();
    const int total = cfg.burn_in + n_keep * cfg.thinning;
    for (int t = 0; t < total; ++t) {
        const bool burning = t < cfg.burn_in;
        Vector z(d);
        for (int k = 0; k < d; ++k) z(k) = sigma * g(rng);
        const Vector v = z - x.vr * (x.vr.transpose() * z);
        bool accepted = false;
        bool discard = false;
        Vector y;
        ++out.proposals;
        if (!project_normal(chart, cmap, x.pt.h + v, x, cfg.max_newton_iterations, tol, y)) {
            discard = true;
        } else {
            ManifoldState ys = make_manifold_state(chart, cmap, y);
            if (ys.rank != x.rank) {
                discard = true;
            } else {
                const Vector w = x.pt.h - y;
                const Vector vp = w - ys.vr * (ys.vr.transpose() * w);
                Vector back;
                const bool rev = project_normal(chart, cmap, y + vp, ys, cfg.max_newton_iterations, tol, back);
                if (!rev || (back - x.pt.h).lpNorm<Eigen::Infinity>() > 1e-8) {
                    discard = true;
                } else {
                    const double log_alpha =
                        ys.log_target - x.log_target - (vp.squaredNorm() - v.squaredNorm()) / (2.0 * sigma * sigma);
                    if (std::log(u(rng)) < log_alpha) {
                        x = std::move(ys);
                        accepted = true;
                    }
                }
            }
        }
        if (discard) ++out.discarded;
        if (accepted) ++out.accepted;
        if (burning) {
            sigma *= std::exp(adapt_rate(t) * ((accepted ? 1.0 : 0.0) - cfg.target_acceptance));
            if (t + 1 == cfg.burn_in) out.proposals = out.accepted = out.discarded = 0;
            continue;
        }
        if ((t - cfg.burn_in + 1) % cfg.thinning == 0) {
            const Matrix s = chart_symplectic(x.pt);
            out.samples.push_back(x.pt.c);
            out.cres.push_back(constraint_residual(x.pt.c, chat, spec));
            out.sres.push_back(symplectic_residual(s));
            out.pres.push_back(purity_residual(x.pt.c));
            out.eps_index.push_back(0);
            out.monitor.push_back(x.pt.c(mi, mj));
        }
    }
    out.step_sizes.push_back(sigma);
    return out;
}

// ---------------------------------------------------------------- ambient soft constraints
//
// Target on raw entries of S (flat dS):
//   exp(-|g|²/(2σ_g²) - |h|²/(2σ_h²)) · 1{|h_clean|∞ ≤ ε}
// where g = strict upper triangle of SΩSᵀ - Ω, h = independent hat components of SSᵀ - Ĉ, and
// h_clean the same components after the symplectic cleanup. σ_h = ε/4 and σ_g = ε/20 keep the
// cleanup shift small against ε, so every recorded residual is within ε. Sampled with
// Hamiltonian Monte Carlo.

constexpr double kMarginalSigma = 0.25;
constexpr double kSymplecticSigma = 0.05;
constexpr int kLeapfrogSteps = 48;
// HMC acceptance falls off a cliff once the leapfrog step passes the stability limit of the stiff
// symplectic directions; a random-walk style target (~0.3) parks the step on that cliff.
constexpr double kHmcTargetAcceptance = 0.6;

struct AmbientModel {
    const ConstraintMap& cmap;
    std::vector<int> rows, cols;
    Matrix om;
    double inv_var_g, inv_var_h, eps;
};

struct AmbientPoint {
    Matrix s;
    double log_target = 0.0;
    Matrix grad;
};

void ambient_eval(const AmbientModel& m, AmbientPoint& p) {
    const Matrix g = p.s * m.om * p.s.transpose() - m.om;
    const Matrix c = p.s * p.s.transpose();
    const Vector h = m.cmap.values(c);
    double g2 = 0.0;
    for (Eigen::Index a = 0; a < g.rows(); ++a)
        for (Eigen::Index b = a + 1; b < g.cols(); ++b) g2 += g(a, b) * g(a, b);
    p.log_target = -0.5 * (m.inv_var_g * g2 + m.inv_var_h * h.squaredNorm());
    Matrix mm = Matrix::Zero(c.rows(), c.cols());
    for (std::size_t k = 0; k < m.rows.size(); ++k) mm(m.rows[k], m.cols[k]) = h(static_cast<Eigen::Index>(k));
    // ∇(¼|G|²_F) = -G S Ω and ∇(½|h|²) = (M + Mᵀ) S.
    p.grad = m.inv_var_g * (g * p.s * m.om) - m.inv_var_h * ((mm + mm.transpose()) * p.s);
}

bool ambient_support(const AmbientModel& m, const Matrix& s, Matrix& c_clean) {
    Matrix sc;
    try {
        sc = symplectic_cleanup(s);
    } catch (const ConvergenceError&) {
        return false;
    }
    c_clean = sc * sc.transpose();
    c_clean = 0.5 * (c_clean + c_clean.transpose());
    return m.cmap.values(c_clean).lpNorm<Eigen::Infinity>() <= m.eps;
}

ChainOutput run_ambient_chain(const SamplerConfig& cfg, const Matrix& start_s, int chain, int n_keep) {
    const ConstraintSpec& spec = cfg.spec;
    const ConstraintMap cmap(spec);
    const Matrix chat = build_constraint_matrix(spec).matrix();
    const auto [mi, mj] = monitor_entry(spec);
    Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(chain) + 1);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> nsteps(kLeapfrogSteps / 2, 3 * kLeapfrogSteps / 2);
    ChainOutput out;
    const Eigen::Index dim = start_s.rows();
    const double s_scale = std::sqrt(target_scale(spec));
    for (std::size_t level = 0; level < cfg.epsilon_schedule.size(); ++level) {
        const double eps = cfg.epsilon_schedule[level];
        const double sg = kSymplecticSigma * eps;
        const double sh = kMarginalSigma * eps;
        AmbientModel model{cmap, {}, {}, omega(spec.n_modes()), 1.0 / (sg * sg), 1.0 / (sh * sh), eps};
        for (int w = 0; w < spec.n_windows(); ++w) {
            const int o = 2 * spec.window_offsets()[static_cast<std::size_t>(w)];
            const int n = 2 * static_cast<int>(spec.windows()[static_cast<std::size_t>(w)].size());
            for (int a = o; a < o + n; ++a)
                for (int b = a; b < o + n; ++b) {
                    model.rows.push_back(a);
                    model.cols.push_back(b);
                }
        }
        AmbientPoint x{start_s, 0.0, {}};
        ambient_eval(model, x);
        Matrix c_clean;
        if (!ambient_support(model, x.s, c_clean))
            throw ConvergenceError("ambient sampler: start point outside the kernel support");
        // Leapfrog step: a fraction of the stiffest (symplectic) kernel width.
        double dt = cfg.step_size * sg / s_scale;
        double log_dt_sum = 0.0;
        int log_dt_count = 0;
        std::int64_t props = 0, acc = 0;
        const int total = cfg.burn_in + n_keep * cfg.thinning;
        for (int t = 0; t < total; ++t) {
            const bool burning = t < cfg.burn_in;
            Matrix p(dim, dim);
            for (Eigen::Index a = 0; a < dim; ++a)
                for (Eigen::Index b = 0; b < dim; ++b) p(a, b) = g(rng);
            const double h0 = -x.log_target + 0.5 * p.squaredNorm();
            AmbientPoint y = x;
            const int steps = nsteps(rng);
            p += 0.5 * dt * y.grad;
            bool finite = true;
            for (int k = 0; k < steps; ++k) {
                y.s += dt * p;
                ambient_eval(model, y);
                if (!std::isfinite(y.log_target)) {
                    finite = false;
                    break;
                }
                p += (k + 1 == steps ? 0.5 : 1.0) * dt * y.grad;
            }
            bool accepted = false;
            Matrix c_new;
            if (finite && ambient_support(model, y.s, c_new)) {
                const double h1 = -y.log_target + 0.5 * p.squaredNorm();
                if (std::log(u(rng)) < h0 - h1) {
                    x = std::move(y);
                    c_clean = std::move(c_new);
                    accepted = true;
                }
            }
            if (burning) {
                dt *= std::exp(adapt_rate(t) * ((accepted ? 1.0 : 0.0) - kHmcTargetAcceptance));
                if (2 * t >= cfg.burn_in) {
                    log_dt_sum += std::log(dt);
                    ++log_dt_count;
                }
                // Freeze at the log-average of the second half rather than the last noisy iterate.
                if (t + 1 == cfg.burn_in && log_dt_count > 0) dt = std::exp(log_dt_sum / log_dt_count);
                continue;
            }
            ++props;
            if (accepted) ++acc;
            if ((t - cfg.burn_in + 1) % cfg.thinning == 0) {
                const Matrix sc = symplectic_cleanup(x.s);
                out.samples.push_back(c_clean);
                out.cres.push_back(constraint_residual(c_clean, chat, spec));
                out.sres.push_back(symplectic_residual(sc));
                out.pres.push_back(purity_residual(c_clean));
                out.eps_index.push_back(static_cast<int>(level));
                out.monitor.push_back(c_clean(mi, mj));
            }
        }
        out.proposals += props;
        out.accepted += acc;
        out.step_sizes.push_back(dt);
        const double rate = props > 0 ? static_cast<double>(acc) / static_cast<double>(props) : 0.0;
        if (rate < 0.05 || rate > 0.7)
            throw TuningError("ambient sampler acceptance " + std::to_string(rate) + " at epsilon " +
                              std::to_string(eps) + " is outside [0.05, 0.7] (chain " + std::to_string(chain) +
                              ", final leapfrog step " + std::to_string(dt) + ")");
    }
    return out;
}

SampleBatch merge(const SamplerConfig& cfg, std::vector<ChainOutput>& chains) {
    SampleBatch b;
    b.n_modes = cfg.spec.n_modes();
    b.method = cfg.method;
    if (cfg.method == SamplerMethod::AmbientSoft) b.epsilons = cfg.epsilon_schedule;
    b.seed = cfg.seed;
    b.config_hash = config_hash(cfg);
    std::int64_t acc = 0;
    double ac_sum = 0.0;
    // Group by ε level first, then chain, so each level is contiguous.
    const int levels = cfg.method == SamplerMethod::AmbientSoft ? static_cast<int>(cfg.epsilon_schedule.size()) : 1;
    for (int level = 0; level < levels; ++level)
        for (std::size_t c = 0; c < chains.size(); ++c) {
            const ChainOutput& o = chains[c];
            for (std::size_t k = 0; k < o.samples.size(); ++k) {
                if (o.eps_index[k] != level) continue;
                b.samples.push_back(o.samples[k]);
                b.constraint_residuals.push_back(o.cres[k]);
                b.symplectic_residuals.push_back(o.sres[k]);
                b.purity_residuals.push_back(o.pres[k]);
                b.weights.push_back(1.0);
                b.epsilon_index.push_back(level);
                b.chain_index.push_back(static_cast<int>(c));
            }
        }
    for (const ChainOutput& o : chains) {
        b.proposals += o.proposals;
        acc += o.accepted;
        b.discarded += o.discarded;
        ac_sum += lag1_autocorrelation(o.monitor);
        b.final_step_sizes.insert(b.final_step_sizes.end(), o.step_sizes.begin(), o.step_sizes.end());
    }
    b.acceptance_rate = b.proposals > 0 ? static_cast<double>(acc) / static_cast<double>(b.proposals) : 0.0;
    b.discard_fraction = b.proposals > 0 ? static_cast<double>(b.discarded) / static_cast<double>(b.proposals) : 0.0;
    b.autocorrelation = ac_sum / static_cast<double>(chains.size());
    return b;
}

template <typename Fn>
std::vector<ChainOutput> run_chains(const SamplerConfig& cfg, Fn&& fn) {
    std::vector<ChainOutput> chains(static_cast<std::size_t>(cfg.n_chains));
    std::vector<std::string> errors(chains.size());
    const int n = cfg.n_chains;
    const auto body = [&](int c) {
        const int keep = cfg.n_samples / n + (c < cfg.n_samples % n ? 1 : 0);
        try {
            chains[static_cast<std::size_t>(c)] = fn(c, keep);
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(c)] = e.what();
        }
    };
    if (cfg.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int c = 0; c < n; ++c) body(c);
    } else {
        for (int c = 0; c < n; ++c) body(c);
    }
    for (const auto& e : errors)
        if (!e.empty()) {
            if (e.find("acceptance") != std::string::npos) throw TuningError(e);
            throw ConvergenceError(e);
        }
    return chains;
}

}  // namespace

SampleBatch sample_manifold(const SamplerConfig& cfg) {
    cfg.validate();
    const Matrix start = feasible_start(cfg.spec, cfg.seed);
    auto chains = run_chains(cfg, [&](int c, int keep) { return run_manifold_chain(cfg, start, c, keep); });
    return merge(cfg, chains);
}

SampleBatch sample_ambient(const SamplerConfig& cfg) {
    cfg.validate();
    const Matrix start = feasible_start(cfg.spec, cfg.seed);
    const PureStateChart chart(cfg.spec.n_modes());
    const Matrix s0 = chart_symplectic(evaluate_chart(chart, chart_coordinates(chart, start)));
    auto chains = run_chains(cfg, [&](int c, int keep) { return run_ambient_chain(cfg, s0, c, keep); });
    return merge(cfg, chains);
}

SampleBatch sample(const SamplerConfig& cfg) {
    return cfg.method == SamplerMethod::AmbientSoft ? sample_ambient(cfg) : sample_manifold(cfg);
}

}  // namespace gaussens
