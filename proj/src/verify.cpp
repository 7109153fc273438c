#include "gaussens/verify.hpp"

#include <algorithm>
#include <cmath>

#include "gaussens/analytic.hpp"
#include "gaussens/constraints.hpp"
#include "gaussens/errors.hpp"
#include "gaussens/fock.hpp"
#include "gaussens/quadrature.hpp"
#include "gaussens/replica.hpp"
#include "gaussens/rng.hpp"
#include "gaussens/symplectic.hpp"

namespace gaussens {

namespace {

const std::vector<double> kMuSweep = {1.0 + 1e-6, 1.5, 2.0, 5.0, 10.0};
constexpr double kSaddleEpsilon = 1e-8;

struct TagInfo {
    std::string suite;
    std::string description;
    double tolerance;
    bool lower_bound = false;
};

const std::map<std::string, TagInfo>& tag_table() {
    static const std::map<std::string, TagInfo> t = {
        {"replica.master_determinant",
         {"replica", "master determinant vs per-mode closed form, x=2..8, N_A=1..3 (relative)", 1e-9}},
        {"replica.toeplitz_cofactor", {"replica", "Toeplitz cofactor closed form vs tridiagonal continuant (relative)", 1e-10}},
        {"replica.delta_j_intermediate", {"replica", "Δ_j closed form vs intermediate form through the cofactor (relative)", 1e-10}},
        {"replica.delta_j_matrix", {"replica", "Δ_j closed form vs its defining determinant (relative)", 1e-10}},
        {"replica.trace_from_delta", {"replica", "single-mode trace reassembled from Δ_j vs closed form (relative)", 1e-10}},
        {"replica.j_geometric", {"replica", "J = (1+T)(1-T)^{-1}, x=3..8 (max entry)", 1e-12}},
        {"saddle.equation_1", {"saddle", "first saddle equation at ε=0, random windows with N<=8", 1e-10}},
        {"saddle.equation_2", {"saddle", "second saddle equation at ε=0, random windows with N<=8", 1e-10}},
        {"saddle.a_tilde_limit",
         {"saddle", "Ã₀(ε) vs (2/N)Ĉ at ε=1e-8, relative to the largest entry", 10.0 * kSaddleEpsilon}},
        {"saddle.block_structure", {"saddle", "A₀, B₀ block pattern and (anti)symmetry", 1e-14}},
        {"saddle.prefactor_exact", {"saddle", "prefactor lgamma form vs factorial ratio (relative)", 1e-12}},
        {"fock.trace_power", {"fock", "truncated thermal Tr ρ^x vs closed form, λ∈{1,1.5,2,3,5}, x=2..6", 1e-8}},
        {"fock.thermal_covariance", {"fock", "thermal state second moments vs λ·1", 1e-8}},
        {"fock.hamiltonian_roundtrip", {"fock", "Gibbs state of q(3·1) reproduces covariance 3·1", 1e-6}},
        {"fock.group_law", {"fock", "D_r D_r' = exp(-(i/2) rᵀΩr') D_{r+r'} on low levels", 1e-10}},
        {"fock.characteristic_function", {"fock", "Tr[ρ D_r] of a thermal state vs Gaussian χ(r)", 1e-8}},
        {"fock.purity_quadrature", {"fock", "phase-space purity vs det(C_A)^{-1/2}, 20 random 1-2 mode states", 1e-6}},
        {"fock.coherent_rep_x3", {"fock", "coherent-state representation of Tr ρ³ at λ=2 vs 4/13", 1e-5}},
        {"fock.phase_ablation", {"fock", "dropping the phase factor must change Tr ρ³ (lower bound)", 1e-3, true}},
        {"analytic.entropy_continuation",
         {"analytic", "-d/dx of continued Rényi trace at x=1 vs entropy_single, λ∈{1.1,2,3,10}", 1e-6}},
        {"analytic.purity_det", {"analytic", "renyi_trace_mixed(·,2) vs det(C_A)^{-1/2}, random states", 1e-10}},
        {"analytic.mixed_vs_single", {"analytic", "entropy and Rényi traces of λ·1 blocks vs single-mode forms", 1e-12}},
        {"analytic.finite_n_purity", {"analytic", "finite-N purity at N=16, λ=2 vs (16/15)/2", 1e-12}},
    };
    return t;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Every N_A-tuple drawn from the μ sweep.
std::vector<std::vector<double>> mu_tuples(int n_a) {
    std::vector<std::vector<double>> out{{}};
    for (int k = 0; k < n_a; ++k) {
        std::vector<std::vector<double>> next;
        for (const auto& t : out)
            for (double m : kMuSweep) {
                auto u = t;
                u.push_back(m);
                next.push_back(u);
            }
        out = std::move(next);
    }
    return out;
}

ConstraintSpec random_windows(int n, bool scenario_two, Rng& rng) {
    std::uniform_real_distribution<double> lam(1.05, 4.0);
    std::uniform_int_distribution<int> width(1, 3);
    std::vector<std::vector<double>> w;
    int used = 0;
    while (used < n) {
        const int k = scenario_two ? std::min(width(rng), n - used) : 1;
        std::vector<double> win;
        for (int i = 0; i < k; ++i) win.push_back(lam(rng));
        w.push_back(win);
        used += k;
    }
    if (scenario_two && std::all_of(w.begin(), w.end(), [](const auto& v) { return v.size() == 1; })) {
        w.front().push_back(lam(rng));
        w.pop_back();
    }
    return ConstraintSpec(w);
}

using Emit = std::function<void(const std::string&, double)>;

void replica_suite(const Emit& emit, Exec exec) {
    double master = 0.0;
    for (int n_a = 1; n_a <= 3; ++n_a)
        for (const auto& mu : mu_tuples(n_a))
            master = std::max(master, final_identity_check(mu, {2, 3, 4, 5, 6, 7, 8}, exec));
    emit("replica.master_determinant", master);

    double toe = 0.0, inter = 0.0, mat = 0.0, tr = 0.0;
    for (double mu : kMuSweep)
        for (int x = 2; x <= 8; ++x) {
            const ToeplitzCofactor tc = toeplitz_cofactor(mu, x);
            toe = std::max(toe, rel(tc.direct, tc.closed_form));
            const DeltaJ d = delta_j(mu, x);
            inter = std::max(inter, rel(d.intermediate_form, d.final_form));
            mat = std::max(mat, rel(d.matrix_form, d.final_form));
            tr = std::max(tr, rel(trace_from_delta(d.final_form, x), replica_closed_form({mu}, x)));
        }
    emit("replica.toeplitz_cofactor", toe);
    emit("replica.delta_j_intermediate", inter);
    emit("replica.delta_j_matrix", mat);
    emit("replica.trace_from_delta", tr);

    double jg = 0.0;
    for (int x = 3; x <= 8; ++x) jg = std::max(jg, j_geometric_identity_check(x));
    emit("replica.j_geometric", jg);
}

void saddle_suite(const Emit& emit) {
    Rng rng = make_stream(20240601, 0);
    double s1 = 0.0, s2 = 0.0, at = 0.0, blk = 0.0;
    for (int n = 2; n <= 8; ++n)
        for (bool two : {false, true}) {
            if (two && n < 2) continue;
            for (int rep = 0; rep < 4; ++rep) {
                const ConstraintSpec spec = random_windows(n, two, rng);
                const CovarianceMatrix chat = build_constraint_matrix(spec);
                const SaddleSolution sol = saddle_point_solution(chat, n);
                const SaddleResiduals r = saddle_residuals(sol, chat, spec, kSaddleEpsilon);
                s1 = std::max(s1, r.sad1);
                s2 = std::max(s2, r.sad2);
                at = std::max(at, r.a_tilde_rel);
                blk = std::max({blk, r.block_leak, r.b0_antisymmetry, r.a0_symmetry});
            }
        }
    emit("saddle.equation_1", s1);
    emit("saddle.equation_2", s2);
    emit("saddle.a_tilde_limit", at);
    emit("saddle.block_structure", blk);

    double pf = 0.0;
    for (int n = 2; n <= 12; ++n)
        for (int n_a = 1; n_a < n; ++n_a) {
            double ratio = 1.0;  // (N-N_A-1)!/(N-1)!
            for (int k = n - n_a; k <= n - 1; ++k) ratio /= k;
            pf = std::max(pf, rel(prefactor_integral(n, n_a).value, ratio));
        }
    emit("saddle.prefactor_exact", pf);
}

void fock_suite(const Emit& emit, Exec exec) {
    double tp = 0.0, cov = 0.0;
    for (double lambda : {1.0, 1.5, 2.0, 3.0, 5.0}) {
        const FockOperator rho = thermal_state(lambda);
        for (int x = 2; x <= 6; ++x) tp = std::max(tp, std::abs(trace_power(rho, x) - renyi_trace_single(lambda, x)));
        cov = std::max(cov, max_abs(Matrix(fock_covariance(rho) - lambda * Matrix::Identity(2, 2))));
    }
    emit("fock.trace_power", tp);
    emit("fock.thermal_covariance", cov);

    {
        const Matrix q = state_hamiltonian(CovarianceMatrix(3.0 * Matrix::Identity(2, 2)));
        const FockOperator rho = gibbs_state(q, 120);
        emit("fock.hamiltonian_roundtrip", max_abs(Matrix(fock_covariance(rho) - 3.0 * Matrix::Identity(2, 2))));
    }

    {
        double gl = 0.0;
        const std::vector<std::pair<Vector, Vector>> pairs = [] {
            std::vector<std::pair<Vector, Vector>> v;
            Vector a(2), b(2);
            a << 0.3, -0.2;
            b << 0.1, 0.25;
            v.emplace_back(a, b);
            a << -0.5, 0.4;
            b << 0.35, 0.3;
            v.emplace_back(a, b);
            return v;
        }();
        for (const auto& [r, rp] : pairs) gl = std::max(gl, group_law_residual(r, rp, 60, -1.0));
        emit("fock.group_law", gl);
    }

    {
        double cf = 0.0;
        const double lambda = 2.0;
        const FockOperator rho = thermal_state(lambda);
        const Matrix c = lambda * Matrix::Identity(2, 2);
        Vector r(2);
        for (const auto& [a, b] : std::vector<std::pair<double, double>>{{0.3, -0.2}, {0.8, 0.5}, {-0.1, 1.1}}) {
            r << a, b;
            cf = std::max(cf, std::abs(fock_characteristic(rho, r) - Complex(characteristic_function(c, r), 0.0)));
        }
        emit("fock.characteristic_function", cf);
    }

    {
        Rng rng = make_stream(777, 0);
        double pq = 0.0;
        for (int k = 0; k < 20; ++k) {
            const Matrix c = covariance_from_symplectic(random_symplectic(3, 0.8, rng)).matrix();
            const int n_a = 1 + k % 2;
            const Matrix ca = c.topLeftCorner(2 * n_a, 2 * n_a);
            const double ref = 1.0 / std::sqrt(ca.determinant());
            pq = std::max(pq, std::abs(purity_by_quadrature(ca, 1e-7, exec).value - ref));
        }
        emit("fock.purity_quadrature", pq);
    }

    {
        const Matrix c = 2.0 * Matrix::Identity(2, 2);
        const double with = coherent_rep_trace(c, 3, true, 1e-7, exec).value;
        const double without = coherent_rep_trace(c, 3, false, 1e-7, exec).value;
        emit("fock.coherent_rep_x3", std::abs(with - 4.0 / 13.0));
        emit("fock.phase_ablation", std::abs(without - 4.0 / 13.0));
    }
}

void analytic_suite(const Emit& emit) {
    double ec = 0.0;
    for (double lambda : {1.1, 2.0, 3.0, 10.0})
        ec = std::max(ec, std::abs(entropy_by_continuation(lambda) - entropy_single(lambda)));
    emit("analytic.entropy_continuation", ec);

    Rng rng = make_stream(4242, 0);
    double pd = 0.0;
    for (int k = 0; k < 50; ++k) {
        const int n = 2 + k % 4;
        const Matrix c = covariance_from_symplectic(random_symplectic(n, 1.0, rng)).matrix();
        const int n_a = 1 + k % (n - 1);
        const Matrix ca = c.topLeftCorner(2 * n_a, 2 * n_a);
        pd = std::max(pd, rel(renyi_trace_mixed(ca, 2), 1.0 / std::sqrt(ca.determinant())));
    }
    emit("analytic.purity_det", pd);

    double ms = 0.0;
    for (double lambda : {1.0, 1.5, 2.0, 7.0}) {
        const Matrix c = lambda * Matrix::Identity(2, 2);
        ms = std::max(ms, std::abs(entropy_mixed(c) - entropy_single(lambda)));
        for (int x = 2; x <= 6; ++x) ms = std::max(ms, rel(renyi_trace_mixed(c, x), renyi_trace_single(lambda, x)));
    }
    emit("analytic.mixed_vs_single", ms);

    const double fp = finite_n_purity(CovarianceMatrix(2.0 * Matrix::Identity(2, 2)), 16, 1);
    emit("analytic.finite_n_purity", rel(fp, (16.0 / 15.0) / 2.0));
}

}  // namespace

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass; });
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks)
        arr.push_back({{"suite", c.suite},
                       {"identity", c.tag},
                       {"description", c.description},
                       {"residual", c.residual},
                       {"tolerance", c.tolerance},
                       {"bound", c.lower_bound ? "lower" : "upper"},
                       {"pass", c.pass}});
    return {{"pass", all_pass()}, {"checks", arr}};
}

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> s = {"all", "replica", "saddle", "fock", "analytic"};
    return s;
}

const std::map<std::string, double>& default_verify_tolerances() {
    static const std::map<std::string, double> m = [] {
        std::map<std::string, double> out;
        for (const auto& [tag, info] : tag_table()) out[tag] = info.tolerance;
        return out;
    }();
    return m;
}

VerifyReport run_verify(const VerifyOptions& options) {
    const auto& suites = verify_suites();
    if (std::find(suites.begin(), suites.end(), options.suite) == suites.end())
        throw ConfigError("unknown verify suite '" + options.suite + "'");
    for (const auto& [tag, tol] : options.overrides) {
        if (!tag_table().count(tag)) throw ConfigError("unknown identity tag '" + tag + "'");
        if (!(tol > 0.0)) throw ConfigError("tolerance for '" + tag + "' must be positive");
    }
    if (options.tolerance && !(*options.tolerance > 0.0)) throw ConfigError("tolerance must be positive");

    VerifyReport report;
    const Emit emit = [&](const std::string& tag, double residual) {
        const TagInfo& info = tag_table().at(tag);
        IdentityCheck c;
        c.suite = info.suite;
        c.tag = tag;
        c.description = info.description;
        c.residual = residual;
        c.lower_bound = info.lower_bound;
        c.tolerance = info.tolerance;
        if (options.tolerance && !info.lower_bound) c.tolerance = *options.tolerance;
        if (auto it = options.overrides.find(tag); it != options.overrides.end()) c.tolerance = it->second;
        c.pass = std::isfinite(residual) && (c.lower_bound ? residual > c.tolerance : residual <= c.tolerance);
        report.checks.push_back(c);
    };
    const auto want = [&](const char* s) { return options.suite == "all" || options.suite == s; };
    if (want("replica")) replica_suite(emit, options.exec);
    if (want("saddle")) saddle_suite(emit);
    if (want("fock")) fock_suite(emit, options.exec);
    if (want("analytic")) analytic_suite(emit);
    return report;
}

}  // namespace gaussens
