#include "gaussens/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>


#include "gaussens/errors.hpp"

namespace gaussens {

namespace {

double clamp_nu(double nu) {
    if (nu < 1.0 - kPureClamp) throw SpectralError("unphysical symplectic eigenvalue " + std::to_string(nu));
    return nu < 1.0 + kPureClamp ? 1.0 : nu;
}

void require_lambda(double lambda) {
    if (!(lambda >= 1.0)) throw DomainError("lambda must be >= 1 (got " + std::to_string(lambda) + ")");
}

}  // namespace

double renyi_trace_continued(double lambda, double x) {
    require_lambda(lambda);
    if (!(x > 0.0)) throw DomainError("renyi order must be positive");
    if (lambda == 1.0) return 1.0;
    // (2/(λ+1))^x / (1 - q^x), q = (λ-1)/(λ+1); stable for large λ.
    const double q = (lambda - 1.0) / (lambda + 1.0);
    return std::exp(x * std::log(2.0 / (lambda + 1.0))) / -std::expm1(x * std::log(q));
}

double renyi_trace_single(double lambda, int x) {
    if (x < 1) throw DomainError("renyi order must be >= 1");
    require_lambda(lambda);
    if (x == 1) return 1.0;
    return renyi_trace_continued(lambda, static_cast<double>(x));
}

double entropy_single(double lambda) {
    require_lambda(lambda);
    if (lambda < 1.0 + kPureClamp) return 0.0;
    return -std::numbers::ln2 + 0.5 * (lambda + 1.0) * std::log(lambda + 1.0) -
           0.5 * (lambda - 1.0) * std::log(lambda - 1.0);
}

double entropy_by_continuation(double lambda, double h) {
    return -(renyi_trace_continued(lambda, 1.0 + h) - renyi_trace_continued(lambda, 1.0 - h)) / (2.0 * h);
}

double renyi_trace_mixed(const Matrix& c_a, int x) {
    if (x < 2) throw DomainError("renyi_trace_mixed: x must be >= 2");
    double out = 1.0;
    for (double nu : symplectic_spectrum(c_a).values) out *= renyi_trace_single(clamp_nu(nu), x);
    return out;
}

double renyi_trace_mixed(const CovarianceMatrix& c_a, int x) { return renyi_trace_mixed(c_a.matrix(), x); }

double entropy_mixed(const Matrix& c_a) {
    double s = 0.0;
    for (double nu : symplectic_spectrum(c_a).values) s += entropy_single(clamp_nu(nu));
    return s;
}

double entropy_mixed(const CovarianceMatrix& c_a) { return entropy_mixed(c_a.matrix()); }

double finite_n_purity(const CovarianceMatrix& chat_a, int n, int n_a) {
    if (n_a < 1 || n <= n_a) throw DomainError("finite_n_purity requires N > N_A >= 1");
    if (chat_a.n_modes() != n_a) throw DimensionError("finite_n_purity: Ĉ_A size does not match N_A");
    Eigen::LLT<Matrix> llt(chat_a.matrix());
    if (llt.info() != Eigen::Success) throw SpectralError("finite_n_purity: Ĉ_A not positive definite");
    const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    const double log_val = n_a * std::log(static_cast<double>(n)) + std::lgamma(n - n_a) - std::lgamma(n) -
                           0.5 * log_det;
    return std::exp(log_val);
}

EntropyReport entropy_report(const CovarianceMatrix& c, const ModeSubset& a, const std::vector<int>& xs) {
    const CovarianceMatrix ca = restrict(c, a);
    EntropyReport r{a, {}, 0.0, 0.0};
    std::set<int> orders(xs.begin(), xs.end());
    orders.insert(2);
    for (int x : orders) r.renyi_traces[x] = renyi_trace_mixed(ca, x);
    r.purity = r.renyi_traces.at(2);
    r.von_neumann = entropy_mixed(ca);
    return r;
}

nlohmann::json to_json(const EntropyReport& r) {
    nlohmann::json traces = nlohmann::json::object();
    for (const auto& [x, v] : r.renyi_traces) traces[std::to_string(x)] = v;
    return {{"subsystem", r.subsystem.selected()},
            {"parent_modes", r.subsystem.parent_modes()},
            {"renyi_traces", traces},
            {"purity", r.purity},
            {"von_neumann_nats", r.von_neumann}};
}

std::vector<PagePoint> page_slope(const ConstraintSpec& spec, const std::vector<int>& ordering) {
    const auto lam = spec.lambdas();
    if (ordering.size() != lam.size()) throw DimensionError("page_slope: ordering must list every mode once");
    std::vector<bool> seen(lam.size(), false);
    std::vector<PagePoint> out;
    double acc = 0.0;
    for (std::size_t k = 0; k < ordering.size(); ++k) {
        const int m = ordering[k];
        if (m < 0 || m >= static_cast<int>(lam.size()) || seen[static_cast<std::size_t>(m)])
            throw DomainError("page_slope: ordering is not a permutation");
        seen[static_cast<std::size_t>(m)] = true;
        acc += entropy_single(lam[static_cast<std::size_t>(m)]);
        out.push_back({static_cast<int>(k) + 1, acc});
    }
    return out;
}

std::vector<PagePoint> page_slope(const ConstraintSpec& spec) {
    return page_slope(spec, identity_ordering(spec.n_modes()));
}

std::string page_slope_csv(const std::vector<PagePoint>& curve) {
    std::ostringstream os;
    os << "n_a,cumulative_entropy_nats\n";
    char buf[64];
    for (const auto& p : curve) {
        std::snprintf(buf, sizeof buf, "%.17g", p.cumulative_entropy);
        os << p.n_a << ',' << buf << '\n';
    }
    return os.str();
}

}  // namespace gaussens
