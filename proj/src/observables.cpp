#include "gaussens/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "gaussens/analytic.hpp"
#include "gaussens/errors.hpp"

namespace gaussens {

ScalarStats batch_means(const std::vector<double>& values, const std::vector<double>& weights) {
    if (values.empty()) throw InsufficientSamples("batch_means: no samples");
    if (weights.size() != values.size()) throw DimensionError("batch_means: weight count mismatch");
    ScalarStats s;
    s.n = static_cast<int>(values.size());
    double wsum = 0.0, acc = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        wsum += weights[k];
        acc += weights[k] * values[k];
    }
    s.mean = acc / wsum;
    double var = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) var += weights[k] * (values[k] - s.mean) * (values[k] - s.mean);
    var /= wsum;
    const double scale = std::max(1.0, std::abs(s.mean));
    if (var <= 1e-30 * scale * scale || s.n < 4) {
        s.std_error = s.n < 4 ? std::sqrt(var / std::max(1, s.n - 1)) : 0.0;
        s.ess = s.n;
        return s;
    }
    const int nb = std::max(2, static_cast<int>(std::floor(std::sqrt(static_cast<double>(s.n)))));
    const int bs = s.n / nb;
    std::vector<double> bm;
    for (int b = 0; b < nb; ++b) {
        double bw = 0.0, bv = 0.0;
        for (int k = b * bs; k < (b + 1) * bs; ++k) {
            bw += weights[static_cast<std::size_t>(k)];
            bv += weights[static_cast<std::size_t>(k)] * values[static_cast<std::size_t>(k)];
        }
        bm.push_back(bv / bw);
    }
    double m = 0.0;
    for (double v : bm) m += v;
    m /= nb;
    double bvar = 0.0;
    for (double v : bm) bvar += (v - m) * (v - m);
    bvar /= (nb - 1);
    // Batch means underestimate with strongly correlated data; never report less than the iid error.
    const double se2 = std::max(bvar / nb, var / s.n);
    s.std_error = std::sqrt(se2);
    s.ess = std::clamp(var / se2, 1.0, static_cast<double>(s.n));
    return s;
}

std::string ObservableTable::to_csv() const {
    std::ostringstream os;
    os << "observable,x,mean,stderr,ess,n\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.6f,%d", r.mean, r.std_error, r.ess, r.n);
        os << r.observable << ',' << r.x << ',' << buf << '\n';
    }
    return os.str();
}

const StatRow& ObservableTable::find(const std::string& observable, int x) const {
    for (const auto& r : rows)
        if (r.observable == observable && r.x == x) return r;
    throw Error("no statistics row for " + observable + " x=" + std::to_string(x));
}

RichardsonFit richardson_extrapolate(const std::vector<double>& eps, const std::vector<double>& mean,
                                     const std::vector<double>& std_error) {
    const std::size_t k = eps.size();
    if (k == 0 || mean.size() != k || std_error.size() != k) throw DimensionError("richardson: size mismatch");
    if (k == 1) return {mean[0], std_error[0], 0.0};
    bool weighted = true;
    for (double e : std_error)
        if (!(e > 0.0)) weighted = false;
    Matrix a(static_cast<Eigen::Index>(k), 2);
    Vector y(static_cast<Eigen::Index>(k));
    Vector w(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
        a(static_cast<Eigen::Index>(i), 0) = 1.0;
        a(static_cast<Eigen::Index>(i), 1) = eps[i] * eps[i];
        y(static_cast<Eigen::Index>(i)) = mean[i];
        w(static_cast<Eigen::Index>(i)) = weighted ? 1.0 / (std_error[i] * std_error[i]) : 1.0;
    }
    const Matrix ata = a.transpose() * w.asDiagonal() * a;
    const Matrix cov = ata.inverse();
    const Vector coef = cov * (a.transpose() * w.asDiagonal() * y);
    RichardsonFit f;
    f.value = coef(0);
    f.slope = coef(1);
    if (weighted) {
        f.std_error = std::sqrt(cov(0, 0));
    } else {
        // Propagate the (zero or missing) errors through the unweighted solution.
        const Matrix lin = cov * a.transpose();
        double v = 0.0;
        for (std::size_t i = 0; i < k; ++i) v += std::pow(lin(0, static_cast<Eigen::Index>(i)) * std_error[i], 2);
        f.std_error = std::sqrt(v);
    }
    return f;
}

std::vector<double> per_sample_trace_power(const SampleBatch& batch, const ModeSubset& a, int x) {
    std::vector<double> v;
    v.reserve(batch.samples.size());
    for (const auto& c : batch.samples) v.push_back(renyi_trace_mixed(restrict(c, a), x));
    return v;
}

std::vector<double> per_sample_entropy(const SampleBatch& batch, const ModeSubset& a) {
    std::vector<double> v;
    v.reserve(batch.samples.size());
    for (const auto& c : batch.samples) v.push_back(entropy_mixed(restrict(c, a)));
    return v;
}

namespace {

std::string eps_label(double eps) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "@eps=%.6g", eps);
    return buf;
}

std::vector<ScalarStats> per_level(const SampleBatch& batch, const std::vector<double>& values) {
    const int levels = std::max<int>(1, static_cast<int>(batch.epsilons.size()));
    std::vector<ScalarStats> out;
    for (int l = 0; l < levels; ++l) {
        std::vector<double> v, w;
        for (std::size_t k = 0; k < values.size(); ++k)
            if (batch.epsilon_index[k] == l) {
                v.push_back(values[k]);
                w.push_back(batch.weights[k]);
            }
        out.push_back(batch_means(v, w));
    }
    return out;
}

void require_ess(const ScalarStats& s, const std::string& what) {
    if (s.ess < 10.0)
        throw InsufficientSamples("effective sample size " + std::to_string(s.ess) + " < 10 for " + what +
                                  " (n = " + std::to_string(s.n) + ", mean = " + std::to_string(s.mean) +
                                  ", stderr = " + std::to_string(s.std_error) + ")");
}

void add_rows(ObservableTable& t, const SampleBatch& batch, const std::string& name, int x,
              const std::vector<double>& values) {
    const auto stats = per_level(batch, values);
    if (batch.method == SamplerMethod::ManifoldWalk || batch.epsilons.empty()) {
        require_ess(stats[0], name);
        t.rows.push_back({name, x, stats[0].mean, stats[0].std_error, stats[0].ess, stats[0].n});
        return;
    }
    std::vector<double> m, e;
    double ess = 0.0;
    int n = 0;
    for (std::size_t l = 0; l < stats.size(); ++l) {
        require_ess(stats[l], name + eps_label(batch.epsilons[l]));
        t.rows.push_back({name + eps_label(batch.epsilons[l]), x, stats[l].mean, stats[l].std_error, stats[l].ess,
                          stats[l].n});
        m.push_back(stats[l].mean);
        e.push_back(stats[l].std_error);
        ess += stats[l].ess;
        n += stats[l].n;
    }
    const RichardsonFit f = richardson_extrapolate(batch.epsilons, m, e);
    t.rows.push_back({name + "@eps->0", x, f.value, f.std_error, ess, n});
}

}  // namespace

ScalarStats summarize(const SampleBatch& batch, const std::vector<double>& values) {
    const auto stats = per_level(batch, values);
    if (batch.epsilons.empty()) return stats[0];
    std::vector<double> m, e;
    ScalarStats out;
    for (const auto& s : stats) {
        m.push_back(s.mean);
        e.push_back(s.std_error);
        out.ess += s.ess;
        out.n += s.n;
    }
    const RichardsonFit f = richardson_extrapolate(batch.epsilons, m, e);
    out.mean = f.value;
    out.std_error = f.std_error;
    return out;
}

ObservableTable estimate_observables(const SampleBatch& batch, const ModeSubset& a, const std::vector<int>& x_list) {
    if (batch.samples.empty()) throw InsufficientSamples("estimate_observables: empty batch");
    if (a.parent_modes() != batch.n_modes) throw DimensionError("subsystem does not match batch mode count");
    std::set<int> xs(x_list.begin(), x_list.end());
    xs.insert(2);
    ObservableTable t;
    for (int x : xs) add_rows(t, batch, "trace_rho_pow", x, per_sample_trace_power(batch, a, x));
    add_rows(t, batch, "entropy_nats", 1, per_sample_entropy(batch, a));
    return t;
}

CorrelationSummary mode_pair_correlation(const SampleBatch& batch, const ConstraintSpec& spec, int i, int j) {
    if (i == j) throw DomainError("mode_pair_correlation: modes must differ");
    if (i < 0 || j < 0 || i >= batch.n_modes || j >= batch.n_modes) throw DomainError("mode index out of range");
    if (spec.n_modes() != batch.n_modes) throw DimensionError("spec does not match batch");
    if (spec.window_of(i) == spec.window_of(j))
        throw DomainError("mode_pair_correlation: modes share a window (correlation constrained to zero)");
    if (batch.samples.empty()) throw InsufficientSamples("mode_pair_correlation: empty batch");
    std::vector<double> v;
    for (const auto& c : batch.samples) v.push_back(c.block(2 * i, 2 * j, 2, 2).norm());
    CorrelationSummary s;
    s.i = i;
    s.j = j;
    s.n = static_cast<int>(v.size());
    for (double x : v) s.mean += x;
    s.mean /= s.n;
    for (double x : v) s.sd += (x - s.mean) * (x - s.mean);
    s.sd = s.n > 1 ? std::sqrt(s.sd / (s.n - 1)) : 0.0;
    std::sort(v.begin(), v.end());
    s.min = v.front();
    s.max = v.back();
    s.median = (s.n % 2) ? v[static_cast<std::size_t>(s.n / 2)]
                         : 0.5 * (v[static_cast<std::size_t>(s.n / 2 - 1)] + v[static_cast<std::size_t>(s.n / 2)]);
    return s;
}

}  // namespace gaussens
