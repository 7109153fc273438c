#include "gaussens/constraints.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "gaussens/errors.hpp"

namespace gaussens {

ConstraintSpec::ConstraintSpec(std::vector<std::vector<double>> windows) : windows_(std::move(windows)) {
    if (windows_.empty()) throw ConfigError("constraint spec has no windows");
    for (std::size_t w = 0; w < windows_.size(); ++w) {
        if (windows_[w].empty()) throw ConfigError("window " + std::to_string(w) + " is empty");
        offsets_.push_back(n_modes_);
        for (double lam : windows_[w]) {
            if (!std::isfinite(lam) || lam < 1.0)
                throw DomainError("lambda must be >= 1 (got " + std::to_string(lam) + ")");
            mode_window_.push_back(static_cast<int>(w));
            ++n_modes_;
        }
    }
}

ConstraintSpec ConstraintSpec::scenario_one(const std::vector<double>& lambdas) {
    std::vector<std::vector<double>> w;
    for (double l : lambdas) w.push_back({l});
    return ConstraintSpec(std::move(w));
}

Scenario ConstraintSpec::scenario() const {
    for (const auto& w : windows_)
        if (w.size() != 1) return Scenario::II;
    return Scenario::I;
}

std::vector<double> ConstraintSpec::lambdas() const {
    std::vector<double> out;
    for (const auto& w : windows_) out.insert(out.end(), w.begin(), w.end());
    return out;
}

int ConstraintSpec::window_of(int mode) const {
    if (mode < 0 || mode >= n_modes_) throw DomainError("mode index out of range");
    return mode_window_[static_cast<std::size_t>(mode)];
}

double ConstraintSpec::min_lambda() const {
    const auto l = lambdas();
    return *std::min_element(l.begin(), l.end());
}

CovarianceMatrix build_constraint_matrix(const ConstraintSpec& spec) {
    const auto l = spec.lambdas();
    Vector d(2 * spec.n_modes());
    for (int k = 0; k < spec.n_modes(); ++k) d(2 * k) = d(2 * k + 1) = l[static_cast<std::size_t>(k)];
    return CovarianceMatrix(Matrix(d.asDiagonal()));
}

Matrix hat_projection(const Matrix& c, const ConstraintSpec& spec) {
    if (c.rows() != 2 * spec.n_modes() || c.cols() != c.rows())
        throw DimensionError("hat_projection: matrix size does not match spec");
    Matrix out = Matrix::Zero(c.rows(), c.cols());
    for (int w = 0; w < spec.n_windows(); ++w) {
        const int o = 2 * spec.window_offsets()[static_cast<std::size_t>(w)];
        const int n = 2 * static_cast<int>(spec.windows()[static_cast<std::size_t>(w)].size());
        out.block(o, o, n, n) = c.block(o, o, n, n);
    }
    return out;
}

CovarianceMatrix hat_projection(const CovarianceMatrix& c, const ConstraintSpec& spec) {
    return CovarianceMatrix(hat_projection(c.matrix(), spec));
}

double constraint_residual(const Matrix& c, const Matrix& chat, const ConstraintSpec& spec) {
    if (chat.rows() != c.rows() || chat.cols() != c.cols())
        throw DimensionError("constraint_residual: size mismatch");
    return max_abs(hat_projection(c, spec) - chat);
}

double constraint_residual(const CovarianceMatrix& c, const CovarianceMatrix& chat, const ConstraintSpec& spec) {
    return constraint_residual(c.matrix(), chat.matrix(), spec);
}

double intra_window_offdiag(const Matrix& c, const ConstraintSpec& spec) {
    double m = 0.0;
    for (int i = 0; i < spec.n_modes(); ++i)
        for (int j = 0; j < spec.n_modes(); ++j)
            if (i != j && spec.window_of(i) == spec.window_of(j))
                m = std::max(m, c.block(2 * i, 2 * j, 2, 2).cwiseAbs().maxCoeff());
    return m;
}

HawkingModel::HawkingModel(double initial_mass, double k) : m0_(initial_mass), k_(k) {
    if (!(initial_mass > 0.0) || !std::isfinite(initial_mass))
        throw DomainError("HawkingModel: initial mass must be positive");
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("HawkingModel: k must be positive");
}

double HawkingModel::window_count() const { return std::ceil(m0_ / k_); }

HawkingWindow HawkingModel::window(std::int64_t t) const {
    if (t < 0 || static_cast<double>(t) >= window_count())
        throw DomainError("HawkingModel: window index outside the lifetime");
    HawkingWindow w;
    w.mass = m0_ - k_ * static_cast<double>(t);
    w.temperature = 1.0 / w.mass;
    w.frequency_spacing = 1.0 / (w.mass * w.mass);
    w.n_modes = std::max(1.0, std::round(w.mass));
    return w;
}

double hawking_mode_count(const HawkingModel& model) {
    return model.initial_mass() * model.initial_mass() / (2.0 * model.k());
}

double hawking_lambda(const HawkingWindow& w, std::int64_t j, LambdaForm form) {
    const double beta_omega = static_cast<double>(j) * w.frequency_spacing / w.temperature;
    if (form == LambdaForm::Exponential) return std::exp(beta_omega);
    return 1.0 / std::tanh(0.5 * beta_omega);
}

namespace {

void check_range(const HawkingModel& model, WindowRange range) {
    if (range.end <= range.begin) throw ConfigError("hawking window range is empty");
    if (range.begin < 0 || static_cast<double>(range.end) > model.window_count())
        throw DomainError("hawking window range exceeds the model lifetime");
}

}  // namespace

double hawking_range_modes(const HawkingModel& model, WindowRange range) {
    check_range(model, range);
    const double n = static_cast<double>(range.end - range.begin);
    if (n > 1e6) {
        // Arithmetic series of masses; per-window rounding is immaterial at this size.
        const double t_sum = 0.5 * n * static_cast<double>(range.begin + range.end - 1);
        return n * model.initial_mass() - model.k() * t_sum;
    }
    double total = 0.0;
    for (std::int64_t t = range.begin; t < range.end; ++t) total += model.window(t).n_modes;
    return total;
}

ConstraintSpec hawking_constraints(const HawkingModel& model, WindowRange range, LambdaForm form,
                                   double mode_cap) {
    const double total = hawking_range_modes(model, range);
    if (total > mode_cap)
        throw ConfigError("hawking range holds " + std::to_string(total) + " modes, above the cap of " +
                          std::to_string(mode_cap));
    std::vector<std::vector<double>> windows;
    for (std::int64_t t = range.begin; t < range.end; ++t) {
        const HawkingWindow w = model.window(t);
        std::vector<double> lam;
        for (std::int64_t j = 1; static_cast<double>(j) <= w.n_modes; ++j) lam.push_back(hawking_lambda(w, j, form));
        windows.push_back(std::move(lam));
    }
    return ConstraintSpec(std::move(windows));
}

std::vector<int> identity_ordering(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace gaussens
