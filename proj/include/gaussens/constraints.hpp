#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gaussens/symplectic.hpp"

namespace gaussens {

enum class Scenario { I, II };

// Marginal constraints grouped into correlation-free windows. Scenario I iff every window has
// exactly one mode.
class ConstraintSpec {
public:
    explicit ConstraintSpec(std::vector<std::vector<double>> windows);
    static ConstraintSpec scenario_one(const std::vector<double>& lambdas);

    Scenario scenario() const;
    int n_modes() const { return n_modes_; }
    int n_windows() const { return static_cast<int>(windows_.size()); }
    const std::vector<std::vector<double>>& windows() const { return windows_; }
    std::vector<double> lambdas() const;
    // First mode index of every window.
    const std::vector<int>& window_offsets() const { return offsets_; }
    int window_of(int mode) const;
    double min_lambda() const;

private:
    std::vector<std::vector<double>> windows_;
    std::vector<int> offsets_;
    std::vector<int> mode_window_;
    int n_modes_ = 0;
};

CovarianceMatrix build_constraint_matrix(const ConstraintSpec& spec);

// Keeps the window-diagonal blocks, zeroes everything else.
Matrix hat_projection(const Matrix& c, const ConstraintSpec& spec);
CovarianceMatrix hat_projection(const CovarianceMatrix& c, const ConstraintSpec& spec);

double constraint_residual(const Matrix& c, const Matrix& chat, const ConstraintSpec& spec);
double constraint_residual(const CovarianceMatrix& c, const CovarianceMatrix& chat, const ConstraintSpec& spec);

// Largest entry of the intra-window off-diagonal blocks (the Scenario II zero pattern).
double intra_window_offdiag(const Matrix& c, const ConstraintSpec& spec);

enum class LambdaForm { Exponential, Coth };

struct HawkingWindow {
    double mass = 0.0;           // M(t) in Planck masses
    double temperature = 0.0;    // T_t = 1 / M(t) in Planck units (k_B = ħ = c = G = 1)
    double frequency_spacing = 0.0;  // Δω_t = 1 / M(t)^2
    double n_modes = 0.0;        // round(M(t)); may exceed any integer type
};

// Evaporating black hole discretized into time windows of unit duration in units where the
// mass decreases by k per window: M(t) = M0 - k t.
class HawkingModel {
public:
    HawkingModel(double initial_mass, double k);

    double initial_mass() const { return m0_; }
    double k() const { return k_; }
    // Number of windows with M(t) > 0.
    double window_count() const;
    HawkingWindow window(std::int64_t t) const;

private:
    double m0_;
    double k_;
};

double hawking_mode_count(const HawkingModel& model);

struct WindowRange {
    std::int64_t begin = 0;  // inclusive
    std::int64_t end = 0;    // exclusive
};

// Total number of modes the range would materialize (without building it).
double hawking_range_modes(const HawkingModel& model, WindowRange range);
// Throws ConfigError when the range holds more than mode_cap modes.
ConstraintSpec hawking_constraints(const HawkingModel& model, WindowRange range,
                                   LambdaForm form = LambdaForm::Exponential,
                                   double mode_cap = 100000);
double hawking_lambda(const HawkingWindow& w, std::int64_t j, LambdaForm form);

// Cumulative entropies are in analytic.hpp; this is the mode ordering used for the toy presets.
std::vector<int> identity_ordering(int n);

}  // namespace gaussens
