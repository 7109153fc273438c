#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaussens/constraints.hpp"
#include "gaussens/parallel.hpp"
#include "gaussens/symplectic.hpp"

namespace gaussens {

enum class SamplerMethod { AmbientSoft, ManifoldWalk };

std::string to_string(SamplerMethod m);
SamplerMethod sampler_method_from_string(const std::string& s);

struct SamplerConfig {
    explicit SamplerConfig(ConstraintSpec s) : spec(std::move(s)) {}

    ConstraintSpec spec;
    SamplerMethod method = SamplerMethod::ManifoldWalk;
    std::vector<double> epsilon_schedule;  // ambient only; strictly decreasing
    double step_size = 0.1;                // initial proposal scale (adapted during burn-in)
    int burn_in = 500;
    int thinning = 10;
    std::uint64_t seed = 1;
    int n_samples = 1000;  // per ε level for the ambient method; split across chains
    int n_chains = 1;
    int max_newton_iterations = 50;
    double target_acceptance = 0.3;
    Exec exec = Exec::Parallel;

    // Throws ConfigError / DomainError on invalid settings.
    void validate() const;
};

struct SampleBatch {
    int n_modes = 0;
    SamplerMethod method = SamplerMethod::ManifoldWalk;
    std::vector<double> epsilons;  // ambient ε schedule (empty for manifold)
    std::vector<Matrix> samples;   // pure covariance matrices C = SSᵀ
    std::vector<double> constraint_residuals;
    std::vector<double> symplectic_residuals;
    std::vector<double> purity_residuals;
    std::vector<double> weights;
    std::vector<int> epsilon_index;  // per sample; 0 for manifold
    std::vector<int> chain_index;

    std::string config_hash;
    std::uint64_t seed = 0;
    double acceptance_rate = 0.0;
    double autocorrelation = 0.0;  // lag-1 autocorrelation of a monitor entry, averaged over chains
    std::int64_t proposals = 0;
    std::int64_t discarded = 0;     // failed projections / reverse checks (manifold)
    double discard_fraction = 0.0;
    std::vector<double> final_step_sizes;  // per chain (and per ε level for ambient)
};

// A feasible pure state meeting the constraints to ~1e-12, built from two-mode squeezers pairing
// modes across windows and polished by Levenberg-Marquardt in the log chart.
Matrix feasible_start(const ConstraintSpec& spec, std::uint64_t seed);

SampleBatch sample_ambient(const SamplerConfig& config);
SampleBatch sample_manifold(const SamplerConfig& config);
SampleBatch sample(const SamplerConfig& config);

// SHA-256 hex of a canonical JSON serialization of the config.
std::string config_hash(const SamplerConfig& config);

// Symplectic polar part X (X^⋆X)^{-1/2} with X^⋆ = -ΩXᵀΩ; Newton-Schulz iteration.
// Throws ConvergenceError when X is too far from the group.
Matrix symplectic_cleanup(const Matrix& x);

}  // namespace gaussens
