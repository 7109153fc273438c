#pragma once

#include <string>
#include <vector>

#include "gaussens/constraints.hpp"
#include "gaussens/sampler.hpp"

namespace gaussens {

struct ScalarStats {
    double mean = 0.0;
    double std_error = 0.0;  // batch means
    double ess = 0.0;
    int n = 0;
};

// Weighted mean with batch-means standard error (⌊√n⌋ contiguous batches). A constant series has
// zero error and ESS = n.
ScalarStats batch_means(const std::vector<double>& values, const std::vector<double>& weights);

struct StatRow {
    std::string observable;  // "trace_rho_pow", "entropy_nats"; ambient rows carry an "@eps=…" suffix
    int x = 0;               // Rényi order; 1 for the von Neumann entropy
    double mean = 0.0;
    double std_error = 0.0;
    double ess = 0.0;
    int n = 0;
};

struct ObservableTable {
    std::vector<StatRow> rows;

    std::string to_csv() const;
    // Row for (observable, x); for ambient batches pass "trace_rho_pow@eps->0" etc.
    const StatRow& find(const std::string& observable, int x) const;
};

struct RichardsonFit {
    double value = 0.0;  // extrapolated ε → 0
    double std_error = 0.0;
    double slope = 0.0;  // coefficient of ε²
};

// Weighted least squares of mean_k = a + b ε_k²; unweighted if any error is zero.
RichardsonFit richardson_extrapolate(const std::vector<double>& eps, const std::vector<double>& mean,
                                     const std::vector<double>& std_error);

// Per-sample observable values, in batch order.
std::vector<double> per_sample_trace_power(const SampleBatch& batch, const ModeSubset& a, int x);
std::vector<double> per_sample_entropy(const SampleBatch& batch, const ModeSubset& a);

// Throws InsufficientSamples when any effective sample size is below 10.
ObservableTable estimate_observables(const SampleBatch& batch, const ModeSubset& a, const std::vector<int>& x_list);

// Statistics of a per-sample scalar series; ambient batches are extrapolated to ε → 0.
ScalarStats summarize(const SampleBatch& batch, const std::vector<double>& values);

struct CorrelationSummary {
    int i = 0, j = 0;
    double mean = 0.0, sd = 0.0, min = 0.0, median = 0.0, max = 0.0;
    int n = 0;
};

// Distribution of the Frobenius norm of the off-diagonal block C_ij.
CorrelationSummary mode_pair_correlation(const SampleBatch& batch, const ConstraintSpec& spec, int i, int j);

}  // namespace gaussens
