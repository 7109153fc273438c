#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gaussens/constraints.hpp"
#include "gaussens/symplectic.hpp"

namespace gaussens {

// Symplectic eigenvalues closer than this to 1 are treated as exactly 1.
inline constexpr double kPureClamp = 1e-8;

// Tr ρ^x = 2^x / ((λ+1)^x - (λ-1)^x) for a thermal mode; x may be any real > 0 (continuation).
double renyi_trace_continued(double lambda, double x);
double renyi_trace_single(double lambda, int x);
double entropy_single(double lambda);

double renyi_trace_mixed(const Matrix& c_a, int x);
double renyi_trace_mixed(const CovarianceMatrix& c_a, int x);
double entropy_mixed(const Matrix& c_a);
double entropy_mixed(const CovarianceMatrix& c_a);

// 2^{N_A} (N-N_A-1)!/(N-1)! det((2/N) Ĉ_A)^{-1/2}
double finite_n_purity(const CovarianceMatrix& chat_a, int n, int n_a);

// -d/dx Tr ρ^x at x = 1 by a central difference of the continued closed form.
double entropy_by_continuation(double lambda, double h = 1e-4);

struct EntropyReport {
    ModeSubset subsystem;
    std::map<int, double> renyi_traces;
    double von_neumann = 0.0;
    double purity = 0.0;
};

EntropyReport entropy_report(const CovarianceMatrix& c, const ModeSubset& a, const std::vector<int>& xs);
nlohmann::json to_json(const EntropyReport& r);

struct PagePoint {
    int n_a = 0;
    double cumulative_entropy = 0.0;
};

// Initial-slope segment of the Page curve: cumulative Σ entropy_single(λ_i) along `ordering`.
std::vector<PagePoint> page_slope(const ConstraintSpec& spec, const std::vector<int>& ordering);
std::vector<PagePoint> page_slope(const ConstraintSpec& spec);
std::string page_slope_csv(const std::vector<PagePoint>& curve);

}  // namespace gaussens
