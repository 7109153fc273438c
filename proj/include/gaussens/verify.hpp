#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "gaussens/parallel.hpp"

namespace gaussens {

// One checked identity. Upper bounds pass when residual <= tolerance; the phase-ablation negative
// control is a lower bound (it passes when the disagreement exceeds the tolerance).
struct IdentityCheck {
    std::string suite;
    std::string tag;
    std::string description;
    double residual = 0.0;
    double tolerance = 0.0;
    bool lower_bound = false;
    bool pass = false;
};

struct VerifyReport {
    std::vector<IdentityCheck> checks;
    bool all_pass() const;
    nlohmann::json to_json() const;
};

struct VerifyOptions {
    std::string suite = "all";  // all | replica | saddle | fock | analytic
    std::optional<double> tolerance;          // overrides every tolerance
    std::map<std::string, double> overrides;  // per-tag tolerances
    Exec exec = Exec::Parallel;
};

const std::vector<std::string>& verify_suites();
// Default tolerance of every tag.
const std::map<std::string, double>& default_verify_tolerances();
// Throws ConfigError for an unknown suite or tag.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace gaussens
