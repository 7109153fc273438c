#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gaussens/constraints.hpp"
#include "gaussens/sampler.hpp"

namespace gaussens {

inline constexpr int kSpecSchemaVersion = 1;

struct HawkingPreset {
    double mass_in_planck_units = 0.0;
    double k = 1.0;
    WindowRange window_range;
    LambdaForm lambda_form = LambdaForm::Exponential;
};

struct SpecDocument {
    ConstraintSpec spec;
    std::optional<HawkingPreset> hawking;
};

// Schema: {"schema_version": 1, "scenario": "I"|"II", "windows": [[λ, ...], ...],
//          "hawking": {"mass_in_planck_units", "k", "window_range": [b, e], "lambda_form": "exp"|"coth"}}
// "windows" may be omitted when a hawking preset is given; it is then generated.
SpecDocument parse_spec(const nlohmann::json& j);
SpecDocument load_spec_file(const std::string& path);
nlohmann::json spec_to_json(const ConstraintSpec& spec, const std::optional<HawkingPreset>& preset = std::nullopt);

std::string to_string(LambdaForm f);
LambdaForm lambda_form_from_string(const std::string& s);

struct SampleCampaign {
    SamplerConfig config;
    std::vector<int> subsystem;
    std::vector<int> x_list;
};

// Sampler config: {"schema_version": 1, "spec": {...} | "spec_file": "path", "method", "epsilon_schedule",
//                  "step_size", "burn_in", "thinning", "seed", "n_samples", "n_chains", "subsystem", "x_list"}
SampleCampaign parse_campaign(const nlohmann::json& j, const std::string& base_dir);

nlohmann::json read_json_file(const std::string& path);

}  // namespace gaussens
