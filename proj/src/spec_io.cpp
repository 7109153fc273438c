#include "gaussens/spec_io.hpp"

#include <filesystem>
#include <fstream>

#include "gaussens/errors.hpp"

namespace gaussens {

std::string to_string(LambdaForm f) { return f == LambdaForm::Exponential ? "exp" : "coth"; }

LambdaForm lambda_form_from_string(const std::string& s) {
    if (s == "exp") return LambdaForm::Exponential;
    if (s == "coth") return LambdaForm::Coth;
    throw ConfigError("lambda_form must be 'exp' or 'coth', got '" + s + "'");
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

namespace {

void check_schema(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    const int v = j.value("schema_version", 0);
    if (v != kSpecSchemaVersion)
        throw ConfigError("unsupported schema_version " + std::to_string(v) + " (expected " +
                          std::to_string(kSpecSchemaVersion) + ")");
}

}  // namespace

SpecDocument parse_spec(const nlohmann::json& j) {
    check_schema(j);
    try {
        std::optional<HawkingPreset> preset;
        if (j.contains("hawking")) {
            const auto& h = j.at("hawking");
            HawkingPreset p;
            p.mass_in_planck_units = h.at("mass_in_planck_units").get<double>();
            p.k = h.value("k", 1.0);
            const auto range = h.at("window_range").get<std::vector<std::int64_t>>();
            if (range.size() != 2) throw ConfigError("hawking.window_range must be [begin, end]");
            p.window_range = {range[0], range[1]};
            p.lambda_form = lambda_form_from_string(h.value("lambda_form", std::string("exp")));
            preset = p;
        }
        std::optional<ConstraintSpec> spec;
        if (j.contains("windows")) {
            spec = ConstraintSpec(j.at("windows").get<std::vector<std::vector<double>>>());
        } else if (preset) {
            const HawkingModel model(preset->mass_in_planck_units, preset->k);
            spec = hawking_constraints(model, preset->window_range, preset->lambda_form);
        } else {
            throw ConfigError("spec needs 'windows' or a 'hawking' preset");
        }
        if (j.contains("scenario")) {
            const std::string sc = j.at("scenario").get<std::string>();
            if (sc != "I" && sc != "II") throw ConfigError("scenario must be 'I' or 'II'");
            if (sc == "I" && spec->scenario() != Scenario::I)
                throw ConfigError("scenario I requires single-mode windows");
        }
        return {*spec, preset};
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid spec: ") + e.what());
    }
}

SpecDocument load_spec_file(const std::string& path) { return parse_spec(read_json_file(path)); }

nlohmann::json spec_to_json(const ConstraintSpec& spec, const std::optional<HawkingPreset>& preset) {
    nlohmann::json j = {{"schema_version", kSpecSchemaVersion},
                        {"scenario", spec.scenario() == Scenario::I ? "I" : "II"},
                        {"windows", spec.windows()}};
    if (preset)
        j["hawking"] = {{"mass_in_planck_units", preset->mass_in_planck_units},
                        {"k", preset->k},
                        {"window_range", {preset->window_range.begin, preset->window_range.end}},
                        {"lambda_form", to_string(preset->lambda_form)}};
    return j;
}

SampleCampaign parse_campaign(const nlohmann::json& j, const std::string& base_dir) {
    check_schema(j);
    try {
        std::optional<ConstraintSpec> spec;
        if (j.contains("spec")) {
            spec = parse_spec(j.at("spec")).spec;
        } else if (j.contains("spec_file")) {
            std::filesystem::path p = j.at("spec_file").get<std::string>();
            if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
            spec = load_spec_file(p.string()).spec;
        } else {
            throw ConfigError("sampler config needs 'spec' or 'spec_file'");
        }
        SampleCampaign c{SamplerConfig(*spec), {}, {}};
        SamplerConfig& s = c.config;
        s.method = sampler_method_from_string(j.value("method", std::string("manifold-walk")));
        s.epsilon_schedule = j.value("epsilon_schedule", std::vector<double>{});
        s.step_size = j.value("step_size", s.step_size);
        s.burn_in = j.value("burn_in", s.burn_in);
        s.thinning = j.value("thinning", s.thinning);
        s.seed = j.value("seed", s.seed);
        s.n_samples = j.value("n_samples", s.n_samples);
        s.n_chains = j.value("n_chains", s.n_chains);
        s.max_newton_iterations = j.value("max_newton_iterations", s.max_newton_iterations);
        s.target_acceptance = j.value("target_acceptance", s.target_acceptance);
        c.subsystem = j.value("subsystem", std::vector<int>{0});
        c.x_list = j.value("x_list", std::vector<int>{2, 3});
        s.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid sampler config: ") + e.what());
    }
}

}  // namespace gaussens
