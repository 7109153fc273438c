#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "gaussens/batch_io.hpp"
#include "gaussens/errors.hpp"
#include "gaussens/manifest.hpp"
#include "gaussens/spec_io.hpp"
#include "gaussens/symplectic.hpp"

using namespace gaussens;
using nlohmann::json;

TEST(SpecIo, ParsesWindowsAndRoundtrips) {
    const json j = json::parse(R"({"schema_version": 1, "scenario": "II", "windows": [[2.0, 2.5], [3.0]]})");
    const SpecDocument d = parse_spec(j);
    EXPECT_EQ(d.spec.n_modes(), 3);
    EXPECT_EQ(d.spec.scenario(), Scenario::II);
    EXPECT_FALSE(d.hawking.has_value());
    EXPECT_EQ(parse_spec(spec_to_json(d.spec)).spec.windows(), d.spec.windows());
}

TEST(SpecIo, HawkingPresetGeneratesWindows) {
    const json j = json::parse(
        R"({"schema_version": 1, "hawking": {"mass_in_planck_units": 3, "k": 1, "window_range": [0, 2], "lambda_form": "coth"}})");
    const SpecDocument d = parse_spec(j);
    ASSERT_TRUE(d.hawking.has_value());
    EXPECT_EQ(d.hawking->lambda_form, LambdaForm::Coth);
    EXPECT_EQ(d.spec.n_modes(), 5);
    const json back = spec_to_json(d.spec, d.hawking);
    EXPECT_EQ(back.at("hawking").at("lambda_form"), "coth");
}

TEST(SpecIo, RejectsMalformedDocuments) {
    EXPECT_THROW(parse_spec(json::parse(R"({"windows": [[2.0]]})")), ConfigError);
    EXPECT_THROW(parse_spec(json::parse(R"({"schema_version": 2, "windows": [[2.0]]})")), ConfigError);
    EXPECT_THROW(parse_spec(json::parse(R"({"schema_version": 1})")), ConfigError);
    EXPECT_THROW(parse_spec(json::parse(R"({"schema_version": 1, "scenario": "I", "windows": [[2, 2]]})")),
                 ConfigError);
    EXPECT_THROW(parse_spec(json::parse(R"({"schema_version": 1, "windows": "abc"})")), ConfigError);
    EXPECT_THROW(lambda_form_from_string("tanh"), ConfigError);
    EXPECT_THROW(read_json_file("/nonexistent/spec.json"), ConfigError);
}

TEST(CampaignIo, ReadsSamplerSettingsAndSpecFile) {
    const auto dir = std::filesystem::temp_directory_path() / "gaussens_io_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "spec.json") << R"({"schema_version": 1, "windows": [[2.0], [2.5], [3.0]]})";
    const json j = json::parse(R"({"schema_version": 1, "spec_file": "spec.json", "method": "ambient-soft",
        "epsilon_schedule": [0.1, 0.05], "seed": 42, "n_samples": 30, "subsystem": [0, 2], "x_list": [2]})");
    const SampleCampaign c = parse_campaign(j, dir.string());
    EXPECT_EQ(c.config.spec.n_modes(), 3);
    EXPECT_EQ(c.config.method, SamplerMethod::AmbientSoft);
    EXPECT_EQ(c.config.seed, 42u);
    EXPECT_EQ(c.subsystem, (std::vector<int>{0, 2}));
    EXPECT_EQ(c.x_list, (std::vector<int>{2}));
    json bad = j;
    bad["epsilon_schedule"] = {0.05, 0.1};
    EXPECT_THROW(parse_campaign(bad, dir.string()), ConfigError);
    bad.erase("spec_file");
    EXPECT_THROW(parse_campaign(bad, dir.string()), ConfigError);
    std::filesystem::remove_all(dir);
}

TEST(BatchCsv, RoundtripIsExact) {
    SampleBatch b;
    b.n_modes = 2;
    for (int k = 0; k < 3; ++k) {
        b.samples.push_back(covariance_from_symplectic(random_symplectic(2, 0.5, 100 + k)).matrix());
        b.constraint_residuals.push_back(1e-13 * k);
        b.symplectic_residuals.push_back(2e-15);
        b.purity_residuals.push_back(3e-14);
        b.weights.push_back(1.0);
        b.epsilon_index.push_back(k % 2);
        b.chain_index.push_back(k);
    }
    const std::string csv = batch_csv(b);
    EXPECT_EQ(csv.substr(0, csv.find(',')), "sample");
    const SampleBatch r = read_batch_csv(csv, 2);
    ASSERT_EQ(r.samples.size(), 3u);
    for (int k = 0; k < 3; ++k) {
        EXPECT_EQ(r.samples[k], b.samples[k]);
        EXPECT_EQ(r.constraint_residuals[k], b.constraint_residuals[k]);
        EXPECT_EQ(r.epsilon_index[k], b.epsilon_index[k]);
        EXPECT_EQ(r.chain_index[k], b.chain_index[k]);
    }
    EXPECT_EQ(batch_csv(r), csv);
    EXPECT_THROW(read_batch_csv("", 2), ConfigError);
}

TEST(BatchMetadata, CarriesHashAndSeed) {
    SampleBatch b;
    b.config_hash = "abc";
    b.seed = 7;
    const json m = batch_metadata(b);
    EXPECT_EQ(m.at("config_sha256"), "abc");
    EXPECT_EQ(m.at("seed"), 7);
}

TEST(Manifest, Sha256KnownVectors) {
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Manifest, TimestampHonoursSourceDateEpoch) {
    ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
    EXPECT_EQ(timestamp_now(), "2023-11-14T22:13:20Z");
    ::unsetenv("SOURCE_DATE_EPOCH");
    EXPECT_EQ(timestamp_now().size(), 20u);
}

TEST(Manifest, ListsOutputsWithDigests) {
    const auto dir = std::filesystem::temp_directory_path() / "gaussens_manifest_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "out.txt") << "abc";
    RunManifest m;
    m.command = "verify";
    m.outputs = {"out.txt"};
    const json j = m.to_json(dir.string());
    EXPECT_EQ(j.dump().find("ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad") != std::string::npos,
              true);
    std::filesystem::remove_all(dir);
}
