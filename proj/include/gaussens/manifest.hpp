#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace gaussens {

std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::string& path);

inline constexpr const char* kToolVersion = "0.1.0";

// Timestamps come from SOURCE_DATE_EPOCH when set, so reruns can be byte-identical.
struct RunManifest {
    std::string command;
    std::string config_path;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    std::string start_time;
    std::string end_time;
    std::vector<std::string> outputs;  // file names relative to the manifest directory

    nlohmann::json to_json(const std::string& dir) const;
};

std::string timestamp_now();

}  // namespace gaussens
