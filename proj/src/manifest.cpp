#include "gaussens/manifest.hpp"

#include <openssl/sha.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gaussens/errors.hpp"

namespace gaussens {

namespace {

std::string to_hex(const unsigned char* d, std::size_t n) {
    static const char* digits = "0123456789abcdef";
    std::string out(2 * n, '0');
    for (std::size_t k = 0; k < n; ++k) {
        out[2 * k] = digits[d[k] >> 4];
        out[2 * k + 1] = digits[d[k] & 0xf];
    }
    return out;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
    unsigned char md[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), md);
    return to_hex(md, SHA256_DIGEST_LENGTH);
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

std::string timestamp_now() {
    std::time_t t;
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
    else
        t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json RunManifest::to_json(const std::string& dir) const {
    nlohmann::json files = nlohmann::json::array();
    for (const auto& f : outputs) {
        const auto p = std::filesystem::path(dir) / f;
        files.push_back({{"path", f}, {"sha256", std::filesystem::exists(p) ? sha256_file(p.string()) : ""}});
    }
    return {{"command", command},  {"config_path", config_path}, {"config_sha256", config_hash},
            {"seed", seed},        {"tool_version", tool_version}, {"start_time", start_time},
            {"end_time", end_time}, {"outputs", files}};
}

}  // namespace gaussens
