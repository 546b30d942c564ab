#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

namespace ideation {

/// Written next to the outputs of every command that produces files.
struct RunManifest {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::map<std::string, std::string> inputs;   // path -> sha256
    std::string provider;                        // model name or script hash; empty if unused
    std::map<std::string, std::string> outputs;  // role -> path
    std::string started_at;                      // UTC, ISO 8601
    double elapsed_seconds = 0.0;
};

nlohmann::json to_json(const RunManifest& manifest);
void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

std::string utc_timestamp();

} // namespace ideation
