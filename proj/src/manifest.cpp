#include "ideation/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include "ideation/error.hpp"

namespace ideation {

nlohmann::json to_json(const RunManifest& m) {
    return {
        {"format", "ideation-manifest"},
        {"version", 1},
        {"command", m.command},
        {"config", m.config},
        {"inputs", m.inputs},
        {"provider", m.provider},
        {"outputs", m.outputs},
        {"started_at", m.started_at},
        {"elapsed_seconds", m.elapsed_seconds},
    };
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write manifest " + path.string());
    out << to_json(manifest).dump(2) << '\n';
    if (!out) throw Error(ErrorKind::Io, "failed writing manifest " + path.string());
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace ideation
