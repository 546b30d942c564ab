#include "ideation/config_file.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ideation {

namespace {

constexpr std::array<std::string_view, 12> kConfigKeys = {
    "m",        "l_max",    "max_evolve_rounds", "stop_threshold", "evolve",         "critic",
    "cap_papers", "seed",   "model",             "base_url",       "parse_retries", "instructions_as_system",
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw Error(ErrorKind::Config, "config key \"" + key + "\": \"" + value + "\" is not a valid integer");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "on" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "off" || value == "no" || value == "0") return false;
    throw Error(ErrorKind::Config, "config key \"" + key + "\": \"" + value + "\" is not a boolean");
}

} // namespace

ConfigValues parse_config_text(std::string_view text) {
    ConfigValues values;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        const auto where = "config line " + std::to_string(line_no);
        if (eq == std::string::npos) throw Error(ErrorKind::Config, where + ": expected key = value");
        auto key = trim(std::string_view(body).substr(0, eq));
        auto value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) throw Error(ErrorKind::Config, where + ": empty key");
        if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
            throw Error(ErrorKind::Config, where + ": unknown key \"" + key + "\"");
        }
        if (!values.emplace(key, value).second) {
            throw Error(ErrorKind::Config, where + ": key \"" + key + "\" repeated");
        }
    }
    return values;
}

ConfigValues load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_config(const ConfigValues& values, WorkflowConfig& cfg) {
    for (const auto& [key, value] : values) {
        if (key == "m") cfg.m = parse_number<std::size_t>(key, value);
        else if (key == "l_max") cfg.l_max = parse_number<std::size_t>(key, value);
        else if (key == "max_evolve_rounds") cfg.max_evolve_rounds = parse_number<int>(key, value);
        else if (key == "stop_threshold") cfg.stop_threshold = parse_number<int>(key, value);
        else if (key == "evolve") cfg.evolve_enabled = parse_bool(key, value);
        else if (key == "critic") cfg.critic_enabled = parse_bool(key, value);
        else if (key == "cap_papers") cfg.cap_papers = parse_number<std::size_t>(key, value);
        else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
    }
}

void apply_config(const ConfigValues& values, GatewayOptions& gateway, RemoteConfig& remote) {
    for (const auto& [key, value] : values) {
        if (key == "model") {
            gateway.model = value;
            remote.model = value;
        } else if (key == "base_url") {
            remote.base_url = value;
        } else if (key == "parse_retries") {
            gateway.parse_retries = parse_number<int>(key, value);
        } else if (key == "instructions_as_system") {
            gateway.instructions_as_system = parse_bool(key, value);
        }
    }
}

} // namespace ideation
