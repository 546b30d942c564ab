#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "ideation/gateway.hpp"
#include "ideation/llm.hpp"
#include "ideation/workflow.hpp"

namespace ideation {

/// `key = value` per line; `#` starts a comment. Keys are the fields of
/// WorkflowConfig plus a few provider settings (see kConfigKeys).
using ConfigValues = std::map<std::string, std::string>;

/// Throws Config naming the line for syntax errors, unknown or repeated keys.
ConfigValues parse_config_text(std::string_view text);
ConfigValues load_config_file(const std::filesystem::path& path);

/// Overlay the recognised keys onto existing settings. Throws Config on bad values.
void apply_config(const ConfigValues& values, WorkflowConfig& workflow);
void apply_config(const ConfigValues& values, GatewayOptions& gateway, RemoteConfig& remote);

} // namespace ideation
