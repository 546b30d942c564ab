#pragma once

#include <string>
#include <string_view>

#include "ideation/workflow.hpp"

namespace ideation {

inline constexpr int kRunRecordVersion = 1;

/// Line-delimited JSON: a header line (format, version, config, seeds), one
/// line per round, and a summary line. Contains no timestamps, so identical
/// runs give identical bytes.
std::string serialize_run_record(const RunResult& result);

/// Inverse of serialize_run_record. Throws FormatError on malformed input.
RunResult parse_run_record(std::string_view text);

/// Human-readable report: keywords per round, idea sections, scores, and the
/// change log.
std::string render_markdown_report(const RunResult& result);

} // namespace ideation
