#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ideation/corpus.hpp"
#include "ideation/gateway.hpp"

namespace ideation {

inline constexpr std::size_t kMinPaperKeywords = 3;
inline constexpr std::size_t kMaxPaperKeywords = 4;
inline constexpr int kExtractionAttempts = 3;

/// Normalizes, drops empties, and removes duplicates keeping first occurrence.
std::vector<Keyword> dedupe_keywords(const std::vector<std::string>& raw);

/// Reads a "KEYWORDS: a; b; c" reply (the label is optional; items may also be
/// one per line). Throws ExtractionCount unless 3 or 4 distinct keywords remain.
std::vector<Keyword> parse_keyword_list(std::string_view reply);

/// Returns the paper's 3-4 keywords. Pre-supplied keywords are normalized and
/// returned without contacting the model; otherwise the extraction prompt is
/// sent up to `attempts` times.
std::vector<Keyword> extract_keywords(const PaperRecord& paper, Gateway& gateway,
                                      int attempts = kExtractionAttempts);

} // namespace ideation
