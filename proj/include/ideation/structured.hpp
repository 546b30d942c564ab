#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ideation {

enum class ReplyKind { Selection, Replacement, Router, Review };

std::string_view to_string(ReplyKind kind);

namespace labels {
inline constexpr const char* kNewKeyword = "NEW_KEYWORD";
inline constexpr const char* kConnectedTo = "CONNECTED_TO";
inline constexpr const char* kReasonForSelection = "REASON_FOR_SELECTION";
inline constexpr const char* kReplacementKeyword = "REPLACEMENT_KEYWORD";
inline constexpr const char* kReplacedKeyword = "REPLACED_KEYWORD";
inline constexpr const char* kReasonForReplacement = "REASON_FOR_REPLACEMENT";
inline constexpr const char* kAction = "ACTION";
inline constexpr const char* kReason = "REASON";
inline constexpr const char* kNovelty = "Novelty Score and Description";
inline constexpr const char* kFeasibility = "Feasibility Score and Description";
} // namespace labels

inline constexpr const char* kActionKeywordReplacement = "Keyword_Replacement";
inline constexpr const char* kActionIdeaRewrite = "Idea_Rewrite";

/// Labels of a reply kind, in output order.
const std::vector<std::string>& labels_for(ReplyKind kind);

struct StructuredReply {
    ReplyKind kind = ReplyKind::Selection;
    std::map<std::string, std::string> key_values;

    const std::string& at(const std::string& label) const { return key_values.at(label); }

    bool operator==(const StructuredReply&) const = default;
};

struct ScoreLine {
    int score = 0;
    std::string description;
};

/// First integer of the value is the score (1..5). A decimal, a missing
/// integer, or an out-of-range value is InvalidScore; an empty description is
/// MissingField.
ScoreLine parse_score_line(std::string_view label, std::string_view value);

/// Labels match case-sensitively at the start of a line (after whitespace or
/// markdown `*`/`#` decoration) and must be followed by a colon. Keyword and
/// action values run to the end of their line; reasons and review scores run
/// until the next label. Text before the first label is ignored.
///
/// Throws MissingField, InvalidAction or InvalidScore; never anything else.
StructuredReply parse_structured(ReplyKind kind, std::string_view text);

/// Canonical "LABEL: value" layout, one label per line.
std::string format_structured(const StructuredReply& reply);

} // namespace ideation
