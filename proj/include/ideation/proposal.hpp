#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ideation {

/// The workflow's product: background, idea, and implementation approach.
struct IdeaProposal {
    std::string background;
    std::string idea;
    std::string implementation;
    std::vector<std::string> cited_paper_ids;

    bool operator==(const IdeaProposal&) const = default;
};

/// Splits a model reply into its three sections by their headings
/// ("Research Background", "Research Idea", "Implementation Approach" and
/// close variants, with or without markdown decoration). Throws FormatError
/// naming the first missing or empty section.
IdeaProposal parse_proposal(std::string_view text);

/// Heading layout understood by parse_proposal. cited_paper_ids are not part
/// of the text.
std::string format_proposal(const IdeaProposal& proposal);

} // namespace ideation
