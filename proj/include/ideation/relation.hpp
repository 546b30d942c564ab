#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ideation/gateway.hpp"
#include "ideation/network.hpp"

namespace ideation {

struct RelationOptions {
    /// Most recent papers per edge that get summarized.
    std::size_t cap_papers = 3;
};

/// Papers used for an edge's relation: newest year first, ties by id,
/// truncated to `cap`.
std::vector<std::string> relation_papers(const SciNetwork& net, const Keyword& a, const Keyword& b,
                                         std::size_t cap);

/// Aggregated relation between two co-occurring keywords: one relation-analysis
/// summary per selected paper, cached on the edge, joined as
/// "[paper-id] text" lines. Cached papers cost no model call.
///
/// Concurrent calls on the same edge are serialized so each paper is
/// summarized once.
std::string summarize_relation(SciNetwork& net, const Keyword& a, const Keyword& b, Gateway& gateway,
                               const RelationOptions& options = {});

/// Paper ids from the "[id]" prefixes of a summarize_relation result, in order.
std::vector<std::string> attributed_paper_ids(std::string_view relation_text);

} // namespace ideation
