#pragma once

#include <string>
#include <vector>

#include "ideation/gateway.hpp"
#include "ideation/network.hpp"
#include "ideation/proposal.hpp"
#include "ideation/structured.hpp"

namespace ideation {

struct Review {
    int novelty = 0;
    std::string novelty_desc;
    int feasibility = 0;
    std::string feasibility_desc;

    /// Exact: (novelty + feasibility) / 2 is always a multiple of 0.5.
    double average() const { return (novelty + feasibility) / 2.0; }

    /// "<score> - <description>", the form bound into the router prompt.
    std::string novelty_line() const;
    std::string feasibility_line() const;

    bool operator==(const Review&) const = default;
};

Review review_from_reply(const StructuredReply& reply);
/// Review as the two labelled lines of the review output format.
StructuredReply review_to_reply(const Review& review);

/// "a, b, c"
std::string join_keywords(const std::vector<Keyword>& keywords);

/// Fixed text layout of the graph features block:
///
///     Neighbor count:
///     - <keyword>: <degree>            (one line per keyword)
///     Connectivity: connected | not connected
///     Shortest paths:
///     - <a> <-> <b>: <hops> | not connected   (one line per unordered pair)
///
/// A single keyword renders "- none (single keyword)" under Shortest paths.
/// Fine-tuning data must use this exact layout.
std::string serialize_graph_features(const GraphFeatures& features);

/// Scores an idea with the review prompt. Replies that still fail to parse
/// after the gateway's retries raise ReviewUnavailable; transport errors
/// propagate unchanged.
Review evaluate_idea(const IdeaProposal& idea, const std::vector<Keyword>& keywords,
                     const GraphFeatures& features, Gateway& gateway);

/// The critic bound to its own gateway (its model may differ from the
/// workflow's).
class Critic {
public:
    explicit Critic(Gateway& gateway) : gateway_(&gateway) {}

    Review evaluate(const IdeaProposal& idea, const std::vector<Keyword>& keywords,
                    const GraphFeatures& features) const {
        return evaluate_idea(idea, keywords, features, *gateway_);
    }

private:
    Gateway* gateway_;
};

} // namespace ideation
