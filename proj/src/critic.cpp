#include "ideation/critic.hpp"

#include <algorithm>
#include <set>

namespace ideation {

std::string Review::novelty_line() const { return std::to_string(novelty) + " - " + novelty_desc; }
std::string Review::feasibility_line() const { return std::to_string(feasibility) + " - " + feasibility_desc; }

Review review_from_reply(const StructuredReply& reply) {
    if (reply.kind != ReplyKind::Review) {
        throw Error(ErrorKind::FormatError, "not a review reply");
    }
    const auto novelty = parse_score_line(labels::kNovelty, reply.at(labels::kNovelty));
    const auto feasibility = parse_score_line(labels::kFeasibility, reply.at(labels::kFeasibility));
    return Review{novelty.score, novelty.description, feasibility.score, feasibility.description};
}

StructuredReply review_to_reply(const Review& review) {
    StructuredReply reply;
    reply.kind = ReplyKind::Review;
    reply.key_values[labels::kNovelty] = review.novelty_line();
    reply.key_values[labels::kFeasibility] = review.feasibility_line();
    return reply;
}

std::string join_keywords(const std::vector<Keyword>& keywords) {
    std::string out;
    for (const auto& k : keywords) {
        if (!out.empty()) out += ", ";
        out += k.str();
    }
    return out;
}

std::string serialize_graph_features(const GraphFeatures& features) {
    std::string out = "Neighbor count:\n";
    for (const auto& k : features.keywords) {
        out += "- " + k.str() + ": " + std::to_string(features.neighbor_counts.at(k)) + "\n";
    }
    out += std::string("Connectivity: ") + (features.connected ? "connected" : "not connected") + "\n";
    out += "Shortest paths:";
    const auto& ks = features.keywords;
    if (ks.size() < 2) out += "\n- none (single keyword)";
    for (std::size_t i = 0; i < ks.size(); ++i) {
        for (std::size_t j = i + 1; j < ks.size(); ++j) {
            const auto& len = features.pairwise_paths.at(unordered_pair(ks[i], ks[j]));
            out += "\n- " + ks[i].str() + " <-> " + ks[j].str() + ": " +
                   (len ? std::to_string(*len) : std::string("not connected"));
        }
    }
    return out;
}

Review evaluate_idea(const IdeaProposal& idea, const std::vector<Keyword>& keywords,
                     const GraphFeatures& features, Gateway& gateway) {
    if (keywords.empty()) {
        throw Error(ErrorKind::Config, "evaluate_idea needs at least one keyword");
    }
    const std::set<Keyword> wanted(keywords.begin(), keywords.end());
    const std::set<Keyword> have(features.keywords.begin(), features.keywords.end());
    if (wanted != have) {
        throw Error(ErrorKind::Config, "graph features were computed for a different keyword set");
    }

    const Bindings bindings = {
        {"research_idea", format_proposal(idea)},
        {"keywords", join_keywords(keywords)},
        {"graph_features", serialize_graph_features(features)},
    };
    try {
        return gateway.ask_parsed(TemplateId::Review, bindings, [](const std::string& text) {
            return review_from_reply(parse_structured(ReplyKind::Review, text));
        });
    } catch (const Error& e) {
        if (!Gateway::is_retryable_reply_error(e.kind())) throw;
        throw Error(ErrorKind::ReviewUnavailable, std::string("critic reply unusable: ") + e.what(), e.kind());
    }
}

} // namespace ideation
