#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ideation/critic.hpp"
#include "ideation/gateway.hpp"
#include "ideation/network.hpp"
#include "ideation/proposal.hpp"
#include "ideation/relation.hpp"

namespace ideation {

/// Which current keywords may be swapped out during evolve.
enum class FlexiblePolicy {
    AddedOnly, // everything except the seeds
};

struct WorkflowConfig {
    std::size_t m = 12;           // neighbors considered per keyword
    std::size_t l_max = 4;        // keyword-set size that triggers evolve
    int max_evolve_rounds = 5;
    int stop_threshold = 4;       // both scores must reach this to stop early
    FlexiblePolicy flexible_policy = FlexiblePolicy::AddedOnly;
    std::uint64_t seed = 0;
    bool evolve_enabled = true;
    bool critic_enabled = true;
    std::size_t cap_papers = 3;   // papers summarized per edge

    /// Throws Config.
    void validate(std::size_t seed_count) const;

    bool operator==(const WorkflowConfig&) const = default;
};

nlohmann::json to_json(const WorkflowConfig& cfg);
WorkflowConfig workflow_config_from_json(const nlohmann::json& j);

struct CandidateKeyword {
    Keyword keyword;
    Keyword connected_to;
    std::string relation;
    /// Hops to every other current keyword; nullopt when not connected.
    std::map<Keyword, std::optional<std::size_t>> paths;
};

enum class ChangeType { Seed, Added, Replaced, Rewrite };
std::string_view to_string(ChangeType t);

struct KeywordChange {
    ChangeType type = ChangeType::Seed;
    Keyword keyword;       // added or incoming keyword
    Keyword replaced;      // outgoing keyword (Replaced only)
    Keyword connected_to;
    std::string reason;
    std::string relation;  // relation text shown to the model for `keyword`

    bool operator==(const KeywordChange&) const = default;
};

enum class RouteAction { KeywordReplacement, IdeaRewrite };
std::string_view to_string(RouteAction a);

struct RouteDecision {
    RouteAction action = RouteAction::IdeaRewrite;
    std::string reason;
    /// Chosen without a usable router reply (parse failure, missing review,
    /// critic disabled, or no replacement possible).
    bool defaulted = false;

    bool operator==(const RouteDecision&) const = default;
};

struct RoundRecord {
    int round_no = 0;
    std::vector<Keyword> keywords;
    KeywordChange change;
    IdeaProposal idea;
    std::optional<Review> review;
    std::optional<RouteDecision> route; // evolve rounds only
    std::string note;

    bool operator==(const RoundRecord&) const = default;
};

inline constexpr const char* kEmptyStackSentinel =
    "No prior rounds: this is the first round of the research process.";

/// Append-only history of rounds. Its serialization is what the keyword
/// selection, replacement and idea formulation prompts see.
class IdeaStack {
public:
    IdeaStack() = default;
    explicit IdeaStack(WorkflowConfig config) : config_(std::move(config)) {}

    /// Throws Config if round numbers do not increase.
    void append(RoundRecord record);

    const std::vector<RoundRecord>& rounds() const noexcept { return rounds_; }
    const WorkflowConfig& config() const noexcept { return config_; }
    bool empty() const noexcept { return rounds_.empty(); }
    const RoundRecord& back() const { return rounds_.back(); }

    /// Numbered, labelled text of all rounds, or kEmptyStackSentinel. The
    /// text after round t is a prefix of the text after round t+1.
    std::string serialize() const;

    bool operator==(const IdeaStack&) const = default;

private:
    WorkflowConfig config_;
    std::vector<RoundRecord> rounds_;
};

/// Text block for one round as it appears in the stack serialization.
std::string serialize_round(const RoundRecord& record);

std::string render_candidates(const std::vector<CandidateKeyword>& candidates,
                              const std::vector<Keyword>& current);

struct WorkflowState {
    IdeaStack stack;
    std::vector<Keyword> seeds;
    std::vector<Keyword> keywords;

    /// Current keywords eligible for replacement under the configured policy.
    std::vector<Keyword> flexible() const;
    int next_round() const { return static_cast<int>(stack.rounds().size()) + 1; }
};

struct SelectionDecision {
    CandidateKeyword candidate;
    std::string reason;
};

struct ReplacementDecision {
    CandidateKeyword candidate;
    Keyword replaced;
    std::string reason;
};

enum class StopReason { Threshold, MaxEvolveRounds, EvolveDisabled, Aborted };
std::string_view to_string(StopReason r);

struct RunResult {
    IdeaStack stack;
    std::vector<Keyword> seeds;
    std::optional<int> best_round;
    StopReason stop_reason = StopReason::MaxEvolveRounds;
    std::optional<std::string> error;

    bool operator==(const RunResult&) const = default;
};

/// Best reviewed round by average score, ties to the later round; the last
/// round when nothing was reviewed.
std::optional<int> best_round(const IdeaStack& stack);

/// Explore, expand and evolve over one network. A run is sequential; separate
/// Workflow objects may run concurrently over the same network.
class Workflow {
public:
    /// `critic` may be null when cfg.critic_enabled is false.
    Workflow(SciNetwork& net, Gateway& llm, const Critic* critic, WorkflowConfig cfg);

    const WorkflowConfig& config() const noexcept { return cfg_; }

    /// Up to m ranked neighbors per current keyword that are not already
    /// current, deduplicated (best neighbor rank wins, then earlier source),
    /// each with its relation text and path lengths to the other keywords.
    std::vector<CandidateKeyword> explore(const std::vector<Keyword>& current);

    SelectionDecision select_keyword(const std::vector<CandidateKeyword>& candidates, const IdeaStack& stack,
                                     const std::vector<Keyword>& current);

    /// `pending`, when given, is this round's keyword change; it is shown to
    /// the model after the completed rounds.
    IdeaProposal formulate_idea(const std::vector<Keyword>& keywords, const IdeaStack& stack,
                                const std::optional<KeywordChange>& pending = std::nullopt);

    /// Seed round: formulate and review the seed keywords.
    WorkflowState start(const std::vector<Keyword>& seeds);

    WorkflowState expand_step(const WorkflowState& state);
    WorkflowState expand_step(const WorkflowState& state, const std::vector<CandidateKeyword>& candidates);

    RouteDecision route(const WorkflowState& state);

    WorkflowState evolve_keywords(const WorkflowState& state);
    WorkflowState evolve_keywords(const WorkflowState& state, const std::vector<CandidateKeyword>& candidates,
                                  const std::optional<RouteDecision>& route = std::nullopt);

    WorkflowState evolve_idea(const WorkflowState& state, const RouteDecision& decision = {});

    RunResult run(const std::vector<Keyword>& seeds);

private:
    bool reached_threshold(const RoundRecord& record) const;
    WorkflowState finish_round(const WorkflowState& state, std::vector<Keyword> keywords, KeywordChange change,
                               std::optional<RouteDecision> route);

    SciNetwork* net_;
    Gateway* llm_;
    const Critic* critic_;
    WorkflowConfig cfg_;
};

} // namespace ideation
