#include "ideation/workflow.hpp"

#include <algorithm>
#include <set>

#include "ideation/structured.hpp"

namespace ideation {

namespace {

bool contains(const std::vector<Keyword>& v, const Keyword& k) {
    return std::find(v.begin(), v.end(), k) != v.end();
}

std::optional<Keyword> keyword_or_empty(const std::string& raw) {
    auto text = normalize_keyword_text(raw);
    if (text.empty()) return std::nullopt;
    return Keyword::from_raw(text);
}

const CandidateKeyword* find_candidate(const std::vector<CandidateKeyword>& candidates, const Keyword& k) {
    for (const auto& c : candidates) {
        if (c.keyword == k) return &c;
    }
    return nullptr;
}

std::string describe_change(const KeywordChange& change, const std::vector<Keyword>& keywords) {
    switch (change.type) {
        case ChangeType::Seed:
            return "initial seed keywords (" + join_keywords(keywords) + ")";
        case ChangeType::Added:
            return "added \"" + change.keyword.str() + "\" (connected to \"" + change.connected_to.str() +
                   "\"). Reason: " + change.reason;
        case ChangeType::Replaced:
            return "replaced \"" + change.replaced.str() + "\" with \"" + change.keyword.str() +
                   "\" (connected to \"" + change.connected_to.str() + "\"). Reason: " + change.reason;
        case ChangeType::Rewrite:
            return "none; the idea proposal was rewritten." +
                   (change.reason.empty() ? std::string{} : " Reason: " + change.reason);
    }
    return {};
}

} // namespace

// ---- config -----------------------------------------------------------------

void WorkflowConfig::validate(std::size_t seed_count) const {
    if (m < 1) throw Error(ErrorKind::Config, "m must be at least 1");
    if (l_max < 1) throw Error(ErrorKind::Config, "L_max must be at least 1");
    if (seed_count == 0) throw Error(ErrorKind::Config, "at least one seed keyword is required");
    if (seed_count > l_max) {
        throw Error(ErrorKind::Config, std::to_string(seed_count) + " seed keywords exceed L_max = " +
                                           std::to_string(l_max));
    }
    if (max_evolve_rounds < 0) throw Error(ErrorKind::Config, "max evolve rounds must be >= 0");
    if (stop_threshold < 1) throw Error(ErrorKind::Config, "stop threshold must be >= 1");
    if (cap_papers < 1) throw Error(ErrorKind::Config, "cap_papers must be at least 1");
}

nlohmann::json to_json(const WorkflowConfig& cfg) {
    return {
        {"m", cfg.m},
        {"l_max", cfg.l_max},
        {"max_evolve_rounds", cfg.max_evolve_rounds},
        {"stop_threshold", cfg.stop_threshold},
        {"flexible_policy", "added_only"},
        {"seed", cfg.seed},
        {"evolve_enabled", cfg.evolve_enabled},
        {"critic_enabled", cfg.critic_enabled},
        {"cap_papers", cfg.cap_papers},
    };
}

WorkflowConfig workflow_config_from_json(const nlohmann::json& j) {
    WorkflowConfig cfg;
    try {
        cfg.m = j.at("m").get<std::size_t>();
        cfg.l_max = j.at("l_max").get<std::size_t>();
        cfg.max_evolve_rounds = j.at("max_evolve_rounds").get<int>();
        cfg.stop_threshold = j.at("stop_threshold").get<int>();
        if (j.at("flexible_policy").get<std::string>() != "added_only") {
            throw Error(ErrorKind::Config, "unknown flexible policy");
        }
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.evolve_enabled = j.at("evolve_enabled").get<bool>();
        cfg.critic_enabled = j.at("critic_enabled").get<bool>();
        cfg.cap_papers = j.value("cap_papers", std::size_t{3});
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Config, std::string("bad workflow config: ") + e.what());
    }
    return cfg;
}

std::string_view to_string(ChangeType t) {
    switch (t) {
        case ChangeType::Seed: return "seed";
        case ChangeType::Added: return "added";
        case ChangeType::Replaced: return "replaced";
        case ChangeType::Rewrite: return "rewrite";
    }
    return "seed";
}

std::string_view to_string(RouteAction a) {
    return a == RouteAction::KeywordReplacement ? kActionKeywordReplacement : kActionIdeaRewrite;
}

std::string_view to_string(StopReason r) {
    switch (r) {
        case StopReason::Threshold: return "threshold";
        case StopReason::MaxEvolveRounds: return "max-evolve-rounds";
        case StopReason::EvolveDisabled: return "evolve-disabled";
        case StopReason::Aborted: return "aborted";
    }
    return "aborted";
}

// ---- idea stack -------------------------------------------------------------

void IdeaStack::append(RoundRecord record) {
    if (!rounds_.empty() && record.round_no <= rounds_.back().round_no) {
        throw Error(ErrorKind::Config, "round numbers must increase (got " + std::to_string(record.round_no) +
                                           " after " + std::to_string(rounds_.back().round_no) + ")");
    }
    if (record.round_no < 1) throw Error(ErrorKind::Config, "round numbers start at 1");
    rounds_.push_back(std::move(record));
}

std::string serialize_round(const RoundRecord& r) {
    std::string out = "Round " + std::to_string(r.round_no) + "\n";
    out += "- Keywords: " + join_keywords(r.keywords) + "\n";
    out += "- Keyword change: " + describe_change(r.change, r.keywords) + "\n";
    if (!r.change.relation.empty()) {
        out += "- Relationship of \"" + r.change.keyword.str() + "\" to \"" + r.change.connected_to.str() +
               "\":\n" + r.change.relation + "\n";
    }
    out += "- Research idea:\n" + format_proposal(r.idea) + "\n";
    if (r.review) {
        out += std::string("- ") + labels::kNovelty + ": " + r.review->novelty_line() + "\n";
        out += std::string("- ") + labels::kFeasibility + ": " + r.review->feasibility_line() + "\n";
    } else {
        out += "- Review: not available\n";
    }
    return out;
}

std::string IdeaStack::serialize() const {
    if (rounds_.empty()) return kEmptyStackSentinel;
    std::string out;
    for (const auto& r : rounds_) {
        if (!out.empty()) out += "\n";
        out += serialize_round(r);
    }
    return out;
}

std::string render_candidates(const std::vector<CandidateKeyword>& candidates, const std::vector<Keyword>& current) {
    std::string out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& c = candidates[i];
        if (!out.empty()) out += "\n";
        out += std::to_string(i + 1) + ". Candidate keyword: " + c.keyword.str() + "\n";
        out += "   Connected to: " + c.connected_to.str() + "\n";
        out += "   Relationship:\n";
        std::size_t pos = 0;
        const auto& rel = c.relation.empty() ? std::string("(no relation summary available)") : c.relation;
        while (pos <= rel.size()) {
            auto end = rel.find('\n', pos);
            if (end == std::string::npos) end = rel.size();
            out += "   " + rel.substr(pos, end - pos) + "\n";
            pos = end + 1;
        }
        bool any = false;
        for (const auto& k : current) {
            if (k == c.connected_to) continue;
            auto it = c.paths.find(k);
            if (it == c.paths.end()) continue;
            any = true;
            out += "   Shortest path length to \"" + k.str() + "\": " +
                   (it->second ? std::to_string(*it->second) : std::string("not connected")) + "\n";
        }
        if (!any) out += "   Shortest path lengths: none (no other current keywords)\n";
    }
    return out;
}

std::vector<Keyword> WorkflowState::flexible() const {
    std::vector<Keyword> out;
    for (const auto& k : keywords) {
        if (!contains(seeds, k)) out.push_back(k);
    }
    return out;
}

std::optional<int> best_round(const IdeaStack& stack) {
    std::optional<int> best;
    double best_avg = -1.0;
    for (const auto& r : stack.rounds()) {
        if (!r.review) continue;
        if (r.review->average() >= best_avg) {
            best_avg = r.review->average();
            best = r.round_no;
        }
    }
    if (!best && !stack.empty()) best = stack.back().round_no;
    return best;
}

// ---- workflow ---------------------------------------------------------------

Workflow::Workflow(SciNetwork& net, Gateway& llm, const Critic* critic, WorkflowConfig cfg)
    : net_(&net), llm_(&llm), critic_(critic), cfg_(std::move(cfg)) {
    if (cfg_.critic_enabled && !critic_) {
        throw Error(ErrorKind::Config, "critic enabled but no critic configured");
    }
}

std::vector<CandidateKeyword> Workflow::explore(const std::vector<Keyword>& current) {
    if (current.empty()) throw Error(ErrorKind::Config, "explore needs a nonempty keyword set");

    struct Occurrence {
        Keyword keyword;
        std::size_t source;
        std::size_t rank;
    };
    std::vector<Occurrence> best;
    std::map<Keyword, std::size_t> slot;
    for (std::size_t s = 0; s < current.size(); ++s) {
        std::size_t rank = 0;
        for (auto& n : net_->neighbors(current[s], SIZE_MAX)) {
            if (rank == cfg_.m) break;
            if (contains(current, n)) continue;
            auto it = slot.find(n);
            if (it == slot.end()) {
                slot.emplace(n, best.size());
                best.push_back({n, s, rank});
            } else if (rank < best[it->second].rank) {
                best[it->second].source = s;
                best[it->second].rank = rank;
            }
            ++rank;
        }
    }
    std::stable_sort(best.begin(), best.end(), [](const Occurrence& a, const Occurrence& b) {
        if (a.source != b.source) return a.source < b.source;
        return a.rank < b.rank;
    });

    RelationOptions rel;
    rel.cap_papers = cfg_.cap_papers;
    std::vector<CandidateKeyword> out;
    out.reserve(best.size());
    for (const auto& o : best) {
        CandidateKeyword c;
        c.keyword = o.keyword;
        c.connected_to = current[o.source];
        c.relation = summarize_relation(*net_, c.keyword, c.connected_to, *llm_, rel);
        for (const auto& k : current) {
            if (k == c.connected_to) continue;
            c.paths[k] = net_->shortest_path_len(c.keyword, k);
        }
        out.push_back(std::move(c));
    }
    return out;
}

SelectionDecision Workflow::select_keyword(const std::vector<CandidateKeyword>& candidates, const IdeaStack& stack,
                                           const std::vector<Keyword>& current) {
    if (candidates.empty()) throw Error(ErrorKind::InvalidSelection, "no candidate keywords to select from");
    const Bindings bindings = {
        {"idea_stack", stack.serialize()},
        {"candidate_keywords_and_relationships", render_candidates(candidates, current)},
    };
    return llm_->ask_parsed(TemplateId::KeywordSelection, bindings, [&](const std::string& text) {
        const auto reply = parse_structured(ReplyKind::Selection, text);
        const auto chosen = keyword_or_empty(reply.at(labels::kNewKeyword));
        const auto* candidate = chosen ? find_candidate(candidates, *chosen) : nullptr;
        if (!candidate) {
            throw Error(ErrorKind::InvalidSelection,
                        "NEW_KEYWORD \"" + reply.at(labels::kNewKeyword) + "\" is not a candidate");
        }
        const auto anchor = keyword_or_empty(reply.at(labels::kConnectedTo));
        if (!anchor || *anchor != candidate->connected_to) {
            throw Error(ErrorKind::InvalidSelection, "CONNECTED_TO \"" + reply.at(labels::kConnectedTo) +
                                                         "\" is not the anchor of \"" + candidate->keyword.str() +
                                                         "\" (" + candidate->connected_to.str() + ")");
        }
        return SelectionDecision{*candidate, reply.at(labels::kReasonForSelection)};
    });
}

IdeaProposal Workflow::formulate_idea(const std::vector<Keyword>& keywords, const IdeaStack& stack,
                                      const std::optional<KeywordChange>& pending) {
    if (keywords.empty()) throw Error(ErrorKind::Config, "formulate_idea needs at least one keyword");

    std::string status = stack.serialize();
    std::vector<std::string> cited;
    auto cite = [&](const std::string& relation) {
        for (auto& id : attributed_paper_ids(relation)) {
            if (std::find(cited.begin(), cited.end(), id) == cited.end()) cited.push_back(std::move(id));
        }
    };
    for (const auto& r : stack.rounds()) cite(r.change.relation);
    if (pending) {
        RoundRecord draft;
        draft.round_no = static_cast<int>(stack.rounds().size()) + 1;
        draft.keywords = keywords;
        draft.change = *pending;
        std::string block = "Round " + std::to_string(draft.round_no) + " (current round, idea pending)\n";
        block += "- Keywords: " + join_keywords(keywords) + "\n";
        block += "- Keyword change: " + describe_change(*pending, keywords) + "\n";
        if (!pending->relation.empty()) {
            block += "- Relationship of \"" + pending->keyword.str() + "\" to \"" + pending->connected_to.str() +
                     "\":\n" + pending->relation + "\n";
        }
        status = stack.empty() ? block : status + "\n" + block;
        cite(pending->relation);
    }

    const Bindings bindings = {{"keywords", join_keywords(keywords)}, {"status_bar", status}};
    auto idea = llm_->ask_parsed(TemplateId::IdeaFormulation, bindings,
                                 [](const std::string& text) { return parse_proposal(text); });
    std::sort(cited.begin(), cited.end());
    idea.cited_paper_ids = std::move(cited);
    return idea;
}

bool Workflow::reached_threshold(const RoundRecord& record) const {
    return record.review && record.review->novelty >= cfg_.stop_threshold &&
           record.review->feasibility >= cfg_.stop_threshold;
}

WorkflowState Workflow::finish_round(const WorkflowState& state, std::vector<Keyword> keywords, KeywordChange change,
                                     std::optional<RouteDecision> route) {
    RoundRecord record;
    record.round_no = state.next_round();
    record.idea = formulate_idea(keywords, state.stack, change);
    record.keywords = std::move(keywords);
    record.change = std::move(change);
    record.route = std::move(route);
    if (cfg_.critic_enabled) {
        try {
            record.review = critic_->evaluate(record.idea, record.keywords, net_->graph_features(record.keywords));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ReviewUnavailable) throw;
            record.note = "review unavailable";
            if (e.cause()) record.note += " (" + std::string(to_string(*e.cause())) + ")";
            record.note += std::string(": ") + e.what();
        }
    }
    WorkflowState next = state;
    next.keywords = record.keywords;
    next.stack.append(std::move(record));
    return next;
}

WorkflowState Workflow::start(const std::vector<Keyword>& seeds) {
    cfg_.validate(seeds.size());
    std::set<Keyword> distinct(seeds.begin(), seeds.end());
    if (distinct.size() != seeds.size()) throw Error(ErrorKind::Config, "seed keywords must be distinct");
    for (const auto& s : seeds) {
        if (!net_->contains(s)) throw Error(ErrorKind::UnknownKeyword, "seed keyword \"" + s.str() + "\" is not in the network");
    }
    WorkflowState state{IdeaStack(cfg_), seeds, {}};
    KeywordChange change;
    change.type = ChangeType::Seed;
    return finish_round(state, seeds, change, std::nullopt);
}

WorkflowState Workflow::expand_step(const WorkflowState& state) {
    return expand_step(state, explore(state.keywords));
}

WorkflowState Workflow::expand_step(const WorkflowState& state, const std::vector<CandidateKeyword>& candidates) {
    if (state.keywords.size() >= cfg_.l_max) {
        throw Error(ErrorKind::Config, "keyword set already has L_max keywords");
    }
    auto decision = select_keyword(candidates, state.stack, state.keywords);
    if (contains(state.keywords, decision.candidate.keyword)) {
        throw Error(ErrorKind::InvalidSelection, "selected keyword is already in the set");
    }
    KeywordChange change;
    change.type = ChangeType::Added;
    change.keyword = decision.candidate.keyword;
    change.connected_to = decision.candidate.connected_to;
    change.reason = decision.reason;
    change.relation = decision.candidate.relation;
    auto keywords = state.keywords;
    keywords.push_back(change.keyword);
    return finish_round(state, std::move(keywords), std::move(change), std::nullopt);
}

RouteDecision Workflow::route(const WorkflowState& state) {
    if (state.stack.empty() || !state.stack.back().review) {
        return {RouteAction::IdeaRewrite, "no review available for the latest round", true};
    }
    const auto& last = state.stack.back();
    const Bindings bindings = {
        {"research_idea", format_proposal(last.idea)},
        {"keywords", join_keywords(state.keywords)},
        {"novelty_score_desc", last.review->novelty_line()},
        {"feasibility_score_desc", last.review->feasibility_line()},
    };
    try {
        return llm_->ask_parsed(TemplateId::Router, bindings, [](const std::string& text) {
            const auto reply = parse_structured(ReplyKind::Router, text);
            const auto action = reply.at(labels::kAction) == kActionKeywordReplacement ? RouteAction::KeywordReplacement
                                                                                        : RouteAction::IdeaRewrite;
            return RouteDecision{action, reply.at(labels::kReason), false};
        });
    } catch (const Error& e) {
        if (!Gateway::is_retryable_reply_error(e.kind())) throw;
        return {RouteAction::IdeaRewrite, std::string("router reply unusable: ") + e.what(), true};
    }
}

WorkflowState Workflow::evolve_keywords(const WorkflowState& state) {
    return evolve_keywords(state, explore(state.keywords));
}

WorkflowState Workflow::evolve_keywords(const WorkflowState& state, const std::vector<CandidateKeyword>& candidates,
                                        const std::optional<RouteDecision>& route) {
    if (state.keywords.size() != cfg_.l_max) {
        throw Error(ErrorKind::InvalidReplacement, "keyword replacement needs a full keyword set");
    }
    const auto flexible = state.flexible();
    if (flexible.empty()) throw Error(ErrorKind::InvalidReplacement, "no flexible keywords to replace");
    if (candidates.empty()) throw Error(ErrorKind::InvalidReplacement, "no candidate replacement keywords");

    const Bindings bindings = {
        {"keywords", join_keywords(state.keywords)},
        {"flexible_keywords", join_keywords(flexible)},
        {"idea_stack", state.stack.serialize()},
        {"candidate_keywords_and_relationships", render_candidates(candidates, state.keywords)},
    };
    const auto decision = llm_->ask_parsed(TemplateId::KeywordReplacement, bindings, [&](const std::string& text) {
        const auto reply = parse_structured(ReplyKind::Replacement, text);
        const auto incoming = keyword_or_empty(reply.at(labels::kReplacementKeyword));
        const auto* candidate = incoming ? find_candidate(candidates, *incoming) : nullptr;
        if (!candidate) {
            throw Error(ErrorKind::InvalidReplacement,
                        "REPLACEMENT_KEYWORD \"" + reply.at(labels::kReplacementKeyword) + "\" is not a candidate");
        }
        const auto anchor = keyword_or_empty(reply.at(labels::kConnectedTo));
        if (!anchor || *anchor != candidate->connected_to) {
            throw Error(ErrorKind::InvalidReplacement, "CONNECTED_TO \"" + reply.at(labels::kConnectedTo) +
                                                           "\" is not the anchor of \"" + candidate->keyword.str() +
                                                           "\"");
        }
        const auto outgoing = keyword_or_empty(reply.at(labels::kReplacedKeyword));
        if (!outgoing || !contains(flexible, *outgoing)) {
            throw Error(ErrorKind::InvalidReplacement,
                        "REPLACED_KEYWORD \"" + reply.at(labels::kReplacedKeyword) + "\" is not flexible");
        }
        if (*outgoing == candidate->connected_to) {
            throw Error(ErrorKind::InvalidReplacement,
                        "cannot replace \"" + outgoing->str() + "\", the keyword the replacement connects to");
        }
        return ReplacementDecision{*candidate, *outgoing, reply.at(labels::kReasonForReplacement)};
    });

    KeywordChange change;
    change.type = ChangeType::Replaced;
    change.keyword = decision.candidate.keyword;
    change.replaced = decision.replaced;
    change.connected_to = decision.candidate.connected_to;
    change.reason = decision.reason;
    change.relation = decision.candidate.relation;
    auto keywords = state.keywords;
    *std::find(keywords.begin(), keywords.end(), decision.replaced) = change.keyword;
    return finish_round(state, std::move(keywords), std::move(change), route);
}

WorkflowState Workflow::evolve_idea(const WorkflowState& state, const RouteDecision& decision) {
    if (state.stack.empty()) throw Error(ErrorKind::Config, "idea rewrite needs a prior round");
    KeywordChange change;
    change.type = ChangeType::Rewrite;
    change.reason = decision.reason;
    return finish_round(state, state.keywords, std::move(change), decision);
}

RunResult Workflow::run(const std::vector<Keyword>& seeds) {
    RunResult result;
    result.seeds = seeds;
    result.stack = IdeaStack(cfg_);
    WorkflowState state{IdeaStack(cfg_), seeds, {}};

    auto done = [&](StopReason reason) {
        result.stack = state.stack;
        result.stop_reason = reason;
        result.best_round = best_round(state.stack);
        return result;
    };

    try {
        state = start(seeds);
        if (reached_threshold(state.stack.back())) return done(StopReason::Threshold);

        while (state.keywords.size() < cfg_.l_max) {
            auto candidates = explore(state.keywords);
            if (candidates.empty()) break;
            state = expand_step(state, candidates);
            if (reached_threshold(state.stack.back())) return done(StopReason::Threshold);
        }

        if (!cfg_.evolve_enabled) return done(StopReason::EvolveDisabled);

        for (int i = 0; i < cfg_.max_evolve_rounds; ++i) {
            RouteDecision decision;
            if (cfg_.critic_enabled) {
                decision = route(state);
            } else {
                decision.action = i % 2 == 0 ? RouteAction::KeywordReplacement : RouteAction::IdeaRewrite;
                decision.reason = "critic disabled: alternating evolve actions";
                decision.defaulted = true;
            }

            if (decision.action == RouteAction::KeywordReplacement) {
                std::vector<CandidateKeyword> candidates;
                const bool replaceable = state.keywords.size() == cfg_.l_max && !state.flexible().empty();
                if (replaceable) candidates = explore(state.keywords);
                if (!replaceable || candidates.empty()) {
                    decision = {RouteAction::IdeaRewrite,
                                replaceable ? "no replacement candidates; rewriting the idea instead"
                                            : "no flexible keywords; rewriting the idea instead",
                                true};
                    state = evolve_idea(state, decision);
                } else {
                    state = evolve_keywords(state, candidates, decision);
                }
            } else {
                state = evolve_idea(state, decision);
            }
            if (reached_threshold(state.stack.back())) return done(StopReason::Threshold);
        }
        return done(StopReason::MaxEvolveRounds);
    } catch (const Error& e) {
        done(StopReason::Aborted);
        result.error = std::string(to_string(e.kind())) + ": " + e.what();
        return result;
    }
}

} // namespace ideation
