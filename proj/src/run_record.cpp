#include "ideation/run_record.hpp"

#include <sstream>

namespace ideation {

namespace {

using nlohmann::json;

constexpr const char* kFormatName = "ideation-run";

json keywords_json(const std::vector<Keyword>& ks) {
    json out = json::array();
    for (const auto& k : ks) out.push_back(k.str());
    return out;
}

std::vector<Keyword> keywords_from(const json& j) {
    std::vector<Keyword> out;
    for (const auto& k : j) out.push_back(Keyword::from_raw(k.get<std::string>()));
    return out;
}

std::optional<Keyword> optional_keyword(const json& j, const char* field) {
    if (!j.contains(field) || j[field].is_null()) return std::nullopt;
    return Keyword::from_raw(j[field].get<std::string>());
}

json round_json(const RoundRecord& r) {
    json change = {{"type", std::string(to_string(r.change.type))}};
    if (r.change.type == ChangeType::Added || r.change.type == ChangeType::Replaced) {
        change["keyword"] = r.change.keyword.str();
        change["connected_to"] = r.change.connected_to.str();
        change["relation"] = r.change.relation;
    }
    if (r.change.type == ChangeType::Replaced) change["replaced"] = r.change.replaced.str();
    if (r.change.type != ChangeType::Seed) change["reason"] = r.change.reason;

    json j = {
        {"type", "round"},
        {"round", r.round_no},
        {"keywords", keywords_json(r.keywords)},
        {"change", change},
        {"idea",
         {{"background", r.idea.background},
          {"idea", r.idea.idea},
          {"implementation", r.idea.implementation},
          {"cited_paper_ids", r.idea.cited_paper_ids}}},
    };
    if (r.review) {
        j["review"] = {{"novelty", r.review->novelty},
                       {"novelty_desc", r.review->novelty_desc},
                       {"feasibility", r.review->feasibility},
                       {"feasibility_desc", r.review->feasibility_desc},
                       {"average", r.review->average()}};
    }
    if (r.route) {
        j["route"] = {{"action", std::string(to_string(r.route->action))},
                      {"reason", r.route->reason},
                      {"defaulted", r.route->defaulted}};
    }
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

ChangeType change_type_from(const std::string& s) {
    for (auto t : {ChangeType::Seed, ChangeType::Added, ChangeType::Replaced, ChangeType::Rewrite}) {
        if (to_string(t) == s) return t;
    }
    throw Error(ErrorKind::FormatError, "unknown change type \"" + s + "\"");
}

StopReason stop_reason_from(const std::string& s) {
    for (auto r : {StopReason::Threshold, StopReason::MaxEvolveRounds, StopReason::EvolveDisabled, StopReason::Aborted}) {
        if (to_string(r) == s) return r;
    }
    throw Error(ErrorKind::FormatError, "unknown stop reason \"" + s + "\"");
}

RoundRecord round_from(const json& j) {
    RoundRecord r;
    r.round_no = j.at("round").get<int>();
    r.keywords = keywords_from(j.at("keywords"));
    const auto& c = j.at("change");
    r.change.type = change_type_from(c.at("type").get<std::string>());
    if (auto k = optional_keyword(c, "keyword")) r.change.keyword = *k;
    if (auto k = optional_keyword(c, "connected_to")) r.change.connected_to = *k;
    if (auto k = optional_keyword(c, "replaced")) r.change.replaced = *k;
    r.change.reason = c.value("reason", "");
    r.change.relation = c.value("relation", "");
    const auto& idea = j.at("idea");
    r.idea.background = idea.at("background").get<std::string>();
    r.idea.idea = idea.at("idea").get<std::string>();
    r.idea.implementation = idea.at("implementation").get<std::string>();
    r.idea.cited_paper_ids = idea.at("cited_paper_ids").get<std::vector<std::string>>();
    if (j.contains("review")) {
        const auto& rv = j["review"];
        r.review = Review{rv.at("novelty").get<int>(), rv.at("novelty_desc").get<std::string>(),
                          rv.at("feasibility").get<int>(), rv.at("feasibility_desc").get<std::string>()};
    }
    if (j.contains("route")) {
        const auto& rt = j["route"];
        RouteDecision d;
        d.action = rt.at("action").get<std::string>() == kActionKeywordReplacement ? RouteAction::KeywordReplacement
                                                                                  : RouteAction::IdeaRewrite;
        d.reason = rt.at("reason").get<std::string>();
        d.defaulted = rt.at("defaulted").get<bool>();
        r.route = d;
    }
    r.note = j.value("note", "");
    return r;
}

std::string score_text(int score, const std::string& desc) { return std::to_string(score) + "/5 - " + desc; }

} // namespace

std::string serialize_run_record(const RunResult& result) {
    std::ostringstream out;
    out << json{{"type", "header"},
                {"format", kFormatName},
                {"version", kRunRecordVersion},
                {"config", to_json(result.stack.config())},
                {"seeds", keywords_json(result.seeds)}}
               .dump()
        << '\n';
    for (const auto& r : result.stack.rounds()) out << round_json(r).dump() << '\n';
    json summary = {{"type", "summary"},
                    {"rounds", result.stack.rounds().size()},
                    {"stop_reason", std::string(to_string(result.stop_reason))},
                    {"best_round", result.best_round ? json(*result.best_round) : json(nullptr)},
                    {"error", result.error ? json(*result.error) : json(nullptr)}};
    out << summary.dump() << '\n';
    return out.str();
}

RunResult parse_run_record(std::string_view text) {
    RunResult result;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    bool summary = false;
    try {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            if (summary) throw Error(ErrorKind::FormatError, "data after summary line");
            auto j = json::parse(line);
            const auto type = j.at("type").get<std::string>();
            if (!header) {
                if (type != "header" || j.at("format").get<std::string>() != kFormatName) {
                    throw Error(ErrorKind::FormatError, "not a run record");
                }
                if (j.at("version").get<int>() != kRunRecordVersion) {
                    throw Error(ErrorKind::FormatError, "unsupported run record version");
                }
                result.stack = IdeaStack(workflow_config_from_json(j.at("config")));
                result.seeds = keywords_from(j.at("seeds"));
                header = true;
            } else if (type == "round") {
                result.stack.append(round_from(j));
            } else if (type == "summary") {
                result.stop_reason = stop_reason_from(j.at("stop_reason").get<std::string>());
                if (!j.at("best_round").is_null()) result.best_round = j["best_round"].get<int>();
                if (!j.at("error").is_null()) result.error = j["error"].get<std::string>();
                summary = true;
            } else {
                throw Error(ErrorKind::FormatError, "unknown line type \"" + type + "\"");
            }
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::FormatError, "run record line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::FormatError) {
            throw Error(ErrorKind::FormatError, "run record line " + std::to_string(line_no) + ": " + e.what());
        }
        throw;
    }
    if (!header || !summary) throw Error(ErrorKind::FormatError, "run record is incomplete");
    return result;
}

std::string render_markdown_report(const RunResult& result) {
    const auto& cfg = result.stack.config();
    std::ostringstream md;
    md << "# Ideation run report\n\n";
    md << "- Seed keywords: " << join_keywords(result.seeds) << "\n";
    md << "- Rounds: " << result.stack.rounds().size() << "\n";
    md << "- Stop reason: " << to_string(result.stop_reason) << "\n";
    md << "- Best round: " << (result.best_round ? std::to_string(*result.best_round) : "none") << "\n";
    if (result.error) md << "- Error: " << *result.error << "\n";
    md << "\n## Configuration\n\n";
    md << "| setting | value |\n|---|---|\n";
    md << "| max neighbors (m) | " << cfg.m << " |\n";
    md << "| max keyword set size (L_max) | " << cfg.l_max << " |\n";
    md << "| max evolve rounds | " << cfg.max_evolve_rounds << " |\n";
    md << "| stop threshold | " << cfg.stop_threshold << " |\n";
    md << "| evolve | " << (cfg.evolve_enabled ? "on" : "off") << " |\n";
    md << "| critic | " << (cfg.critic_enabled ? "on" : "off") << " |\n";
    md << "| papers per relation | " << cfg.cap_papers << " |\n";

    md << "\n## Change log\n\n";
    md << "| round | keywords | change | novelty | feasibility | average |\n|---|---|---|---|---|---|\n";
    for (const auto& r : result.stack.rounds()) {
        std::string change(to_string(r.change.type));
        if (r.change.type == ChangeType::Added) change += " " + r.change.keyword.str();
        if (r.change.type == ChangeType::Replaced) {
            change += " " + r.change.replaced.str() + " -> " + r.change.keyword.str();
        }
        md << "| " << r.round_no << " | " << join_keywords(r.keywords) << " | " << change << " | ";
        if (r.review) {
            std::ostringstream avg;
            avg << r.review->average();
            md << r.review->novelty << " | " << r.review->feasibility << " | " << avg.str() << " |\n";
        } else {
            md << "- | - | - |\n";
        }
    }

    for (const auto& r : result.stack.rounds()) {
        md << "\n## Round " << r.round_no;
        if (result.best_round && *result.best_round == r.round_no) md << " (best)";
        md << "\n\n";
        md << "**Keywords:** " << join_keywords(r.keywords) << "\n\n";
        switch (r.change.type) {
            case ChangeType::Seed: md << "**Change:** seed keywords\n\n"; break;
            case ChangeType::Added:
                md << "**Change:** added `" << r.change.keyword.str() << "` (connected to `"
                   << r.change.connected_to.str() << "`)\n\n**Reason:** " << r.change.reason << "\n\n";
                break;
            case ChangeType::Replaced:
                md << "**Change:** replaced `" << r.change.replaced.str() << "` with `" << r.change.keyword.str()
                   << "` (connected to `" << r.change.connected_to.str() << "`)\n\n**Reason:** " << r.change.reason
                   << "\n\n";
                break;
            case ChangeType::Rewrite: md << "**Change:** idea rewrite\n\n"; break;
        }
        if (r.route) {
            md << "**Router:** " << to_string(r.route->action) << (r.route->defaulted ? " (defaulted)" : "")
               << ": " << r.route->reason << "\n\n";
        }
        md << "### Research Background\n\n" << r.idea.background << "\n\n";
        md << "### Research Idea\n\n" << r.idea.idea << "\n\n";
        md << "### Implementation Approach\n\n" << r.idea.implementation << "\n\n";
        if (!r.idea.cited_paper_ids.empty()) {
            md << "**Related papers:** ";
            for (std::size_t i = 0; i < r.idea.cited_paper_ids.size(); ++i) {
                md << (i ? ", " : "") << r.idea.cited_paper_ids[i];
            }
            md << "\n\n";
        }
        if (r.review) {
            md << "**Novelty:** " << score_text(r.review->novelty, r.review->novelty_desc) << "\n\n";
            md << "**Feasibility:** " << score_text(r.review->feasibility, r.review->feasibility_desc) << "\n\n";
        } else {
            md << "**Review:** not available\n\n";
        }
        if (!r.note.empty()) md << "**Note:** " << r.note << "\n\n";
    }
    return md.str();
}

} // namespace ideation
