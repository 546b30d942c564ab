#pragma once

#include <map>
#include <string>

#include "ideation/llm.hpp"
#include "ideation/prompts.hpp"

namespace ideation {

struct GatewayOptions {
    /// Empty uses the provider's configured model.
    std::string model;
    /// Send each rendered template as a system message instead of a user message.
    bool instructions_as_system = false;
    /// Re-asks after a reply fails to parse or validate.
    int parse_retries = 3;
    int max_tokens = 2048;
    std::map<TemplateId, double> temperatures = {
        {TemplateId::RelationAnalysis, 0.2},   {TemplateId::KeywordSelection, 0.2},
        {TemplateId::KeywordReplacement, 0.2}, {TemplateId::IdeaFormulation, 0.7},
        {TemplateId::Review, 0.2},             {TemplateId::Router, 0.2},
        {TemplateId::Extraction, 0.2},
    };
};

/// Renders a template, sends it, and hands the reply to a parser. This is the
/// handle every LLM-backed step takes.
class Gateway {
public:
    Gateway(ChatProvider& provider, const PromptLibrary& prompts, GatewayOptions options = {})
        : provider_(&provider), prompts_(&prompts), options_(std::move(options)) {}

    ChatRequest build_request(TemplateId id, const Bindings& bindings) const;

    /// One round trip, no parsing.
    std::string ask(TemplateId id, const Bindings& bindings);

    /// Asks up to `attempts` times (default 1 + parse_retries) until `parse`
    /// succeeds. Only parse/validation errors trigger a re-ask; transport and
    /// script errors propagate immediately. The last parse error is rethrown.
    template <typename Parse>
    auto ask_parsed(TemplateId id, const Bindings& bindings, Parse&& parse, int attempts = -1)
        -> decltype(parse(std::string{})) {
        if (attempts < 1) attempts = 1 + options_.parse_retries;
        const auto request = build_request(id, bindings);
        for (int attempt = 1;; ++attempt) {
            auto text = complete(*provider_, request);
            try {
                return parse(text);
            } catch (const Error& e) {
                if (!is_retryable_reply_error(e.kind()) || attempt >= attempts) throw;
            }
        }
    }

    static bool is_retryable_reply_error(ErrorKind kind);

    ChatProvider& provider() const { return *provider_; }
    const PromptLibrary& prompts() const { return *prompts_; }
    const GatewayOptions& options() const { return options_; }

private:
    ChatProvider* provider_;
    const PromptLibrary* prompts_;
    GatewayOptions options_;
};

} // namespace ideation
