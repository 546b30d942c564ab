#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ideation/error.hpp"
#include "ideation/prompts.hpp"

namespace ideation {

struct ChatMessage {
    std::string role;
    std::string content;
};

struct ChatRequest {
    TemplateId template_id = TemplateId::RelationAnalysis;
    std::string model;
    std::vector<ChatMessage> messages;
    double temperature = 0.2;
    int max_tokens = 2048;
};

struct TokenUsage {
    int prompt_tokens = 0;
    int completion_tokens = 0;
};

struct ChatResponse {
    std::string text;
    std::string finish_reason;
    TokenUsage usage;
};

/// A chat endpoint. Implementations must be safe for concurrent calls.
class ChatProvider {
public:
    virtual ~ChatProvider() = default;
    virtual ChatResponse send(const ChatRequest& request) = 0;
    /// Model name or script hash, recorded in run manifests.
    virtual std::string identity() const = 0;
};

/// Validates the request and returns the assistant text.
std::string complete(ChatProvider& provider, const ChatRequest& request);

/// Replays canned replies keyed by (template id, call index).
///
/// Script file: a JSON object mapping template ids to either an array of reply
/// strings or {"replies": [...], "cycle": true}. A cycling key wraps around
/// instead of running out, which keeps relation-analysis scripts short.
class ScriptedProvider : public ChatProvider {
public:
    ScriptedProvider() = default;

    static std::unique_ptr<ScriptedProvider> from_json(const nlohmann::json& script,
                                                       std::string identity = "scripted");
    static std::unique_ptr<ScriptedProvider> from_file(const std::filesystem::path& path);

    void add_reply(TemplateId id, std::string reply);
    void set_cycle(TemplateId id, bool cycle);

    ChatResponse send(const ChatRequest& request) override;
    std::string identity() const override { return identity_; }

    std::size_t calls(TemplateId id) const;
    std::size_t total_calls() const;
    /// Prompts received so far, in call order.
    std::vector<std::pair<TemplateId, std::string>> transcript() const;

private:
    struct Script {
        std::vector<std::string> replies;
        bool cycle = false;
        std::size_t cursor = 0;
    };

    mutable std::mutex mutex_;
    std::map<TemplateId, Script> scripts_;
    std::vector<std::pair<TemplateId, std::string>> transcript_;
    std::string identity_ = "scripted";
};

struct RetryPolicy {
    int max_retries = 4;
    std::chrono::milliseconds base_delay{500};
    double multiplier = 2.0;
    std::chrono::milliseconds max_delay{30000};

    std::chrono::milliseconds delay_for(int retry) const;
};

struct HttpResult {
    int status = 0;       // 0 when no HTTP response arrived
    std::string body;
    std::string error;    // transport failure description when status == 0
};

class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResult post_json(const std::string& path, const std::string& body,
                                 const std::vector<std::pair<std::string, std::string>>& headers) = 0;
};

/// cpp-httplib backed transport. `base_url` is scheme://host[:port][/prefix].
std::unique_ptr<HttpTransport> make_http_transport(const std::string& base_url,
                                                   std::chrono::seconds timeout);

struct RemoteConfig {
    std::string base_url = "https://api.openai.com/v1";
    std::string model = "gpt-4o-mini";
    std::string api_key;
    std::chrono::seconds timeout{60};
    RetryPolicy retry;

    /// Reads <PREFIX>_BASE_URL, <PREFIX>_MODEL and <PREFIX>_API_KEY. Unset
    /// variables keep their defaults.
    static RemoteConfig from_env(const std::string& prefix = "IDEATION");
};

/// Chat-completions client. Timeouts, connection failures, 408, 429 and 5xx
/// are retried with exponential backoff; other statuses fail at once.
class RemoteProvider : public ChatProvider {
public:
    using Sleeper = std::function<void(std::chrono::milliseconds)>;

    explicit RemoteProvider(RemoteConfig config);
    RemoteProvider(RemoteConfig config, std::unique_ptr<HttpTransport> transport, Sleeper sleeper);

    ChatResponse send(const ChatRequest& request) override;
    std::string identity() const override { return config_.model; }

    static nlohmann::json request_body(const ChatRequest& request, const std::string& default_model);

private:
    RemoteConfig config_;
    std::unique_ptr<HttpTransport> transport_;
    Sleeper sleeper_;
};

} // namespace ideation
