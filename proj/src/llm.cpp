#include "ideation/llm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "ideation/hash.hpp"

namespace ideation {

std::string complete(ChatProvider& provider, const ChatRequest& request) {
    if (request.messages.empty()) {
        throw Error(ErrorKind::Transport, "chat request has no messages");
    }
    if (!(request.temperature >= 0.0)) {
        throw Error(ErrorKind::Transport, "chat request temperature must be >= 0");
    }
    return provider.send(request).text;
}

// ---- scripted ---------------------------------------------------------------

std::unique_ptr<ScriptedProvider> ScriptedProvider::from_json(const nlohmann::json& script,
                                                              std::string identity) {
    if (!script.is_object()) {
        throw Error(ErrorKind::Config, "mock script must be a JSON object keyed by template id");
    }
    auto provider = std::make_unique<ScriptedProvider>();
    provider->identity_ = std::move(identity);
    for (const auto& [key, value] : script.items()) {
        auto id = parse_template_id(key);
        if (!id) throw Error(ErrorKind::UnknownTemplate, "mock script: unknown template \"" + key + "\"");
        const nlohmann::json* replies = &value;
        if (value.is_object()) {
            if (!value.contains("replies")) {
                throw Error(ErrorKind::Config, "mock script: \"" + key + "\" needs a \"replies\" array");
            }
            replies = &value["replies"];
            provider->set_cycle(*id, value.value("cycle", false));
        }
        if (!replies->is_array()) {
            throw Error(ErrorKind::Config, "mock script: \"" + key + "\" replies must be an array");
        }
        for (const auto& r : *replies) {
            if (!r.is_string()) throw Error(ErrorKind::Config, "mock script: replies must be strings");
            provider->add_reply(*id, r.get<std::string>());
        }
    }
    return provider;
}

std::unique_ptr<ScriptedProvider> ScriptedProvider::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open mock script \"" + path.string() + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto text = buf.str();
    nlohmann::json script;
    try {
        script = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Config, "mock script \"" + path.string() + "\" is not valid JSON: " + e.what());
    }
    return from_json(script, "script:sha256:" + sha256_hex(text));
}

void ScriptedProvider::add_reply(TemplateId id, std::string reply) {
    std::lock_guard lock(mutex_);
    scripts_[id].replies.push_back(std::move(reply));
}

void ScriptedProvider::set_cycle(TemplateId id, bool cycle) {
    std::lock_guard lock(mutex_);
    scripts_[id].cycle = cycle;
}

ChatResponse ScriptedProvider::send(const ChatRequest& request) {
    std::lock_guard lock(mutex_);
    std::string prompt;
    for (const auto& m : request.messages) prompt += m.content;
    transcript_.emplace_back(request.template_id, std::move(prompt));

    auto& script = scripts_[request.template_id];
    const auto index = script.cursor++;
    if (script.replies.empty() || (!script.cycle && index >= script.replies.size())) {
        throw Error(ErrorKind::ScriptUnderrun, "mock script has no reply #" + std::to_string(index + 1) +
                                                   " for " + std::string(to_string(request.template_id)));
    }
    ChatResponse response;
    response.text = script.replies[index % script.replies.size()];
    response.finish_reason = "stop";
    return response;
}

std::size_t ScriptedProvider::calls(TemplateId id) const {
    std::lock_guard lock(mutex_);
    auto it = scripts_.find(id);
    return it == scripts_.end() ? 0 : it->second.cursor;
}

std::size_t ScriptedProvider::total_calls() const {
    std::lock_guard lock(mutex_);
    return transcript_.size();
}

std::vector<std::pair<TemplateId, std::string>> ScriptedProvider::transcript() const {
    std::lock_guard lock(mutex_);
    return transcript_;
}

// ---- remote -----------------------------------------------------------------

std::chrono::milliseconds RetryPolicy::delay_for(int retry) const {
    const double raw = static_cast<double>(base_delay.count()) * std::pow(multiplier, retry);
    const double capped = std::min(raw, static_cast<double>(max_delay.count()));
    return std::chrono::milliseconds(static_cast<long long>(capped));
}

RemoteConfig RemoteConfig::from_env(const std::string& prefix) {
    RemoteConfig cfg;
    if (const char* v = std::getenv((prefix + "_BASE_URL").c_str()); v && *v) cfg.base_url = v;
    if (const char* v = std::getenv((prefix + "_MODEL").c_str()); v && *v) cfg.model = v;
    if (const char* v = std::getenv((prefix + "_API_KEY").c_str()); v && *v) cfg.api_key = v;
    return cfg;
}

RemoteProvider::RemoteProvider(RemoteConfig config)
    : RemoteProvider(config, make_http_transport(config.base_url, config.timeout),
                     [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {}

RemoteProvider::RemoteProvider(RemoteConfig config, std::unique_ptr<HttpTransport> transport,
                               Sleeper sleeper)
    : config_(std::move(config)), transport_(std::move(transport)), sleeper_(std::move(sleeper)) {}

nlohmann::json RemoteProvider::request_body(const ChatRequest& request, const std::string& default_model) {
    nlohmann::json messages = nlohmann::json::array();
    for (const auto& m : request.messages) {
        messages.push_back({{"role", m.role}, {"content", m.content}});
    }
    return {
        {"model", request.model.empty() ? default_model : request.model},
        {"messages", std::move(messages)},
        {"temperature", request.temperature},
        {"max_tokens", request.max_tokens},
    };
}

namespace {

bool retryable(const HttpResult& r) {
    return r.status == 0 || r.status == 408 || r.status == 429 || (r.status >= 500 && r.status < 600);
}

ChatResponse parse_completion(const std::string& body) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorKind::Transport, "chat endpoint returned non-JSON body");
    }
    ChatResponse out;
    try {
        const auto& choice = j.at("choices").at(0);
        const auto& content = choice.at("message").at("content");
        out.text = content.is_string() ? content.get<std::string>() : std::string{};
        if (auto fr = choice.find("finish_reason"); fr != choice.end() && fr->is_string()) {
            out.finish_reason = fr->get<std::string>();
        }
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorKind::Transport, "chat endpoint response has no choices[0].message.content");
    }
    if (auto usage = j.find("usage"); usage != j.end() && usage->is_object()) {
        out.usage.prompt_tokens = usage->value("prompt_tokens", 0);
        out.usage.completion_tokens = usage->value("completion_tokens", 0);
    }
    return out;
}

} // namespace

ChatResponse RemoteProvider::send(const ChatRequest& request) {
    const auto body = request_body(request, config_.model).dump();
    std::vector<std::pair<std::string, std::string>> headers;
    if (!config_.api_key.empty()) headers.emplace_back("Authorization", "Bearer " + config_.api_key);

    std::string last_error;
    for (int attempt = 0; attempt <= config_.retry.max_retries; ++attempt) {
        if (attempt > 0) sleeper_(config_.retry.delay_for(attempt - 1));
        auto result = transport_->post_json("/chat/completions", body, headers);
        if (result.status >= 200 && result.status < 300) {
            return parse_completion(result.body);
        }
        last_error = result.status == 0 ? result.error
                                        : "HTTP " + std::to_string(result.status) + ": " + result.body.substr(0, 200);
        if (!retryable(result)) {
            throw Error(ErrorKind::Transport, "chat endpoint rejected request: " + last_error);
        }
    }
    throw Error(ErrorKind::Transport, "retry budget exhausted after " +
                                          std::to_string(config_.retry.max_retries + 1) +
                                          " attempts: " + last_error);
}

} // namespace ideation
