#include <doctest.h>

#include <deque>

#include "ideation/gateway.hpp"
#include "ideation/llm.hpp"
#include "ideation/structured.hpp"

using namespace ideation;

namespace {

class FakeTransport : public HttpTransport {
public:
    explicit FakeTransport(std::deque<HttpResult> results) : results_(std::move(results)) {}
    HttpResult post_json(const std::string& path, const std::string& body,
                         const std::vector<std::pair<std::string, std::string>>& headers) override {
        paths.push_back(path);
        bodies.push_back(body);
        last_headers = headers;
        auto r = results_.front();
        results_.pop_front();
        return r;
    }
    std::vector<std::string> paths;
    std::vector<std::string> bodies;
    std::vector<std::pair<std::string, std::string>> last_headers;

private:
    std::deque<HttpResult> results_;
};

std::string completion(const std::string& text) {
    return nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", text}}}, {"finish_reason", "stop"}}}},
                          {"usage", {{"prompt_tokens", 5}, {"completion_tokens", 2}}}}
        .dump();
}

ChatRequest request() {
    ChatRequest r;
    r.template_id = TemplateId::Router;
    r.messages = {{"user", "hello"}};
    r.temperature = 0.2;
    return r;
}

struct Harness {
    FakeTransport* transport = nullptr;
    std::vector<std::chrono::milliseconds> sleeps;
    std::unique_ptr<RemoteProvider> provider;

    explicit Harness(std::deque<HttpResult> results) {
        auto t = std::make_unique<FakeTransport>(std::move(results));
        transport = t.get();
        RemoteConfig cfg;
        cfg.api_key = "secret";
        cfg.model = "test-model";
        provider = std::make_unique<RemoteProvider>(cfg, std::move(t),
                                                    [this](std::chrono::milliseconds d) { sleeps.push_back(d); });
    }
};

} // namespace

TEST_CASE("remote provider backs off on 429 then succeeds") {
    Harness h({{429, "slow down", ""}, {429, "slow down", ""}, {200, completion("done"), ""}});
    auto response = h.provider->send(request());
    CHECK(response.text == "done");
    CHECK(response.usage.prompt_tokens == 5);
    CHECK(h.transport->paths.size() == 3);
    REQUIRE(h.sleeps.size() == 2);
    CHECK(h.sleeps[0] == std::chrono::milliseconds(500));
    CHECK(h.sleeps[1] == std::chrono::milliseconds(1000));
    CHECK(h.transport->paths[0] == "/chat/completions");
    CHECK(h.transport->last_headers.at(0).second == "Bearer secret");

    const auto body = nlohmann::json::parse(h.transport->bodies[0]);
    CHECK(body["model"] == "test-model");
    CHECK(body["temperature"] == doctest::Approx(0.2));
    CHECK(body["messages"][0]["role"] == "user");
}

TEST_CASE("remote provider gives up on client errors and exhausted budgets") {
    SUBCASE("400 is not retried") {
        Harness h({{400, "bad", ""}});
        try {
            h.provider->send(request());
            FAIL("expected transport error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Transport);
        }
        CHECK(h.sleeps.empty());
    }
    SUBCASE("5xx and network failures exhaust the budget") {
        Harness h({{503, "", ""}, {0, "", "connection refused"}, {500, "", ""}, {502, "", ""}, {504, "", ""}});
        try {
            h.provider->send(request());
            FAIL("expected transport error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Transport);
            CHECK(std::string(e.what()).find("5 attempts") != std::string::npos);
        }
        CHECK(h.sleeps.size() == 4);
    }
    SUBCASE("malformed body") {
        Harness h({{200, "{\"choices\":[]}", ""}});
        try {
            h.provider->send(request());
            FAIL("expected transport error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Transport);
        }
    }
}

TEST_CASE("retry delays grow and are capped") {
    RetryPolicy p;
    CHECK(p.delay_for(0).count() == 500);
    CHECK(p.delay_for(3).count() == 4000);
    CHECK(p.delay_for(20).count() == 30000);
}

TEST_CASE("scripted provider replays, cycles and underruns") {
    auto provider = ScriptedProvider::from_json(nlohmann::json::parse(R"({
        "router": ["one", "two"],
        "review": {"replies": ["again"], "cycle": true}
    })"));
    auto req = request();
    CHECK(complete(*provider, req) == "one");
    CHECK(complete(*provider, req) == "two");
    try {
        complete(*provider, req);
        FAIL("expected underrun");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ScriptUnderrun);
    }
    req.template_id = TemplateId::Review;
    for (int i = 0; i < 5; ++i) CHECK(complete(*provider, req) == "again");
    CHECK(provider->calls(TemplateId::Review) == 5);

    try {
        ScriptedProvider::from_json(nlohmann::json::parse(R"({"nope": []})"));
        FAIL("expected unknown template");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownTemplate);
    }
}

TEST_CASE("gateway re-asks on unparseable replies only") {
    const auto prompts = PromptLibrary::builtin();
    const Bindings bindings = {{"research_idea", "i"}, {"keywords", "k"}, {"novelty_score_desc", "n"},
                               {"feasibility_score_desc", "f"}};
    auto parse = [](const std::string& t) { return parse_structured(ReplyKind::Router, t); };

    ScriptedProvider provider;
    provider.add_reply(TemplateId::Router, "ACTION: maybe\nREASON: r");
    provider.add_reply(TemplateId::Router, "nothing useful");
    provider.add_reply(TemplateId::Router, "ACTION: Idea_Rewrite\nREASON: r");
    Gateway gateway(provider, prompts);
    CHECK(gateway.ask_parsed(TemplateId::Router, bindings, parse).at(labels::kAction) == "Idea_Rewrite");
    CHECK(provider.calls(TemplateId::Router) == 3);

    const auto req = gateway.build_request(TemplateId::IdeaFormulation, {{"keywords", "k"}, {"status_bar", "s"}});
    CHECK(req.temperature == doctest::Approx(0.7));
    CHECK(req.messages.size() == 1);
    CHECK(req.messages[0].role == "user");

    ScriptedProvider bad;
    for (int i = 0; i < 4; ++i) bad.add_reply(TemplateId::Router, "ACTION: none\nREASON: r");
    Gateway g2(bad, prompts);
    try {
        g2.ask_parsed(TemplateId::Router, bindings, parse);
        FAIL("expected invalid action");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidAction);
    }
    CHECK(bad.calls(TemplateId::Router) == 4);

    ScriptedProvider empty;
    Gateway g3(empty, prompts);
    try {
        g3.ask_parsed(TemplateId::Router, bindings, parse);
        FAIL("expected underrun");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ScriptUnderrun);
    }
}
