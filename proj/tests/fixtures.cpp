#include "fixtures.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "ideation/critic.hpp"
#include "ideation/toy_corpus.hpp"

#ifndef IDEATION_CLI_PATH
#define IDEATION_CLI_PATH "ideation"
#endif

namespace fixtures {

namespace {

struct Candidate {
    std::string keyword;
    std::string anchor;
};

std::vector<Candidate> candidates_in(const std::string& prompt) {
    static const std::regex re(R"(\d+\. Candidate keyword: ([^\n]*)\n   Connected to: ([^\n]*)\n)");
    std::vector<Candidate> out;
    for (std::sregex_iterator it(prompt.begin(), prompt.end(), re), end; it != end; ++it) {
        out.push_back({(*it)[1].str(), (*it)[2].str()});
    }
    return out;
}

std::vector<std::string> flexible_in(const std::string& prompt) {
    const std::string marker = "The flexible keywords set of which keywords can be replaced is:\n";
    auto pos = prompt.find(marker);
    if (pos == std::string::npos) return {};
    pos += marker.size();
    const auto line = prompt.substr(pos, prompt.find('\n', pos) - pos);
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= line.size()) {
        auto comma = line.find(", ", start);
        if (comma == std::string::npos) comma = line.size();
        if (comma > start) out.push_back(line.substr(start, comma - start));
        start = comma + 2;
    }
    return out;
}

} // namespace

std::string proposal_text(int n) {
    const auto s = std::to_string(n);
    return "Research Background:\nBackground paragraph " + s + ".\n\nResearch Idea:\nIdea paragraph " + s +
           ".\n\nImplementation Approach:\nImplementation paragraph " + s + ".";
}

std::string review_text(int novelty, int feasibility) {
    return "Novelty Score and Description: " + std::to_string(novelty) + " - novelty rationale\n" +
           "Feasibility Score and Description: " + std::to_string(feasibility) + " - feasibility rationale";
}

std::string PlanningProvider::reply_for(TemplateId id, const std::string& prompt) {
    const auto n = replies_[id].size();
    switch (id) {
        case TemplateId::RelationAnalysis:
            return "Relation note " + std::to_string(n + 1) + ": the paper uses both concepts in one method.";
        case TemplateId::Extraction: return "KEYWORDS: alpha; beta; gamma";
        case TemplateId::IdeaFormulation: return proposal_text(static_cast<int>(n) + 1);
        case TemplateId::Review: {
            const auto& r = reviews_.empty() ? std::pair{3, 3} : reviews_[std::min(n, reviews_.size() - 1)];
            return review_text(r.first, r.second);
        }
        case TemplateId::Router:
            return n % 2 == 0 ? "ACTION: Keyword_Replacement\nREASON: explore a new direction"
                              : "ACTION: Idea_Rewrite\nREASON: sharpen the current idea";
        case TemplateId::KeywordSelection: {
            const auto cands = candidates_in(prompt);
            if (cands.empty()) return "NEW_KEYWORD: none";
            const auto& c = cands[n % cands.size()];
            return "NEW_KEYWORD: " + c.keyword + "\nCONNECTED_TO: " + c.anchor +
                   "\nREASON_FOR_SELECTION: it links to the current set";
        }
        case TemplateId::KeywordReplacement: {
            const auto cands = candidates_in(prompt);
            const auto flexible = flexible_in(prompt);
            for (std::size_t i = 0; i < cands.size(); ++i) {
                const auto& c = cands[(n + i) % cands.size()];
                for (const auto& f : flexible) {
                    if (f != c.anchor) {
                        return "REPLACEMENT_KEYWORD: " + c.keyword + "\nCONNECTED_TO: " + c.anchor +
                               "\nREPLACED_KEYWORD: " + f + "\nREASON_FOR_REPLACEMENT: broaden the idea";
                    }
                }
            }
            return "REPLACEMENT_KEYWORD: none";
        }
    }
    return {};
}

ChatResponse PlanningProvider::send(const ChatRequest& request) {
    std::string prompt;
    for (const auto& m : request.messages) prompt += m.content;
    auto text = reply_for(request.template_id, prompt);
    replies_[request.template_id].push_back(text);
    return {text, "stop", {}};
}

nlohmann::json PlanningProvider::script() const {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [id, replies] : replies_) out[std::string(to_string(id))] = replies;
    return out;
}

std::size_t PlanningProvider::calls(TemplateId id) const {
    auto it = replies_.find(id);
    return it == replies_.end() ? 0 : it->second.size();
}

SciNetwork toy_network(std::size_t papers, std::uint64_t seed, std::size_t min_k, std::size_t max_k,
                       std::size_t vocabulary) {
    ToyCorpusOptions opts;
    opts.papers = papers;
    opts.seed = seed;
    opts.min_keywords = min_k;
    opts.max_keywords = max_k;
    opts.vocabulary = vocabulary;
    SciNetwork net;
    for (const auto& p : generate_toy_corpus(opts)) {
        std::vector<Keyword> ks;
        for (const auto& k : *p.keywords) ks.push_back(Keyword::from_raw(k));
        net.add_paper(p, ks);
    }
    return net;
}

nlohmann::json plan_script(const SciNetwork& net, const std::vector<Keyword>& seeds, const WorkflowConfig& cfg,
                           std::vector<std::pair<int, int>> reviews) {
    SciNetwork copy = net;
    PlanningProvider planner(std::move(reviews));
    const auto prompts = PromptLibrary::builtin();
    Gateway gateway(planner, prompts);
    Critic critic(gateway);
    Workflow wf(copy, gateway, cfg.critic_enabled ? &critic : nullptr, cfg);
    auto result = wf.run(seeds);
    if (result.error) throw std::runtime_error("planned run failed: " + *result.error);
    return planner.script();
}

TempDir::TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "ideation-test-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    path = tmpl;
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path);
}

ProcessResult run_cli_process(const std::vector<std::string>& args) {
    TempDir capture;
    const auto out_path = capture.file("stdout");
    const auto err_path = capture.file("stderr");
    const pid_t pid = fork();
    if (pid < 0) throw std::runtime_error("fork failed");
    if (pid == 0) {
        if (!freopen(out_path.c_str(), "w", stdout) || !freopen(err_path.c_str(), "w", stderr)) _exit(127);
        std::vector<char*> argv;
        std::string exe = IDEATION_CLI_PATH;
        argv.push_back(exe.data());
        std::vector<std::string> copy = args;
        for (auto& a : copy) argv.push_back(a.data());
        argv.push_back(nullptr);
        execv(exe.c_str(), argv.data());
        _exit(127);
    }
    int status = 0;
    waitpid(pid, &status, 0);
    ProcessResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out_path);
    r.err = read_file(err_path);
    return r;
}

} // namespace fixtures
