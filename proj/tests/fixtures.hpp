#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ideation/llm.hpp"
#include "ideation/network.hpp"
#include "ideation/workflow.hpp"

namespace fixtures {

using namespace ideation;

/// Answers every prompt validly by reading the candidates and flexible
/// keywords out of the rendered text, and records each reply so a run can be
/// replayed with ScriptedProvider.
class PlanningProvider : public ChatProvider {
public:
    /// Reviews are consumed in order; once exhausted the last one repeats.
    explicit PlanningProvider(std::vector<std::pair<int, int>> reviews = {{3, 3}})
        : reviews_(std::move(reviews)) {}

    ChatResponse send(const ChatRequest& request) override;
    std::string identity() const override { return "planner"; }

    /// Script JSON keyed by template id holding every reply given so far.
    nlohmann::json script() const;
    std::size_t calls(TemplateId id) const;

private:
    std::string reply_for(TemplateId id, const std::string& prompt);

    std::vector<std::pair<int, int>> reviews_;
    std::map<TemplateId, std::vector<std::string>> replies_;
};

std::string proposal_text(int n);
std::string review_text(int novelty, int feasibility);

/// Network built from the toy generator; `min_k`/`max_k` keywords per paper.
SciNetwork toy_network(std::size_t papers, std::uint64_t seed, std::size_t min_k = 3, std::size_t max_k = 4,
                       std::size_t vocabulary = 60);

/// Plans a run over `net` and returns the replayable script.
nlohmann::json plan_script(const SciNetwork& net, const std::vector<Keyword>& seeds, const WorkflowConfig& cfg,
                           std::vector<std::pair<int, int>> reviews = {{3, 3}});

/// Scratch directory removed on destruction.
struct TempDir {
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    std::string path;
    std::string file(const std::string& name) const { return path + "/" + name; }
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

struct ProcessResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Runs the built ideation binary in a child process.
ProcessResult run_cli_process(const std::vector<std::string>& args);

} // namespace fixtures
