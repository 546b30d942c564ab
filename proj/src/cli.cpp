#include "ideation/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ideation/config_file.hpp"
#include "ideation/critic.hpp"
#include "ideation/extraction.hpp"
#include "ideation/hash.hpp"
#include "ideation/manifest.hpp"
#include "ideation/relation.hpp"
#include "ideation/run_record.hpp"
#include "ideation/snapshot.hpp"
#include "ideation/toy_corpus.hpp"
#include "ideation/workflow.hpp"

namespace fs = std::filesystem;

namespace ideation {

namespace {

using Clock = std::chrono::steady_clock;

// A workflow failure already rendered as "kind: message".
struct RunAborted {
    std::string kind;
    std::string message;
};

std::string read_text(const fs::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, std::string("cannot read ") + what + " \"" + path.string() + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write \"" + path.string() + "\"");
    out << text;
    if (!out.flush()) throw Error(ErrorKind::Io, "failed writing \"" + path.string() + "\"");
}

SciNetwork load_snapshot(const fs::path& path) {
    if (!fs::exists(path)) throw Error(ErrorKind::Io, "snapshot not found: \"" + path.string() + "\"");
    return snapshot_load_file(path);
}

fs::path manifest_path_for(const fs::path& output) { return fs::path(output.string() + ".manifest.json"); }

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<Keyword> to_keywords(const std::vector<std::string>& raw) {
    std::vector<Keyword> out;
    for (const auto& r : raw) out.push_back(Keyword::from_raw(r));
    return out;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads; rethrows the first failure.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first;
    std::mutex first_mutex;
    auto worker = [&] {
        for (std::size_t i; !failed && (i = next++) < n;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(first_mutex);
                if (!first) first = std::current_exception();
                failed = true;
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }
    if (first) std::rethrow_exception(first);
}

// Options shared by every command that may talk to a model.
struct LlmOptions {
    std::string mock_script;
    std::string prompts_dir;
    std::string config_path;
    std::string model;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--mock-script", mock_script, "Scripted provider replies (JSON); no network")
            ->check(CLI::ExistingFile);
        cmd->add_option("--prompts-dir", prompts_dir, "Override prompt templates from <dir>/<id>.txt");
        cmd->add_option("--config", config_path, "Config file (key = value)");
        cmd->add_option("--model", model, "Model name for the remote provider");
    }
};

// Lazily constructed provider + gateway so commands that never call the
// model do not need credentials.
class LlmSession {
public:
    LlmSession(const LlmOptions& opts, const ConfigValues& config) : opts_(opts) {
        remote_ = RemoteConfig::from_env();
        apply_config(config, gateway_options_, remote_);
        if (!opts.model.empty()) {
            gateway_options_.model = opts.model;
            remote_.model = opts.model;
        }
        prompts_ = opts.prompts_dir.empty() ? PromptLibrary::builtin() : PromptLibrary::from_directory(opts.prompts_dir);
    }

    Gateway& gateway() {
        if (!gateway_) {
            if (!opts_.mock_script.empty()) {
                provider_ = ScriptedProvider::from_file(opts_.mock_script);
            } else {
                if (remote_.api_key.empty()) {
                    throw Error(ErrorKind::Config,
                                "no model provider configured: pass --mock-script or set IDEATION_API_KEY");
                }
                provider_ = std::make_unique<RemoteProvider>(remote_);
            }
            gateway_ = std::make_unique<Gateway>(*provider_, prompts_, gateway_options_);
        }
        return *gateway_;
    }

    bool used() const { return provider_ != nullptr; }
    std::string identity() const { return provider_ ? provider_->identity() : std::string(); }

    void record_inputs(RunManifest& m) const {
        if (!opts_.mock_script.empty()) m.inputs[opts_.mock_script] = sha256_file(opts_.mock_script);
        if (!opts_.config_path.empty()) m.inputs[opts_.config_path] = sha256_file(opts_.config_path);
        if (!opts_.prompts_dir.empty()) {
            for (auto id : kAllTemplates) {
                auto p = fs::path(opts_.prompts_dir) / (std::string(to_string(id)) + ".txt");
                if (fs::exists(p)) m.inputs[p.string()] = sha256_file(p);
            }
        }
        m.provider = identity();
    }

private:
    LlmOptions opts_;
    RemoteConfig remote_;
    GatewayOptions gateway_options_;
    PromptLibrary prompts_;
    std::unique_ptr<ChatProvider> provider_;
    std::unique_ptr<Gateway> gateway_;
};

ConfigValues load_optional_config(const std::string& path) {
    return path.empty() ? ConfigValues{} : load_config_file(path);
}

// ---- ingest ---------------------------------------------------------------

struct IngestArgs {
    std::string corpus;
    std::string base;
    std::string out;
    std::size_t jobs = 4;
    bool skip_invalid = false;
    LlmOptions llm;
};

int cmd_ingest(const IngestArgs& a, std::ostream& out, std::ostream& err) {
    const auto start = Clock::now();
    RunManifest manifest;
    manifest.command = "ingest";
    manifest.started_at = utc_timestamp();

    std::ifstream in(a.corpus, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read corpus \"" + a.corpus + "\"");
    auto parsed = parse_corpus(in);
    for (const auto& e : parsed.errors) {
        err << a.corpus << ":" << e.line << ": " << to_string(e.kind) << ": " << e.message << "\n";
    }
    if (!parsed.ok() && !a.skip_invalid) {
        throw Error(parsed.errors.front().kind,
                    std::to_string(parsed.errors.size()) + " invalid corpus record(s) in \"" + a.corpus +
                        "\" (use --skip-invalid to ingest the rest)");
    }

    SciNetwork net = a.base.empty() ? SciNetwork{} : load_snapshot(a.base);
    std::vector<const PaperRecord*> fresh;
    for (const auto& p : parsed.records) {
        if (net.has_paper(p.id)) {
            if (net.paper(p.id) != p) {
                throw Error(ErrorKind::DuplicateId, "paper \"" + p.id + "\" already in the snapshot with different content");
            }
            continue;
        }
        fresh.push_back(&p);
    }

    LlmSession session(a.llm, load_optional_config(a.llm.config_path));
    Gateway* gateway = nullptr;
    if (std::any_of(fresh.begin(), fresh.end(), [](const PaperRecord* p) { return !p->keywords; })) {
        gateway = &session.gateway();
    }
    // Records with keywords never reach the provider, so an empty script is enough for them.
    ScriptedProvider no_calls;
    const auto builtin = PromptLibrary::builtin();
    Gateway bypass(no_calls, builtin);
    std::vector<std::vector<Keyword>> keywords(fresh.size());
    parallel_for(fresh.size(), a.jobs, [&](std::size_t i) {
        keywords[i] = extract_keywords(*fresh[i], fresh[i]->keywords ? bypass : *gateway);
    });
    for (std::size_t i = 0; i < fresh.size(); ++i) net.add_paper(*fresh[i], keywords[i]);

    snapshot_save_file(net, a.out);
    manifest.inputs[a.corpus] = sha256_file(a.corpus);
    if (!a.base.empty()) manifest.inputs[a.base] = sha256_file(a.base);
    session.record_inputs(manifest);
    manifest.config = {{"jobs", a.jobs}, {"skip_invalid", a.skip_invalid}};
    manifest.outputs["snapshot"] = a.out;
    manifest.outputs["manifest"] = manifest_path_for(a.out).string();
    manifest.elapsed_seconds = seconds_since(start);
    write_manifest(manifest, manifest_path_for(a.out));

    out << "ingested " << fresh.size() << " paper(s), skipped " << parsed.records.size() - fresh.size()
        << " already present; " << net.node_count() << " keywords, " << net.edge_count() << " edges -> " << a.out
        << "\n";
    return kExitOk;
}

// ---- relate ---------------------------------------------------------------

struct RelateArgs {
    std::string snapshot;
    std::string out;
    std::vector<std::string> keywords;
    bool all = false;
    std::size_t m = 12;
    std::size_t cap_papers = 3;
    std::size_t jobs = 4;
    LlmOptions llm;
};

int cmd_relate(const RelateArgs& a, std::ostream& out) {
    const auto start = Clock::now();
    RunManifest manifest;
    manifest.command = "relate";
    manifest.started_at = utc_timestamp();
    if (!a.all && a.keywords.empty()) throw Error(ErrorKind::Usage, "relate needs --keyword or --all");

    auto net = load_snapshot(a.snapshot);
    manifest.inputs[a.snapshot] = sha256_file(a.snapshot);

    std::vector<KeywordPair> pairs;
    if (a.all) {
        pairs = net.edges();
    } else {
        std::set<KeywordPair> seen;
        for (const auto& k : to_keywords(a.keywords)) {
            for (const auto& n : net.neighbors(k, a.m)) {
                if (seen.insert(unordered_pair(k, n)).second) pairs.push_back(unordered_pair(k, n));
            }
        }
    }

    LlmSession session(a.llm, load_optional_config(a.llm.config_path));
    const auto before = net.cached_relation_count();
    if (!pairs.empty()) {
        auto& gateway = session.gateway();
        RelationOptions opts{a.cap_papers};
        parallel_for(pairs.size(), a.jobs,
                     [&](std::size_t i) { summarize_relation(net, pairs[i].first, pairs[i].second, gateway, opts); });
    }

    const auto target = a.out.empty() ? a.snapshot : a.out;
    snapshot_save_file(net, target);
    session.record_inputs(manifest);
    manifest.config = {{"m", a.m}, {"cap_papers", a.cap_papers}, {"jobs", a.jobs}, {"all", a.all}, {"keywords", a.keywords}};
    manifest.outputs["snapshot"] = target;
    manifest.outputs["manifest"] = manifest_path_for(target).string();
    manifest.elapsed_seconds = seconds_since(start);
    write_manifest(manifest, manifest_path_for(target));

    out << "summarized " << pairs.size() << " edge(s); " << net.cached_relation_count() - before
        << " new relation text(s) -> " << target << "\n";
    return kExitOk;
}

// ---- graph ----------------------------------------------------------------

struct GraphArgs {
    std::string snapshot;
    std::string keyword;
    std::string queries;
    std::size_t m = 12;
    std::string a;
    std::string b;
};

// One "m<TAB>keyword" query per line; answers "keyword<TAB>m<TAB>n1;n2;..." per line.
int cmd_graph_neighbor_batch(const GraphArgs& g, std::ostream& out) {
    auto net = load_snapshot(g.snapshot);
    std::istringstream in(read_text(g.queries, "query file"));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        std::size_t m = 0;
        try {
            if (tab == std::string::npos) throw std::invalid_argument("no tab");
            m = std::stoul(line.substr(0, tab));
        } catch (const std::exception&) {
            throw Error(ErrorKind::Usage, g.queries + ":" + std::to_string(line_no) + ": expected m<TAB>keyword");
        }
        const auto k = Keyword::from_raw(line.substr(tab + 1));
        out << k.str() << "\t" << m << "\t";
        const auto ranked = net.neighbors(k, m);
        for (std::size_t i = 0; i < ranked.size(); ++i) out << (i ? ";" : "") << ranked[i].str();
        out << "\n";
    }
    return kExitOk;
}

int cmd_graph_neighbors(const GraphArgs& g, std::ostream& out) {
    if (!g.queries.empty()) return cmd_graph_neighbor_batch(g, out);
    if (g.keyword.empty()) throw Error(ErrorKind::Usage, "graph neighbors needs --keyword or --queries");
    auto net = load_snapshot(g.snapshot);
    const auto k = Keyword::from_raw(g.keyword);
    for (const auto& n : net.neighbors(k, g.m)) out << n.str() << "\t" << net.co_papers(k, n).size() << "\n";
    return kExitOk;
}

int cmd_graph_path(const GraphArgs& g, std::ostream& out) {
    auto net = load_snapshot(g.snapshot);
    auto len = net.shortest_path_len(Keyword::from_raw(g.a), Keyword::from_raw(g.b));
    if (len) out << *len << "\n";
    else out << "not connected\n";
    return kExitOk;
}

int cmd_graph_stats(const GraphArgs& g, std::ostream& out) {
    auto net = load_snapshot(g.snapshot);
    std::size_t max_degree = 0;
    std::size_t isolated = 0;
    for (const auto& k : net.nodes()) {
        const auto d = net.degree(k);
        max_degree = std::max(max_degree, d);
        isolated += d == 0;
    }
    out << "papers: " << net.paper_count() << "\n"
        << "keywords: " << net.node_count() << "\n"
        << "edges: " << net.edge_count() << "\n"
        << "isolated keywords: " << isolated << "\n"
        << "max degree: " << max_degree << "\n"
        << "cached relation texts: " << net.cached_relation_count() << "\n";
    return kExitOk;
}

// ---- ideate ---------------------------------------------------------------

struct IdeateArgs {
    std::vector<std::string> seeds;
    std::size_t m = 0;
    std::size_t l_max = 0;
    int max_rounds = 0;
    int threshold = 0;
    std::size_t cap_papers = 0;
    bool no_evolve = false;
    bool no_critic = false;
    std::string snapshot;
    std::string out_dir = "ideation-out";
    LlmOptions llm;

    CLI::Option* m_opt = nullptr;
    CLI::Option* l_max_opt = nullptr;
    CLI::Option* rounds_opt = nullptr;
    CLI::Option* threshold_opt = nullptr;
    CLI::Option* cap_opt = nullptr;
};

int cmd_ideate(const IdeateArgs& a, std::ostream& out, std::ostream& err) {
    const auto start = Clock::now();
    RunManifest manifest;
    manifest.command = "ideate";
    manifest.started_at = utc_timestamp();

    const auto config = load_optional_config(a.llm.config_path);
    WorkflowConfig cfg;
    apply_config(config, cfg);
    if (a.m_opt->count()) cfg.m = a.m;
    if (a.l_max_opt->count()) cfg.l_max = a.l_max;
    if (a.rounds_opt->count()) cfg.max_evolve_rounds = a.max_rounds;
    if (a.threshold_opt->count()) cfg.stop_threshold = a.threshold;
    if (a.cap_opt->count()) cfg.cap_papers = a.cap_papers;
    if (a.no_evolve) cfg.evolve_enabled = false;
    if (a.no_critic) cfg.critic_enabled = false;

    const auto seeds = to_keywords(a.seeds);
    cfg.validate(seeds.size());

    auto net = load_snapshot(a.snapshot);
    for (const auto& s : seeds) {
        if (!net.contains(s)) {
            throw Error(ErrorKind::UnknownKeyword, "seed keyword \"" + s.str() + "\" is not in the snapshot");
        }
    }

    LlmSession session(a.llm, config);
    auto& gateway = session.gateway();
    std::optional<Critic> critic;
    if (cfg.critic_enabled) critic.emplace(gateway);
    Workflow workflow(net, gateway, critic ? &*critic : nullptr, cfg);
    const auto result = workflow.run(seeds);

    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    const auto record_path = dir / "run.jsonl";
    const auto report_path = dir / "report.md";
    const auto manifest_file = dir / "manifest.json";
    write_text(record_path, serialize_run_record(result));
    write_text(report_path, render_markdown_report(result));

    manifest.config = to_json(cfg);
    manifest.config["seeds"] = a.seeds;
    manifest.inputs[a.snapshot] = sha256_file(a.snapshot);
    session.record_inputs(manifest);
    manifest.outputs = {{"run_record", record_path.string()},
                        {"report", report_path.string()},
                        {"manifest", manifest_file.string()}};
    manifest.elapsed_seconds = seconds_since(start);
    write_manifest(manifest, manifest_file);

    if (result.error) {
        err << "run aborted after " << result.stack.rounds().size() << " round(s); partial record in "
            << record_path.string() << "\n";
        const auto sep = result.error->find(": ");
        throw RunAborted{result.error->substr(0, sep), sep == std::string::npos ? *result.error : result.error->substr(sep + 2)};
    }
    out << "rounds: " << result.stack.rounds().size() << "\n"
        << "stop reason: " << to_string(result.stop_reason) << "\n"
        << "best round: " << (result.best_round ? std::to_string(*result.best_round) : "none") << "\n"
        << "run record: " << record_path.string() << "\n"
        << "report: " << report_path.string() << "\n"
        << "manifest: " << manifest_file.string() << "\n";
    return kExitOk;
}

// ---- review ---------------------------------------------------------------

struct ReviewArgs {
    std::string snapshot;
    std::string idea;
    std::vector<std::string> keywords;
    LlmOptions llm;
};

int cmd_review(const ReviewArgs& a, std::ostream& out) {
    auto net = load_snapshot(a.snapshot);
    const auto idea = parse_proposal(read_text(a.idea, "idea file"));
    const auto keywords = to_keywords(a.keywords);
    const auto features = net.graph_features(keywords);
    LlmSession session(a.llm, load_optional_config(a.llm.config_path));
    const auto review = evaluate_idea(idea, keywords, features, session.gateway());
    out << format_structured(review_to_reply(review)) << "\n";
    return kExitOk;
}

// ---- export ---------------------------------------------------------------

struct ExportArgs {
    std::string record;
    std::string out;
};

int cmd_export(const ExportArgs& a, std::ostream& out) {
    const auto start = Clock::now();
    const auto result = parse_run_record(read_text(a.record, "run record"));
    const auto report = render_markdown_report(result);
    if (a.out.empty()) {
        out << report;
        return kExitOk;
    }
    write_text(a.out, report);
    RunManifest manifest;
    manifest.command = "export";
    manifest.started_at = utc_timestamp();
    manifest.inputs[a.record] = sha256_file(a.record);
    manifest.outputs = {{"report", a.out}, {"manifest", manifest_path_for(a.out).string()}};
    manifest.elapsed_seconds = seconds_since(start);
    write_manifest(manifest, manifest_path_for(a.out));
    out << "report -> " << a.out << "\n";
    return kExitOk;
}

// ---- gen-toy-corpus ---------------------------------------------------------

struct ToyArgs {
    ToyCorpusOptions opts;
    bool no_keywords = false;
    std::string out;
};

int cmd_gen_toy(const ToyArgs& a, std::ostream& out) {
    const auto start = Clock::now();
    auto papers = generate_toy_corpus(a.opts);
    if (a.no_keywords) {
        for (auto& p : papers) p.keywords.reset();
    }
    std::ostringstream buf;
    write_corpus(buf, papers);
    if (a.out.empty()) {
        out << buf.str();
        return kExitOk;
    }
    write_text(a.out, buf.str());
    RunManifest manifest;
    manifest.command = "gen-toy-corpus";
    manifest.started_at = utc_timestamp();
    manifest.config = {{"papers", a.opts.papers},
                       {"seed", a.opts.seed},
                       {"vocabulary", a.opts.vocabulary},
                       {"min_keywords", a.opts.min_keywords},
                       {"max_keywords", a.opts.max_keywords},
                       {"keywords", !a.no_keywords}};
    manifest.outputs = {{"corpus", a.out}, {"manifest", manifest_path_for(a.out).string()}};
    manifest.elapsed_seconds = seconds_since(start);
    write_manifest(manifest, manifest_path_for(a.out));
    out << papers.size() << " paper(s) -> " << a.out << "\n";
    return kExitOk;
}

void report_error(std::ostream& err, bool json, std::string_view kind, const std::string& message, int code) {
    if (json) {
        err << nlohmann::json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump() << "\n";
    } else {
        err << "ideation: error: " << kind << ": " << message << "\n";
    }
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const bool json_errors = std::find(args.begin(), args.end(), "--json-errors") != args.end();

    CLI::App app{"Research ideation over a keyword co-occurrence network", "ideation"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json_flag = false;
    app.add_flag("--json-errors", json_flag, "Report errors as one JSON object on standard error");

    IngestArgs ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "Build or extend a snapshot from a corpus file");
    ingest_cmd->add_option("--corpus", ingest.corpus, "Line-delimited JSON corpus")->required();
    ingest_cmd->add_option("--out", ingest.out, "Snapshot to write")->required();
    ingest_cmd->add_option("--snapshot", ingest.base, "Existing snapshot to extend");
    ingest_cmd->add_option("--jobs", ingest.jobs, "Concurrent keyword extractions")->check(CLI::PositiveNumber);
    ingest_cmd->add_flag("--skip-invalid", ingest.skip_invalid, "Ingest valid records even if some lines are bad");
    ingest.llm.add_to(ingest_cmd);

    RelateArgs relate;
    auto* relate_cmd = app.add_subcommand("relate", "Pre-compute relation texts for selected edges");
    relate_cmd->add_option("--snapshot", relate.snapshot, "Snapshot to read")->required();
    relate_cmd->add_option("--out", relate.out, "Snapshot to write (default: overwrite --snapshot)");
    relate_cmd->add_option("--keyword", relate.keywords, "Summarize edges to this keyword's top neighbors");
    relate_cmd->add_flag("--all", relate.all, "Summarize every edge");
    relate_cmd->add_option("--m", relate.m, "Neighbors per keyword")->check(CLI::PositiveNumber);
    relate_cmd->add_option("--cap-papers", relate.cap_papers, "Papers summarized per edge")->check(CLI::PositiveNumber);
    relate_cmd->add_option("--jobs", relate.jobs, "Concurrent summarizations")->check(CLI::PositiveNumber);
    relate.llm.add_to(relate_cmd);

    GraphArgs graph;
    auto* graph_cmd = app.add_subcommand("graph", "Query a snapshot");
    graph_cmd->require_subcommand(1);
    auto* neighbors_cmd = graph_cmd->add_subcommand("neighbors", "Ranked neighbors with co-occurrence counts");
    neighbors_cmd->add_option("--snapshot", graph.snapshot)->required();
    auto* keyword_opt = neighbors_cmd->add_option("--keyword", graph.keyword);
    neighbors_cmd->add_option("--queries", graph.queries, "File of m<TAB>keyword lines, one answer line each")
        ->excludes(keyword_opt);
    neighbors_cmd->add_option("--m", graph.m)->check(CLI::PositiveNumber);
    auto* path_cmd = graph_cmd->add_subcommand("path", "Shortest path length between two keywords");
    path_cmd->add_option("--snapshot", graph.snapshot)->required();
    path_cmd->add_option("--a", graph.a)->required();
    path_cmd->add_option("--b", graph.b)->required();
    auto* stats_cmd = graph_cmd->add_subcommand("stats", "Node, edge and cache counts");
    stats_cmd->add_option("--snapshot", graph.snapshot)->required();

    IdeateArgs ideate;
    auto* ideate_cmd = app.add_subcommand("ideate", "Run explore / expand / evolve from seed keywords");
    ideate_cmd->add_option("--seed", ideate.seeds, "Seed keyword (repeatable)")->required();
    ideate.m_opt = ideate_cmd->add_option("--m", ideate.m, "Neighbors per keyword (default 12)")
                       ->check(CLI::PositiveNumber);
    ideate.l_max_opt = ideate_cmd->add_option("--l-max", ideate.l_max, "Keyword set size that starts evolve (default 4)")
                           ->check(CLI::PositiveNumber);
    ideate.rounds_opt = ideate_cmd->add_option("--max-rounds", ideate.max_rounds, "Evolve rounds (default 5)")
                            ->check(CLI::NonNegativeNumber);
    ideate.threshold_opt = ideate_cmd->add_option("--threshold", ideate.threshold, "Stop score (default 4)")
                               ->check(CLI::Range(1, 5));
    ideate.cap_opt = ideate_cmd->add_option("--cap-papers", ideate.cap_papers, "Papers summarized per edge (default 3)")
                         ->check(CLI::PositiveNumber);
    ideate_cmd->add_flag("--no-evolve", ideate.no_evolve, "Stop after the expand phase");
    ideate_cmd->add_flag("--no-critic", ideate.no_critic, "Skip reviews");
    ideate_cmd->add_option("--snapshot", ideate.snapshot, "Network snapshot")->required();
    ideate_cmd->add_option("--out", ideate.out_dir, "Output directory (default ideation-out)");
    ideate.llm.add_to(ideate_cmd);

    ReviewArgs review;
    auto* review_cmd = app.add_subcommand("review", "Score an idea file with the critic");
    review_cmd->add_option("--snapshot", review.snapshot)->required();
    review_cmd->add_option("--idea", review.idea, "Proposal text with the three section headings")->required();
    review_cmd->add_option("--keyword", review.keywords, "Keywords the idea was built from")->required();
    review.llm.add_to(review_cmd);

    ExportArgs exp;
    auto* export_cmd = app.add_subcommand("export", "Render a run record as markdown");
    export_cmd->add_option("--record", exp.record, "run.jsonl from ideate")->required();
    export_cmd->add_option("--out", exp.out, "Markdown file (default: standard output)");

    ToyArgs toy;
    auto* toy_cmd = app.add_subcommand("gen-toy-corpus", "Write a seeded synthetic corpus");
    toy_cmd->add_option("--papers", toy.opts.papers)->check(CLI::PositiveNumber);
    toy_cmd->add_option("--seed", toy.opts.seed);
    toy_cmd->add_option("--vocabulary", toy.opts.vocabulary)->check(CLI::PositiveNumber);
    toy_cmd->add_option("--min-keywords", toy.opts.min_keywords)->check(CLI::PositiveNumber);
    toy_cmd->add_option("--max-keywords", toy.opts.max_keywords)->check(CLI::PositiveNumber);
    toy_cmd->add_flag("--no-keywords", toy.no_keywords, "Omit keywords so ingest must extract them");
    toy_cmd->add_option("--out", toy.out, "Corpus file (default: standard output)");

    std::vector<const char*> argv{"ideation"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        report_error(err, json_errors, "usage", e.what(), kExitUsage);
        if (!json_errors) err << "run 'ideation --help' for usage\n";
        return kExitUsage;
    }

    try {
        if (ingest_cmd->parsed()) return cmd_ingest(ingest, out, err);
        if (relate_cmd->parsed()) return cmd_relate(relate, out);
        if (neighbors_cmd->parsed()) return cmd_graph_neighbors(graph, out);
        if (path_cmd->parsed()) return cmd_graph_path(graph, out);
        if (stats_cmd->parsed()) return cmd_graph_stats(graph, out);
        if (ideate_cmd->parsed()) return cmd_ideate(ideate, out, err);
        if (review_cmd->parsed()) return cmd_review(review, out);
        if (export_cmd->parsed()) return cmd_export(exp, out);
        if (toy_cmd->parsed()) return cmd_gen_toy(toy, out);
    } catch (const Error& e) {
        const int code = e.kind() == ErrorKind::Usage ? kExitUsage : kExitFailure;
        report_error(err, json_errors, to_string(e.kind()), e.what(), code);
        return code;
    } catch (const RunAborted& e) {
        report_error(err, json_errors, e.kind, e.message, kExitFailure);
        return kExitFailure;
    } catch (const fs::filesystem_error& e) {
        report_error(err, json_errors, to_string(ErrorKind::Io), e.what(), kExitFailure);
        return kExitFailure;
    } catch (const std::exception& e) {
        report_error(err, json_errors, "internal", e.what(), kExitFailure);
        return kExitFailure;
    }
    report_error(err, json_errors, "usage", "no command given", kExitUsage);
    return kExitUsage;
}

} // namespace ideation
