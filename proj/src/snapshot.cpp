#include "ideation/snapshot.hpp"

#include <fstream>
#include <sstream>

namespace ideation {

namespace {

constexpr const char* kFormatName = "ideation-network";

[[noreturn]] void corrupt(std::size_t line, const std::string& what) {
    throw Error(ErrorKind::SnapshotCorrupt, "snapshot line " + std::to_string(line) + ": " + what);
}

nlohmann::json section(const char* name, std::size_t count) {
    return {{"section", name}, {"count", count}};
}

class LineCursor {
public:
    explicit LineCursor(std::string_view text) : text_(text) {}

    nlohmann::json next() {
        if (pos_ >= text_.size()) corrupt(line_ + 1, "unexpected end of snapshot");
        auto end = text_.find('\n', pos_);
        if (end == std::string_view::npos) {
            // Every line the writer emits is newline-terminated.
            corrupt(line_ + 1, "truncated line");
        }
        auto raw = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        ++line_;
        try {
            return nlohmann::json::parse(raw);
        } catch (const nlohmann::json::exception&) {
            corrupt(line_, "invalid JSON");
        }
    }

    std::size_t expect_section(const char* name) {
        auto j = next();
        if (!j.is_object() || j.value("section", "") != name || !j.contains("count") ||
            !j["count"].is_number_unsigned()) {
            corrupt(line_, std::string("expected section \"") + name + "\"");
        }
        return j["count"].get<std::size_t>();
    }

    bool at_end() const { return pos_ >= text_.size(); }
    std::size_t line() const { return line_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

Keyword keyword_field(const nlohmann::json& j, const char* field, std::size_t line) {
    if (!j.contains(field) || !j[field].is_string()) corrupt(line, std::string("missing \"") + field + "\"");
    const auto& raw = j[field].get_ref<const std::string&>();
    auto k = normalize_keyword_text(raw);
    if (k.empty() || k != raw) corrupt(line, "keyword \"" + raw + "\" is not normalized");
    return Keyword::from_raw(raw);
}

} // namespace

class SnapshotReader {
public:
    static SciNetwork read(std::string_view bytes) {
        LineCursor cur(bytes);
        auto header = cur.next();
        if (!header.is_object() || header.value("format", "") != kFormatName) {
            corrupt(1, "not a network snapshot");
        }
        if (!header.contains("version") || !header["version"].is_number_integer()) {
            corrupt(1, "missing version");
        }
        if (auto v = header["version"].get<int>(); v != kSnapshotVersion) {
            throw Error(ErrorKind::SnapshotVersion, "snapshot version " + std::to_string(v) +
                                                        " is not supported (expected " +
                                                        std::to_string(kSnapshotVersion) + ")");
        }

        SciNetwork net;

        const auto paper_count = cur.expect_section("papers");
        for (std::size_t i = 0; i < paper_count; ++i) {
            auto j = cur.next();
            PaperRecord paper;
            std::vector<Keyword> keywords;
            try {
                paper = paper_from_json(j);
                for (const auto& k : j.at("graph_keywords")) keywords.push_back(Keyword::from_raw(k.get<std::string>()));
            } catch (const std::exception& e) {
                corrupt(cur.line(), e.what());
            }
            if (net.papers_.count(paper.id)) corrupt(cur.line(), "duplicate paper \"" + paper.id + "\"");
            net.paper_keywords_.emplace(paper.id, std::move(keywords));
            net.papers_.emplace(paper.id, std::move(paper));
        }

        const auto node_count = cur.expect_section("nodes");
        for (std::size_t i = 0; i < node_count; ++i) {
            auto j = cur.next();
            auto k = keyword_field(j, "keyword", cur.line());
            if (net.contains(k)) corrupt(cur.line(), "duplicate node \"" + k.str() + "\"");
            net.intern(k);
        }

        const auto edge_count = cur.expect_section("edges");
        for (std::size_t i = 0; i < edge_count; ++i) {
            auto j = cur.next();
            auto a = keyword_field(j, "a", cur.line());
            auto b = keyword_field(j, "b", cur.line());
            if (!(a < b)) corrupt(cur.line(), "edge endpoints out of order or self-loop");
            if (!net.contains(a) || !net.contains(b)) corrupt(cur.line(), "edge references unknown node");
            const auto ia = net.index_.at(a);
            const auto ib = net.index_.at(b);
            if (net.edges_.count(SciNetwork::edge_key(ia, ib))) corrupt(cur.line(), "duplicate edge");
            if (!j.contains("papers") || !j["papers"].is_array() || j["papers"].empty()) {
                corrupt(cur.line(), "edge without papers");
            }
            for (const auto& p : j["papers"]) {
                if (!p.is_string() || !net.papers_.count(p.get<std::string>())) {
                    corrupt(cur.line(), "edge references unknown paper");
                }
                net.link(ia, ib, p.get<std::string>());
            }
        }

        const auto relation_count = cur.expect_section("relations");
        for (std::size_t i = 0; i < relation_count; ++i) {
            auto j = cur.next();
            auto a = keyword_field(j, "a", cur.line());
            auto b = keyword_field(j, "b", cur.line());
            if (!j.contains("paper") || !j["paper"].is_string() || !j.contains("text") || !j["text"].is_string()) {
                corrupt(cur.line(), "relation entry missing paper or text");
            }
            try {
                net.cache_relation(a, b, j["paper"].get<std::string>(), j["text"].get<std::string>());
            } catch (const Error& e) {
                corrupt(cur.line(), e.what());
            }
        }

        auto end = cur.next();
        if (!end.is_object() || !end.value("end", false)) corrupt(cur.line(), "missing end marker");
        if (!cur.at_end()) corrupt(cur.line() + 1, "trailing data after end marker");

        // Every paper's keywords must form a complete subgraph listing it.
        for (const auto& [id, keywords] : net.paper_keywords_) {
            for (std::size_t x = 0; x < keywords.size(); ++x) {
                for (std::size_t y = x + 1; y < keywords.size(); ++y) {
                    if (!net.contains(keywords[x]) || !net.contains(keywords[y])) {
                        corrupt(cur.line(), "paper \"" + id + "\" references unknown keyword");
                    }
                    auto papers = net.co_papers(keywords[x], keywords[y]);
                    if (!std::binary_search(papers.begin(), papers.end(), id)) {
                        corrupt(cur.line(), "paper \"" + id + "\" missing from one of its edges");
                    }
                }
            }
        }
        return net;
    }
};

std::string snapshot_save(const SciNetwork& net) {
    std::ostringstream out;
    out << nlohmann::json{{"format", kFormatName}, {"version", kSnapshotVersion}}.dump() << '\n';

    out << section("papers", net.paper_count()).dump() << '\n';
    for (const auto& [id, paper] : net.papers()) {
        auto j = to_json(paper);
        auto& kws = j["graph_keywords"] = nlohmann::json::array();
        for (const auto& k : net.paper_keywords(id)) kws.push_back(k.str());
        out << j.dump() << '\n';
    }

    const auto nodes = net.nodes();
    out << section("nodes", nodes.size()).dump() << '\n';
    for (const auto& k : nodes) out << nlohmann::json{{"keyword", k.str()}}.dump() << '\n';

    const auto edges = net.edges();
    std::vector<nlohmann::json> relations;
    out << section("edges", edges.size()).dump() << '\n';
    for (const auto& [a, b] : edges) {
        auto data = *net.edge(a, b);
        out << nlohmann::json{{"a", a.str()}, {"b", b.str()}, {"papers", data.paper_ids}}.dump() << '\n';
        for (const auto& [paper, text] : data.relation_texts) {
            relations.push_back({{"a", a.str()}, {"b", b.str()}, {"paper", paper}, {"text", text}});
        }
    }

    out << section("relations", relations.size()).dump() << '\n';
    for (const auto& r : relations) out << r.dump() << '\n';

    out << nlohmann::json{{"end", true}}.dump() << '\n';
    return out.str();
}

SciNetwork snapshot_load(std::string_view bytes) { return SnapshotReader::read(bytes); }

void snapshot_save_file(const SciNetwork& net, const std::filesystem::path& path) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::Io, "cannot write snapshot \"" + tmp + "\"");
        out << snapshot_save(net);
        if (!out) throw Error(ErrorKind::Io, "failed writing snapshot \"" + tmp + "\"");
    }
    std::filesystem::rename(tmp, path);
}

SciNetwork snapshot_load_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open snapshot \"" + path.string() + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return snapshot_load(buf.str());
}

} // namespace ideation
