#include "ideation/relation.hpp"

#include <algorithm>
#include <array>
#include <mutex>

namespace ideation {

namespace {

std::mutex& edge_stripe(const Keyword& a, const Keyword& b) {
    static std::array<std::mutex, 64> stripes;
    const auto [lo, hi] = unordered_pair(a, b);
    const auto h = std::hash<std::string>{}(lo.str()) * 31 + std::hash<std::string>{}(hi.str());
    return stripes[h % stripes.size()];
}

std::string trimmed(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

/// One paper per line keeps the "[id]" attributions parseable.
std::string single_line(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool space = false;
    for (char c : text) {
        if (c == '\n' || c == '\r' || c == ' ' || c == '\t') {
            space = !out.empty();
            continue;
        }
        if (space) out.push_back(' ');
        space = false;
        out.push_back(c);
    }
    return out;
}

} // namespace

std::vector<std::string> relation_papers(const SciNetwork& net, const Keyword& a, const Keyword& b,
                                         std::size_t cap) {
    auto ids = net.co_papers(a, b);
    std::stable_sort(ids.begin(), ids.end(), [&](const std::string& x, const std::string& y) {
        const int yx = net.paper(x).year;
        const int yy = net.paper(y).year;
        if (yx != yy) return yx > yy;
        return x < y;
    });
    if (ids.size() > cap) ids.resize(cap);
    return ids;
}

std::string summarize_relation(SciNetwork& net, const Keyword& a, const Keyword& b, Gateway& gateway,
                               const RelationOptions& options) {
    if (!net.has_edge(a, b)) {
        throw Error(ErrorKind::MissingEdge, "no edge between \"" + a.str() + "\" and \"" + b.str() + "\"");
    }
    std::lock_guard lock(edge_stripe(a, b));

    std::string joined;
    for (const auto& id : relation_papers(net, a, b, options.cap_papers)) {
        auto text = net.cached_relation(a, b, id);
        if (!text) {
            const auto& paper = net.paper(id);
            const Bindings bindings = {
                {"keyword1", a.str()},          {"keyword2", b.str()},
                {"title", paper.title},         {"abstract", paper.abstract},
                {"introduction", paper.introduction},
            };
            try {
                text = gateway.ask_parsed(TemplateId::RelationAnalysis, bindings, [](const std::string& reply) {
                    auto t = trimmed(reply);
                    if (t.empty()) throw Error(ErrorKind::FormatError, "empty relation summary");
                    return t;
                });
            } catch (const Error& e) {
                throw Error(ErrorKind::RelationFailed, "relation summary failed for paper \"" + id + "\": " + e.what());
            }
            net.cache_relation(a, b, id, *text);
        }
        if (!joined.empty()) joined.push_back('\n');
        joined += "[" + id + "] " + single_line(*text);
    }
    return joined;
}

std::vector<std::string> attributed_paper_ids(std::string_view relation_text) {
    std::vector<std::string> ids;
    std::size_t pos = 0;
    while (pos < relation_text.size()) {
        auto end = relation_text.find('\n', pos);
        if (end == std::string_view::npos) end = relation_text.size();
        auto line = relation_text.substr(pos, end - pos);
        if (line.size() > 2 && line.front() == '[') {
            auto close = line.find(']');
            if (close != std::string_view::npos && close > 1) {
                std::string id(line.substr(1, close - 1));
                if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(std::move(id));
            }
        }
        pos = end + 1;
    }
    return ids;
}

} // namespace ideation
