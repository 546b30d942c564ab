#include "ideation/network.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>

namespace ideation {

KeywordPair unordered_pair(const Keyword& a, const Keyword& b) {
    return a <= b ? KeywordPair{a, b} : KeywordPair{b, a};
}

SciNetwork::SciNetwork() : cache_mutex_(std::make_unique<std::shared_mutex>()) {}

SciNetwork::SciNetwork(const SciNetwork& other)
    : cache_mutex_(std::make_unique<std::shared_mutex>()) {
    std::shared_lock lock(*other.cache_mutex_);
    names_ = other.names_;
    index_ = other.index_;
    adjacency_ = other.adjacency_;
    edges_ = other.edges_;
    papers_ = other.papers_;
    paper_keywords_ = other.paper_keywords_;
}

SciNetwork& SciNetwork::operator=(const SciNetwork& other) {
    if (this != &other) {
        SciNetwork copy(other);
        *this = std::move(copy);
    }
    return *this;
}

SciNetwork::SciNetwork(SciNetwork&&) noexcept = default;
SciNetwork& SciNetwork::operator=(SciNetwork&&) noexcept = default;
SciNetwork::~SciNetwork() = default;

SciNetwork::NodeId SciNetwork::require(const Keyword& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) {
        throw Error(ErrorKind::UnknownKeyword, "unknown keyword \"" + k.str() + "\"");
    }
    return it->second;
}

SciNetwork::NodeId SciNetwork::intern(const Keyword& k) {
    auto [it, inserted] = index_.try_emplace(k, static_cast<NodeId>(names_.size()));
    if (inserted) {
        names_.push_back(k);
        adjacency_.emplace_back();
    }
    return it->second;
}

void SciNetwork::link(NodeId a, NodeId b, const std::string& paper_id) {
    auto [it, inserted] = edges_.try_emplace(edge_key(a, b));
    if (inserted) {
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    auto& ids = it->second.paper_ids;
    auto pos = std::lower_bound(ids.begin(), ids.end(), paper_id);
    if (pos == ids.end() || *pos != paper_id) {
        ids.insert(pos, paper_id);
    }
}

void SciNetwork::add_paper(const PaperRecord& paper, const std::vector<Keyword>& keywords) {
    if (papers_.count(paper.id)) {
        throw Error(ErrorKind::DuplicateId, "paper \"" + paper.id + "\" already in network");
    }
    if (keywords.empty()) {
        throw Error(ErrorKind::EmptyKeyword, "paper \"" + paper.id + "\" has no keywords");
    }
    std::set<Keyword> distinct(keywords.begin(), keywords.end());
    if (distinct.size() != keywords.size()) {
        throw Error(ErrorKind::DuplicateKeyword, "paper \"" + paper.id + "\" lists a keyword twice");
    }
    for (const auto& k : keywords) {
        if (k.empty()) {
            throw Error(ErrorKind::EmptyKeyword, "paper \"" + paper.id + "\" has an empty keyword");
        }
    }

    std::vector<NodeId> ids;
    ids.reserve(keywords.size());
    for (const auto& k : keywords) ids.push_back(intern(k));
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            link(ids[i], ids[j], paper.id);
        }
    }
    papers_.emplace(paper.id, paper);
    paper_keywords_.emplace(paper.id, keywords);
}

std::size_t SciNetwork::cached_relation_count() const {
    std::shared_lock lock(*cache_mutex_);
    std::size_t n = 0;
    for (const auto& [key, data] : edges_) n += data.relation_texts.size();
    return n;
}

std::vector<Keyword> SciNetwork::nodes() const {
    auto out = names_;
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<KeywordPair> SciNetwork::edges() const {
    std::vector<KeywordPair> out;
    out.reserve(edges_.size());
    for (const auto& [key, data] : edges_) {
        const auto a = static_cast<NodeId>(key >> 32);
        const auto b = static_cast<NodeId>(key & 0xffffffffu);
        out.push_back(unordered_pair(names_[a], names_[b]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<EdgeData> SciNetwork::edge(const Keyword& a, const Keyword& b) const {
    const auto ia = require(a);
    const auto ib = require(b);
    std::shared_lock lock(*cache_mutex_);
    auto it = edges_.find(edge_key(ia, ib));
    if (ia == ib || it == edges_.end()) return std::nullopt;
    return it->second;
}

bool SciNetwork::has_edge(const Keyword& a, const Keyword& b) const {
    const auto ia = require(a);
    const auto ib = require(b);
    return ia != ib && edges_.count(edge_key(ia, ib)) != 0;
}

std::size_t SciNetwork::degree(const Keyword& k) const { return adjacency_[require(k)].size(); }

std::vector<Keyword> SciNetwork::neighbors(const Keyword& k, std::size_t m) const {
    const auto id = require(k);
    struct Ranked {
        std::size_t count;
        NodeId node;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(adjacency_[id].size());
    for (auto n : adjacency_[id]) {
        ranked.push_back({edges_.at(edge_key(id, n)).paper_ids.size(), n});
    }
    std::sort(ranked.begin(), ranked.end(), [this](const Ranked& x, const Ranked& y) {
        if (x.count != y.count) return x.count > y.count;
        return names_[x.node] < names_[y.node];
    });
    if (ranked.size() > m) ranked.resize(m);
    std::vector<Keyword> out;
    out.reserve(ranked.size());
    for (const auto& r : ranked) out.push_back(names_[r.node]);
    return out;
}

std::vector<std::string> SciNetwork::co_papers(const Keyword& a, const Keyword& b) const {
    const auto ia = require(a);
    const auto ib = require(b);
    if (ia == ib) return {};
    auto it = edges_.find(edge_key(ia, ib));
    if (it == edges_.end()) return {};
    return it->second.paper_ids;
}

std::optional<std::size_t> SciNetwork::shortest_path_len(const Keyword& a, const Keyword& b) const {
    const auto source = require(a);
    const auto target = require(b);
    if (source == target) return 0;

    std::vector<std::size_t> dist(names_.size(), SIZE_MAX);
    std::deque<NodeId> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        for (auto v : adjacency_[u]) {
            if (dist[v] != SIZE_MAX) continue;
            dist[v] = dist[u] + 1;
            if (v == target) return dist[v];
            queue.push_back(v);
        }
    }
    return std::nullopt;
}

GraphFeatures SciNetwork::graph_features(const std::vector<Keyword>& keywords) const {
    GraphFeatures features;
    for (const auto& k : keywords) {
        if (std::find(features.keywords.begin(), features.keywords.end(), k) != features.keywords.end()) {
            continue;
        }
        features.keywords.push_back(k);
        features.neighbor_counts[k] = degree(k);
    }
    const auto& ks = features.keywords;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        for (std::size_t j = i + 1; j < ks.size(); ++j) {
            auto len = shortest_path_len(ks[i], ks[j]);
            if (!len) features.connected = false;
            features.pairwise_paths[unordered_pair(ks[i], ks[j])] = len;
        }
    }
    return features;
}

const PaperRecord& SciNetwork::paper(const std::string& id) const {
    auto it = papers_.find(id);
    if (it == papers_.end()) {
        throw Error(ErrorKind::RelationFailed, "unknown paper \"" + id + "\"");
    }
    return it->second;
}

const std::vector<Keyword>& SciNetwork::paper_keywords(const std::string& id) const {
    auto it = paper_keywords_.find(id);
    if (it == paper_keywords_.end()) {
        throw Error(ErrorKind::RelationFailed, "unknown paper \"" + id + "\"");
    }
    return it->second;
}

std::optional<std::string> SciNetwork::cached_relation(const Keyword& a, const Keyword& b,
                                                       const std::string& paper_id) const {
    const auto ia = require(a);
    const auto ib = require(b);
    std::shared_lock lock(*cache_mutex_);
    auto it = edges_.find(edge_key(ia, ib));
    if (ia == ib || it == edges_.end()) return std::nullopt;
    auto text = it->second.relation_texts.find(paper_id);
    if (text == it->second.relation_texts.end()) return std::nullopt;
    return text->second;
}

void SciNetwork::cache_relation(const Keyword& a, const Keyword& b, const std::string& paper_id,
                                std::string text) {
    const auto ia = require(a);
    const auto ib = require(b);
    std::unique_lock lock(*cache_mutex_);
    auto it = edges_.find(edge_key(ia, ib));
    if (ia == ib || it == edges_.end()) {
        throw Error(ErrorKind::MissingEdge, "no edge between \"" + a.str() + "\" and \"" + b.str() + "\"");
    }
    auto& data = it->second;
    if (!std::binary_search(data.paper_ids.begin(), data.paper_ids.end(), paper_id)) {
        throw Error(ErrorKind::RelationFailed, "paper \"" + paper_id + "\" is not on edge \"" +
                                                   a.str() + "\" -- \"" + b.str() + "\"");
    }
    data.relation_texts[paper_id] = std::move(text);
}

bool operator==(const SciNetwork& lhs, const SciNetwork& rhs) {
    if (&lhs == &rhs) return true;
    if (lhs.names_.size() != rhs.names_.size() || lhs.edges_.size() != rhs.edges_.size() ||
        lhs.papers_ != rhs.papers_ || lhs.paper_keywords_ != rhs.paper_keywords_) {
        return false;
    }
    for (const auto& k : lhs.names_) {
        if (!rhs.contains(k)) return false;
    }
    std::shared_lock l1(*lhs.cache_mutex_);
    std::shared_lock l2(*rhs.cache_mutex_);
    for (const auto& [key, data] : lhs.edges_) {
        const auto& a = lhs.names_[static_cast<SciNetwork::NodeId>(key >> 32)];
        const auto& b = lhs.names_[static_cast<SciNetwork::NodeId>(key & 0xffffffffu)];
        auto it = rhs.edges_.find(SciNetwork::edge_key(rhs.index_.at(a), rhs.index_.at(b)));
        if (it == rhs.edges_.end() || !(it->second == data)) return false;
    }
    return true;
}

} // namespace ideation
