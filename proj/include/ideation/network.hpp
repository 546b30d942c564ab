#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ideation/corpus.hpp"

namespace ideation {

/// Everything known about one undirected co-occurrence edge.
struct EdgeData {
    std::vector<std::string> paper_ids;                  // sorted, unique, nonempty
    std::map<std::string, std::string> relation_texts;   // paper id -> summary

    bool operator==(const EdgeData&) const = default;
};

using KeywordPair = std::pair<Keyword, Keyword>;

/// Orders the pair so that first <= second.
KeywordPair unordered_pair(const Keyword& a, const Keyword& b);

struct GraphFeatures {
    std::vector<Keyword> keywords; // query order, used for serialization
    std::map<Keyword, std::size_t> neighbor_counts;
    bool connected = true;
    std::map<KeywordPair, std::optional<std::size_t>> pairwise_paths;

    bool operator==(const GraphFeatures&) const = default;
};

/// Keyword co-occurrence graph. Nodes are keywords; an edge exists between two
/// keywords iff they appear together in at least one ingested paper. Edge data
/// is stored once per unordered pair so both directions always agree.
///
/// Construction is single-writer. Once built, any number of threads may read;
/// the relation cache is the only mutable part and is guarded internally.
class SciNetwork {
public:
    SciNetwork();
    SciNetwork(const SciNetwork& other);
    SciNetwork& operator=(const SciNetwork& other);
    SciNetwork(SciNetwork&&) noexcept;
    SciNetwork& operator=(SciNetwork&&) noexcept;
    ~SciNetwork();

    /// Adds the paper and connects every pair of its keywords.
    void add_paper(const PaperRecord& paper, const std::vector<Keyword>& keywords);

    bool contains(const Keyword& k) const { return index_.count(k) != 0; }
    bool has_paper(const std::string& id) const { return papers_.count(id) != 0; }

    std::size_t node_count() const noexcept { return names_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t paper_count() const noexcept { return papers_.size(); }
    std::size_t cached_relation_count() const;

    /// All keywords, sorted.
    std::vector<Keyword> nodes() const;
    /// All edges as ordered pairs (first < second), sorted.
    std::vector<KeywordPair> edges() const;

    std::optional<EdgeData> edge(const Keyword& a, const Keyword& b) const;
    bool has_edge(const Keyword& a, const Keyword& b) const;

    std::size_t degree(const Keyword& k) const;

    /// Neighbors by descending co-paper count, ties by ascending keyword,
    /// truncated to `m`.
    std::vector<Keyword> neighbors(const Keyword& k, std::size_t m) const;

    /// Sorted ids of papers containing both keywords; empty if no edge.
    std::vector<std::string> co_papers(const Keyword& a, const Keyword& b) const;

    /// Unweighted hop count; 0 when a == b; nullopt when disconnected.
    std::optional<std::size_t> shortest_path_len(const Keyword& a, const Keyword& b) const;

    GraphFeatures graph_features(const std::vector<Keyword>& keywords) const;

    const PaperRecord& paper(const std::string& id) const;
    const std::map<std::string, PaperRecord>& papers() const noexcept { return papers_; }
    const std::vector<Keyword>& paper_keywords(const std::string& id) const;

    std::optional<std::string> cached_relation(const Keyword& a, const Keyword& b,
                                               const std::string& paper_id) const;
    /// Throws MissingEdge if there is no edge, RelationFailed if the paper is
    /// not on the edge.
    void cache_relation(const Keyword& a, const Keyword& b, const std::string& paper_id,
                        std::string text);

    friend bool operator==(const SciNetwork& lhs, const SciNetwork& rhs);

private:
    friend class SnapshotReader;

    using NodeId = std::uint32_t;

    static std::uint64_t edge_key(NodeId a, NodeId b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    NodeId require(const Keyword& k) const;
    NodeId intern(const Keyword& k);
    void link(NodeId a, NodeId b, const std::string& paper_id);

    std::vector<Keyword> names_;
    std::unordered_map<Keyword, NodeId> index_;
    std::vector<std::vector<NodeId>> adjacency_;
    std::unordered_map<std::uint64_t, EdgeData> edges_;
    std::map<std::string, PaperRecord> papers_;
    std::map<std::string, std::vector<Keyword>> paper_keywords_;
    std::unique_ptr<std::shared_mutex> cache_mutex_;
};

} // namespace ideation
