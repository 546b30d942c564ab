#include "ideation/toy_corpus.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>

namespace ideation {

namespace {

constexpr std::array<const char*, 48> kBaseTerms = {
    "graph neural networks",   "contrastive learning",     "diffusion models",
    "reinforcement learning",  "meta learning",            "knowledge distillation",
    "federated learning",      "neural architecture search", "optimization",
    "generalization bounds",   "variational inference",    "normalizing flows",
    "large language models",   "machine translation",      "question answering",
    "named entity recognition", "retrieval augmentation",  "instruction tuning",
    "dialogue systems",        "text summarization",       "semantic parsing",
    "sentiment analysis",      "in-context learning",      "tokenization",
    "object detection",        "semantic segmentation",    "image generation",
    "vision transformers",     "3d reconstruction",        "video understanding",
    "pose estimation",         "self-supervised learning", "domain adaptation",
    "neural radiance fields",  "image captioning",         "visual grounding",
    "planning",                "multi-agent systems",      "causal inference",
    "constraint satisfaction", "game theory",              "knowledge graphs",
    "explainability",          "fairness",                 "probabilistic reasoning",
    "automated theorem proving", "recommender systems",    "robotics",
};

constexpr std::array<const char*, 4> kVenues[4] = {
    {"ICLR", "NeurIPS", "ICML", "ICLR"},
    {"ACL", "NAACL", "ACL", "NAACL"},
    {"CVPR", "ICCV", "CVPR", "ICCV"},
    {"AAAI", "IJCAI", "AAAI", "IJCAI"},
};

} // namespace

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                (std::numeric_limits<std::uint64_t>::max() % bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

std::vector<std::string> toy_vocabulary(std::size_t size) {
    std::vector<std::string> vocab;
    vocab.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        if (i < kBaseTerms.size()) {
            vocab.emplace_back(kBaseTerms[i]);
        } else {
            vocab.push_back(std::string(kBaseTerms[i % kBaseTerms.size()]) + " variant " +
                            std::to_string(i / kBaseTerms.size()));
        }
    }
    return vocab;
}

std::vector<PaperRecord> generate_toy_corpus(const ToyCorpusOptions& options) {
    std::mt19937_64 rng(options.seed);
    const auto vocab = toy_vocabulary(std::max<std::size_t>(options.vocabulary, options.max_keywords));
    const std::size_t min_k = std::max<std::size_t>(1, options.min_keywords);
    const std::size_t max_k = std::max(min_k, options.max_keywords);
    const int year_span = std::max(0, options.last_year - options.first_year);

    // Terms are dealt to categories round-robin; most keywords of a paper come
    // from its own category so the graph has community structure.
    std::array<std::vector<std::size_t>, 4> by_category;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        by_category[i % 4].push_back(i);
    }

    std::vector<PaperRecord> papers;
    papers.reserve(options.papers);
    for (std::size_t n = 0; n < options.papers; ++n) {
        const auto cat_index = static_cast<std::size_t>(uniform_below(rng, 4));
        const auto& own = by_category[cat_index];
        const std::size_t count = min_k + uniform_below(rng, max_k - min_k + 1);

        std::vector<std::size_t> picked;
        while (picked.size() < count) {
            std::size_t term;
            if (!own.empty() && uniform_below(rng, 10) < 8) {
                term = own[uniform_below(rng, own.size())];
            } else {
                term = uniform_below(rng, vocab.size());
            }
            if (std::find(picked.begin(), picked.end(), term) == picked.end()) {
                picked.push_back(term);
            }
        }

        PaperRecord p;
        char id[32];
        std::snprintf(id, sizeof id, "toy-%05zu", n + 1);
        p.id = id;
        p.category = static_cast<Category>(cat_index);
        p.venue = kVenues[cat_index][uniform_below(rng, 4)];
        p.year = options.first_year + static_cast<int>(uniform_below(rng, year_span + 1));
        std::vector<std::string> kws;
        for (auto t : picked) kws.push_back(vocab[t]);
        p.title = "On " + kws.front() + " and " + kws.back();
        p.abstract = "We study how " + kws.front() + " interacts with " + kws[1 % kws.size()] +
                     " in " + std::string(to_string(p.category)) + " settings.";
        p.introduction = "Recent work on " + kws.back() + " motivates a closer look at " +
                         kws.front() + ".";
        p.keywords = std::move(kws);
        papers.push_back(std::move(p));
    }
    return papers;
}

} // namespace ideation
