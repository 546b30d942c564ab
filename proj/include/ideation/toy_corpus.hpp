#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ideation/corpus.hpp"

namespace ideation {

struct ToyCorpusOptions {
    std::size_t papers = 200;
    std::uint64_t seed = 1;
    std::size_t vocabulary = 60;
    std::size_t min_keywords = 3;
    std::size_t max_keywords = 4;
    int first_year = 2015;
    int last_year = 2024;
};

/// Portable uniform draw in [0, bound). std::uniform_int_distribution is
/// implementation-defined, which would make corpora differ across toolchains.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

std::vector<std::string> toy_vocabulary(std::size_t size);

/// Seeded synthetic corpus. Same options give the same records on every
/// platform. Every record carries pre-supplied keywords.
std::vector<PaperRecord> generate_toy_corpus(const ToyCorpusOptions& options);

} // namespace ideation
