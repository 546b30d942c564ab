#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ideation/error.hpp"

namespace ideation {

/// A normalized keyword: lowercase ASCII, trimmed, single-spaced. Two keywords
/// are the same node iff their canonical strings are equal.
class Keyword {
public:
    Keyword() = default;

    /// Normalizes `raw`; throws EmptyKeyword if nothing is left.
    static Keyword from_raw(std::string_view raw);

    const std::string& str() const noexcept { return canonical_; }
    bool empty() const noexcept { return canonical_.empty(); }

    auto operator<=>(const Keyword&) const = default;

private:
    explicit Keyword(std::string canonical) : canonical_(std::move(canonical)) {}
    std::string canonical_;
};

Keyword normalize_keyword(std::string_view raw);

/// Normalization without the non-empty check. Exposed for property tests.
std::string normalize_keyword_text(std::string_view raw);

enum class Category { DL, NLP, CV, GeneralAI };

std::string_view to_string(Category c);
std::optional<Category> parse_category(std::string_view text);

struct PaperRecord {
    std::string id;
    std::string venue;
    int year = 0;
    Category category = Category::DL;
    std::string title;
    std::string abstract;
    std::string introduction;
    std::optional<std::vector<std::string>> keywords;

    bool operator==(const PaperRecord&) const = default;
};

nlohmann::json to_json(const PaperRecord& paper);
/// Throws FieldMissing / MalformedRecord.
PaperRecord paper_from_json(const nlohmann::json& j);

struct CorpusError {
    std::size_t line = 0;
    ErrorKind kind = ErrorKind::MalformedRecord;
    std::string message;
};

struct CorpusParseResult {
    std::vector<PaperRecord> records;
    std::vector<std::size_t> line_numbers; // parallel to records
    std::vector<CorpusError> errors;

    bool ok() const noexcept { return errors.empty(); }
};

/// One JSON object per line. Blank lines are skipped. Bad lines are collected
/// as errors and never stop the scan; a repeated id keeps the first record.
CorpusParseResult parse_corpus(std::istream& in);
CorpusParseResult parse_corpus_text(std::string_view text);

void write_corpus(std::ostream& out, const std::vector<PaperRecord>& papers);

} // namespace ideation

template <>
struct std::hash<ideation::Keyword> {
    std::size_t operator()(const ideation::Keyword& k) const noexcept {
        return std::hash<std::string>{}(k.str());
    }
};
