#include "ideation/corpus.hpp"

#include <sstream>
#include <unordered_set>

namespace ideation {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

const std::string& require_string(const nlohmann::json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end() || it->is_null()) {
        throw Error(ErrorKind::FieldMissing, std::string("missing field \"") + field + "\"");
    }
    if (!it->is_string()) {
        throw Error(ErrorKind::MalformedRecord, std::string("field \"") + field + "\" must be a string");
    }
    return it->get_ref<const std::string&>();
}

} // namespace

std::string normalize_keyword_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(ascii_lower(c));
    }
    return out;
}

Keyword Keyword::from_raw(std::string_view raw) {
    auto text = normalize_keyword_text(raw);
    if (text.empty()) {
        throw Error(ErrorKind::EmptyKeyword, "keyword is empty after normalization");
    }
    return Keyword(std::move(text));
}

Keyword normalize_keyword(std::string_view raw) { return Keyword::from_raw(raw); }

std::string_view to_string(Category c) {
    switch (c) {
        case Category::DL: return "DL";
        case Category::NLP: return "NLP";
        case Category::CV: return "CV";
        case Category::GeneralAI: return "GeneralAI";
    }
    return "DL";
}

std::optional<Category> parse_category(std::string_view text) {
    if (text == "DL") return Category::DL;
    if (text == "NLP") return Category::NLP;
    if (text == "CV") return Category::CV;
    if (text == "GeneralAI" || text == "General AI") return Category::GeneralAI;
    return std::nullopt;
}

nlohmann::json to_json(const PaperRecord& paper) {
    nlohmann::json j = {
        {"id", paper.id},
        {"venue", paper.venue},
        {"year", paper.year},
        {"category", std::string(to_string(paper.category))},
        {"title", paper.title},
        {"abstract", paper.abstract},
        {"introduction", paper.introduction},
    };
    if (paper.keywords) {
        j["keywords"] = *paper.keywords;
    }
    return j;
}

PaperRecord paper_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw Error(ErrorKind::MalformedRecord, "record is not a JSON object");
    }
    PaperRecord p;
    p.id = require_string(j, "id");
    if (p.id.empty()) {
        throw Error(ErrorKind::MalformedRecord, "field \"id\" is empty");
    }
    p.venue = require_string(j, "venue");

    auto year = j.find("year");
    if (year == j.end() || year->is_null()) {
        throw Error(ErrorKind::FieldMissing, "missing field \"year\"");
    }
    if (!year->is_number_integer()) {
        throw Error(ErrorKind::MalformedRecord, "field \"year\" must be an integer");
    }
    p.year = year->get<int>();

    const auto& category = require_string(j, "category");
    auto parsed = parse_category(category);
    if (!parsed) {
        throw Error(ErrorKind::MalformedRecord, "unknown category \"" + category + "\"");
    }
    p.category = *parsed;

    p.title = require_string(j, "title");
    if (p.title.empty()) {
        throw Error(ErrorKind::MalformedRecord, "field \"title\" is empty");
    }
    p.abstract = require_string(j, "abstract");
    p.introduction = require_string(j, "introduction");

    if (auto kw = j.find("keywords"); kw != j.end() && !kw->is_null()) {
        if (!kw->is_array()) {
            throw Error(ErrorKind::MalformedRecord, "field \"keywords\" must be an array");
        }
        std::vector<std::string> list;
        for (const auto& item : *kw) {
            if (!item.is_string()) {
                throw Error(ErrorKind::MalformedRecord, "keywords must be strings");
            }
            list.push_back(item.get<std::string>());
        }
        p.keywords = std::move(list);
    }
    return p;
}

CorpusParseResult parse_corpus(std::istream& in) {
    CorpusParseResult result;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            auto j = nlohmann::json::parse(line);
            auto paper = paper_from_json(j);
            if (!seen.insert(paper.id).second) {
                throw Error(ErrorKind::DuplicateId, "duplicate paper id \"" + paper.id + "\"");
            }
            result.records.push_back(std::move(paper));
            result.line_numbers.push_back(line_no);
        } catch (const Error& e) {
            result.errors.push_back({line_no, e.kind(), "line " + std::to_string(line_no) + ": " + e.what()});
        } catch (const nlohmann::json::exception& e) {
            result.errors.push_back({line_no, ErrorKind::MalformedRecord,
                                     "line " + std::to_string(line_no) + ": invalid JSON: " + e.what()});
        }
    }
    return result;
}

CorpusParseResult parse_corpus_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_corpus(in);
}

void write_corpus(std::ostream& out, const std::vector<PaperRecord>& papers) {
    for (const auto& p : papers) {
        out << to_json(p).dump() << '\n';
    }
}

} // namespace ideation
