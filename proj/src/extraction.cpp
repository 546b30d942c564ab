#include "ideation/extraction.hpp"

#include <algorithm>
#include <cctype>

namespace ideation {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string strip_item(std::string_view item) {
    item = trim(item);
    // list decoration: "-", "*", "1.", "2)"
    while (!item.empty() && (item.front() == '-' || item.front() == '*' || item.front() == '\xE2')) {
        if (item.front() == '\xE2') {
            if (item.substr(0, 3) != "\xE2\x80\xA2") break; // bullet
            item.remove_prefix(3);
        } else {
            item.remove_prefix(1);
        }
        item = trim(item);
    }
    std::size_t digits = 0;
    while (digits < item.size() && item[digits] >= '0' && item[digits] <= '9') ++digits;
    if (digits > 0 && digits < item.size() && (item[digits] == '.' || item[digits] == ')')) {
        item = trim(item.substr(digits + 1));
    }
    while (item.size() >= 2 && ((item.front() == '"' && item.back() == '"') ||
                                (item.front() == '\'' && item.back() == '\''))) {
        item = trim(item.substr(1, item.size() - 2));
    }
    while (!item.empty() && item.back() == '.') item.remove_suffix(1);
    return std::string(item);
}

void check_count(const std::vector<Keyword>& keywords, const std::string& context) {
    if (keywords.size() < kMinPaperKeywords || keywords.size() > kMaxPaperKeywords) {
        throw Error(ErrorKind::ExtractionCount, context + ": " + std::to_string(keywords.size()) +
                                                    " distinct keywords (need 3-4)");
    }
}

} // namespace

std::vector<Keyword> dedupe_keywords(const std::vector<std::string>& raw) {
    std::vector<Keyword> out;
    for (const auto& r : raw) {
        const auto text = normalize_keyword_text(r);
        if (text.empty()) continue;
        auto k = Keyword::from_raw(text);
        if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(std::move(k));
    }
    return out;
}

std::vector<Keyword> parse_keyword_list(std::string_view reply) {
    std::string_view body = reply;
    // Prefer the labelled line when the model added commentary around it.
    std::size_t pos = 0;
    while (pos <= reply.size()) {
        auto end = reply.find('\n', pos);
        if (end == std::string_view::npos) end = reply.size();
        auto line = trim(reply.substr(pos, end - pos));
        std::string upper(line.substr(0, 9));
        std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
        if (upper == "KEYWORDS:") {
            body = line.substr(9);
            break;
        }
        pos = end + 1;
    }

    std::vector<std::string> items;
    std::string current;
    for (char c : body) {
        if (c == ';' || c == '\n') {
            items.push_back(strip_item(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    items.push_back(strip_item(current));
    items.erase(std::remove(items.begin(), items.end(), std::string{}), items.end());

    if (items.size() == 1 && items.front().find(',') != std::string::npos) {
        const auto joined = items.front();
        items.clear();
        std::size_t start = 0;
        while (start <= joined.size()) {
            auto comma = joined.find(',', start);
            if (comma == std::string::npos) comma = joined.size();
            items.push_back(strip_item(std::string_view(joined).substr(start, comma - start)));
            start = comma + 1;
        }
    }

    auto keywords = dedupe_keywords(items);
    check_count(keywords, "model reply");
    return keywords;
}

std::vector<Keyword> extract_keywords(const PaperRecord& paper, Gateway& gateway, int attempts) {
    if (paper.keywords) {
        auto keywords = dedupe_keywords(*paper.keywords);
        check_count(keywords, "paper \"" + paper.id + "\"");
        return keywords;
    }
    if (paper.title.empty() || paper.abstract.empty()) {
        throw Error(ErrorKind::FieldMissing, "paper \"" + paper.id + "\" needs a title and abstract for extraction");
    }
    const Bindings bindings = {
        {"title", paper.title},
        {"abstract", paper.abstract},
        {"introduction", paper.introduction},
    };
    try {
        return gateway.ask_parsed(TemplateId::Extraction, bindings,
                                  [](const std::string& text) { return parse_keyword_list(text); }, attempts);
    } catch (const Error& e) {
        throw Error(e.kind(), "paper \"" + paper.id + "\": " + e.what());
    }
}

} // namespace ideation
