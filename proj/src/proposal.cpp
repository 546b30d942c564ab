#include "ideation/proposal.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>

#include "ideation/error.hpp"

namespace ideation {

namespace {

enum Section { kBackground = 0, kIdea = 1, kImplementation = 2 };

constexpr std::array<const char*, 3> kHeadings = {"Research Background", "Research Idea",
                                                  "Implementation Approach"};

bool blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && blank(s.front())) s.remove_prefix(1);
    while (!s.empty() && blank(s.back())) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::optional<Section> classify(std::string head) {
    for (const char* article : {"the ", "a "}) {
        if (head.rfind(article, 0) == 0) head.erase(0, std::char_traits<char>::length(article));
    }
    if (head == "research background" || head == "background") return kBackground;
    if (head == "research idea" || head == "idea" || head == "novel idea" || head == "novel research idea") {
        return kIdea;
    }
    if (head == "general implementation approach" || head == "implementation approach" ||
        head == "implementation" || head == "implementation plan") {
        return kImplementation;
    }
    return std::nullopt;
}

/// Recognizes heading lines; returns the section and any text after a colon.
std::optional<std::pair<Section, std::string_view>> heading(std::string_view line) {
    auto s = trim(line);
    while (!s.empty() && (s.front() == '#' || s.front() == '*' || s.front() == '-' || blank(s.front()))) {
        s.remove_prefix(1);
    }
    std::size_t digits = 0;
    while (digits < s.size() && s[digits] >= '0' && s[digits] <= '9') ++digits;
    if (digits > 0 && digits < s.size() && (s[digits] == '.' || s[digits] == ')')) s = trim(s.substr(digits + 1));

    std::string_view head = s;
    std::string_view rest;
    if (auto colon = s.find(':'); colon != std::string_view::npos) {
        head = s.substr(0, colon);
        rest = s.substr(colon + 1);
    }
    while (!head.empty() && (head.back() == '*' || blank(head.back()))) head.remove_suffix(1);
    while (!rest.empty() && (rest.front() == '*' || blank(rest.front()))) rest.remove_prefix(1);
    if (head.size() > 48) return std::nullopt;
    auto section = classify(lower(head));
    if (!section) return std::nullopt;
    return std::make_pair(*section, rest);
}

} // namespace

IdeaProposal parse_proposal(std::string_view text) {
    std::array<std::optional<std::string>, 3> parts;
    std::optional<Section> current;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        if (auto h = heading(line); h && !parts[h->first]) {
            current = h->first;
            parts[*current] = std::string(h->second);
            continue;
        }
        if (current) {
            auto& part = *parts[*current];
            if (!part.empty()) part.push_back('\n');
            part.append(line);
        }
    }

    std::array<std::string, 3> out;
    for (int s = 0; s < 3; ++s) {
        if (!parts[s] || trim(*parts[s]).empty()) {
            throw Error(ErrorKind::FormatError, std::string("idea proposal is missing the \"") + kHeadings[s] +
                                                    "\" section");
        }
        out[s] = std::string(trim(*parts[s]));
    }
    return IdeaProposal{out[0], out[1], out[2], {}};
}

std::string format_proposal(const IdeaProposal& p) {
    return std::string(kHeadings[0]) + ":\n" + p.background + "\n\n" + kHeadings[1] + ":\n" + p.idea + "\n\n" +
           kHeadings[2] + ":\n" + p.implementation;
}

} // namespace ideation
