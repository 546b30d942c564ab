#include "ideation/structured.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "ideation/error.hpp"

namespace ideation {

namespace {

struct FieldSpec {
    std::string label;
    bool multiline;
};

const std::vector<FieldSpec>& specs_for(ReplyKind kind) {
    static const std::vector<FieldSpec> selection = {
        {labels::kNewKeyword, false}, {labels::kConnectedTo, false}, {labels::kReasonForSelection, true}};
    static const std::vector<FieldSpec> replacement = {{labels::kReplacementKeyword, false},
                                                       {labels::kConnectedTo, false},
                                                       {labels::kReplacedKeyword, false},
                                                       {labels::kReasonForReplacement, true}};
    static const std::vector<FieldSpec> router = {{labels::kAction, false}, {labels::kReason, true}};
    static const std::vector<FieldSpec> review = {{labels::kNovelty, true}, {labels::kFeasibility, true}};
    switch (kind) {
        case ReplyKind::Selection: return selection;
        case ReplyKind::Replacement: return replacement;
        case ReplyKind::Router: return router;
        case ReplyKind::Review: return review;
    }
    return selection;
}

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

/// If `line` opens a field, returns the spec index and the value remainder.
std::optional<std::pair<std::size_t, std::string_view>> match_label(const std::vector<FieldSpec>& specs,
                                                                    std::string_view line) {
    std::size_t i = 0;
    while (i < line.size() && (is_blank(line[i]) || line[i] == '*' || line[i] == '#')) ++i;
    auto rest = line.substr(i);
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const auto& label = specs[s].label;
        if (rest.substr(0, label.size()) != label) continue;
        auto after = rest.substr(label.size());
        while (!after.empty() && after.front() == '*') after.remove_prefix(1);
        if (after.empty() || after.front() != ':') continue;
        after.remove_prefix(1);
        while (!after.empty() && (after.front() == '*' || is_blank(after.front()))) after.remove_prefix(1);
        return std::make_pair(s, after);
    }
    return std::nullopt;
}

std::string strip_wrapping(std::string_view v) {
    v = trim(v);
    while (v.size() >= 2) {
        const char a = v.front();
        const char b = v.back();
        if ((a == '"' && b == '"') || (a == '\'' && b == '\'') || (a == '`' && b == '`') ||
            (a == '(' && b == ')') || (a == '*' && b == '*')) {
            v = trim(v.substr(1, v.size() - 2));
        } else {
            break;
        }
    }
    return std::string(v);
}

[[noreturn]] void missing(const std::string& label) {
    throw Error(ErrorKind::MissingField, "missing field " + label);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string_view strip_leading_separators(std::string_view s) {
    for (;;) {
        s = trim(s);
        if (s.empty()) return s;
        if (std::string_view("-:.,;)|]").find(s.front()) != std::string_view::npos) {
            s.remove_prefix(1);
            continue;
        }
        // en dash / em dash
        if (s.substr(0, 3) == "\xE2\x80\x93" || s.substr(0, 3) == "\xE2\x80\x94") {
            s.remove_prefix(3);
            continue;
        }
        return s;
    }
}

std::string_view strip_trailing_separators(std::string_view s) {
    for (;;) {
        s = trim(s);
        if (s.empty()) return s;
        if (std::string_view("-:.,;(|[").find(s.back()) != std::string_view::npos) {
            s.remove_suffix(1);
            continue;
        }
        return s;
    }
}

} // namespace

std::string_view to_string(ReplyKind kind) {
    switch (kind) {
        case ReplyKind::Selection: return "selection";
        case ReplyKind::Replacement: return "replacement";
        case ReplyKind::Router: return "router";
        case ReplyKind::Review: return "review";
    }
    return "unknown";
}

const std::vector<std::string>& labels_for(ReplyKind kind) {
    static const auto build = [](ReplyKind k) {
        std::vector<std::string> out;
        for (const auto& s : specs_for(k)) out.push_back(s.label);
        return out;
    };
    static const std::vector<std::string> selection = build(ReplyKind::Selection);
    static const std::vector<std::string> replacement = build(ReplyKind::Replacement);
    static const std::vector<std::string> router = build(ReplyKind::Router);
    static const std::vector<std::string> review = build(ReplyKind::Review);
    switch (kind) {
        case ReplyKind::Selection: return selection;
        case ReplyKind::Replacement: return replacement;
        case ReplyKind::Router: return router;
        case ReplyKind::Review: return review;
    }
    return selection;
}

ScoreLine parse_score_line(std::string_view label, std::string_view value) {
    const std::string name(label);
    value = trim(value);
    std::size_t pos = 0;
    while (pos < value.size() && !is_digit(value[pos])) ++pos;
    if (pos == value.size()) {
        throw Error(ErrorKind::InvalidScore, name + ": no integer score found");
    }
    if (pos > 0 && value[pos - 1] == '-' && (pos == 1 || !std::isalnum(static_cast<unsigned char>(value[pos - 2])))) {
        throw Error(ErrorKind::InvalidScore, name + ": negative score");
    }
    std::size_t end = pos;
    while (end < value.size() && is_digit(value[end])) ++end;
    if (end + 1 < value.size() && (value[end] == '.' || value[end] == ',') && is_digit(value[end + 1])) {
        throw Error(ErrorKind::InvalidScore, name + ": score is not an integer");
    }
    const auto digits = value.substr(pos, end - pos);
    if (digits.size() > 2) {
        throw Error(ErrorKind::InvalidScore, name + ": score " + std::string(digits) + " outside 1-5");
    }
    const int score = std::stoi(std::string(digits));
    if (score < 1 || score > 5) {
        throw Error(ErrorKind::InvalidScore, name + ": score " + std::to_string(score) + " outside 1-5");
    }

    auto after = value.substr(end);
    auto t = trim(after);
    if (t.substr(0, 1) == "/") {
        t.remove_prefix(1);
        t = trim(t);
        if (!t.empty() && is_digit(t.front())) t.remove_prefix(1);
    } else if (t.substr(0, 8) == "out of 5") {
        t.remove_prefix(8);
    }
    auto description = strip_leading_separators(t);
    if (description.empty()) {
        description = strip_trailing_separators(value.substr(0, pos));
    }
    if (description.empty()) missing(name + " description");
    return {score, std::string(description)};
}

StructuredReply parse_structured(ReplyKind kind, std::string_view text) {
    const auto& specs = specs_for(kind);
    std::vector<std::optional<std::string>> values(specs.size());

    std::optional<std::size_t> current;
    bool collecting = false;
    for (auto line : split_lines(text)) {
        if (auto m = match_label(specs, line)) {
            const auto [index, rest] = *m;
            if (values[index]) {
                current.reset(); // repeated label: first occurrence wins
                collecting = false;
                continue;
            }
            values[index] = std::string(rest);
            current = index;
            collecting = true;
            continue;
        }
        if (!current || !collecting) continue;
        auto& v = *values[*current];
        if (specs[*current].multiline) {
            v.push_back('\n');
            v.append(line);
        } else if (trim(v).empty() && !trim(line).empty()) {
            v = std::string(line); // value placed on the line after its label
            collecting = false;
        } else if (!trim(v).empty()) {
            collecting = false;
        }
    }

    StructuredReply reply;
    reply.kind = kind;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& label = specs[i].label;
        if (!values[i]) missing(label);
        std::string value = specs[i].multiline ? std::string(trim(*values[i])) : strip_wrapping(*values[i]);
        if (value.empty()) missing(label);
        reply.key_values[label] = std::move(value);
    }

    if (kind == ReplyKind::Router) {
        auto& action = reply.key_values[labels::kAction];
        while (!action.empty() && action.back() == '.') action.pop_back();
        action = strip_wrapping(action);
        if (action != kActionKeywordReplacement && action != kActionIdeaRewrite) {
            throw Error(ErrorKind::InvalidAction, "ACTION \"" + action + "\" is neither " +
                                                      kActionKeywordReplacement + " nor " + kActionIdeaRewrite);
        }
    } else if (kind == ReplyKind::Review) {
        parse_score_line(labels::kNovelty, reply.key_values[labels::kNovelty]);
        parse_score_line(labels::kFeasibility, reply.key_values[labels::kFeasibility]);
    }
    return reply;
}

std::string format_structured(const StructuredReply& reply) {
    std::string out;
    for (const auto& label : labels_for(reply.kind)) {
        auto it = reply.key_values.find(label);
        if (!out.empty()) out.push_back('\n');
        out += label;
        out += ": ";
        if (it != reply.key_values.end()) out += it->second;
    }
    return out;
}

} // namespace ideation
