#include "ideation/prompts.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ideation/error.hpp"

namespace ideation {

namespace {

bool is_ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

/// Calls `on_text(begin, end)` for literal runs and `on_placeholder(name)` for
/// every `{name}`. Braces that do not enclose an identifier are literal.
template <typename OnText, typename OnPlaceholder>
void scan(std::string_view text, OnText on_text, OnPlaceholder on_placeholder) {
    std::size_t literal_start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '{') {
            std::size_t j = i + 1;
            while (j < text.size() && is_ident_char(text[j])) ++j;
            if (j > i + 1 && j < text.size() && text[j] == '}') {
                on_text(text.substr(literal_start, i - literal_start));
                on_placeholder(std::string(text.substr(i + 1, j - i - 1)));
                i = j + 1;
                literal_start = i;
                continue;
            }
        }
        ++i;
    }
    on_text(text.substr(literal_start));
}

} // namespace

std::string_view to_string(TemplateId id) {
    switch (id) {
        case TemplateId::RelationAnalysis: return "relation_analysis";
        case TemplateId::KeywordSelection: return "keyword_selection";
        case TemplateId::KeywordReplacement: return "keyword_replacement";
        case TemplateId::IdeaFormulation: return "idea_formulation";
        case TemplateId::Review: return "review";
        case TemplateId::Router: return "router";
        case TemplateId::Extraction: return "extraction";
    }
    return "unknown";
}

std::optional<TemplateId> parse_template_id(std::string_view name) {
    for (auto id : kAllTemplates) {
        if (to_string(id) == name) return id;
    }
    return std::nullopt;
}

const std::vector<std::string>& declared_placeholders(TemplateId id) {
    static const std::map<TemplateId, std::vector<std::string>> table = {
        {TemplateId::RelationAnalysis, {"keyword1", "keyword2", "title", "abstract", "introduction"}},
        {TemplateId::KeywordSelection, {"idea_stack", "candidate_keywords_and_relationships"}},
        {TemplateId::KeywordReplacement,
         {"keywords", "flexible_keywords", "idea_stack", "candidate_keywords_and_relationships"}},
        {TemplateId::IdeaFormulation, {"keywords", "status_bar"}},
        {TemplateId::Review, {"research_idea", "keywords", "graph_features"}},
        {TemplateId::Router, {"research_idea", "keywords", "novelty_score_desc", "feasibility_score_desc"}},
        {TemplateId::Extraction, {"title", "abstract", "introduction"}},
    };
    return table.at(id);
}

std::vector<std::string> PromptTemplate::placeholders() const {
    std::vector<std::string> names;
    scan(
        text, [](std::string_view) {},
        [&](std::string name) {
            if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(std::move(name));
        });
    return names;
}

PromptLibrary::PromptLibrary() {
    for (auto id : kAllTemplates) set(id, std::string(detail::embedded_prompt(id)));
}

PromptLibrary PromptLibrary::builtin() { return PromptLibrary{}; }

PromptLibrary PromptLibrary::from_directory(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw Error(ErrorKind::Io, "prompt directory \"" + dir.string() + "\" does not exist");
    }
    PromptLibrary lib;
    for (auto id : kAllTemplates) {
        auto path = dir / (std::string(to_string(id)) + ".txt");
        if (!std::filesystem::exists(path)) continue;
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        lib.set(id, buf.str());
    }
    return lib;
}

const PromptTemplate& PromptLibrary::get(TemplateId id) const { return templates_.at(id); }

const PromptTemplate& PromptLibrary::get(std::string_view name) const {
    auto id = parse_template_id(name);
    if (!id) throw Error(ErrorKind::UnknownTemplate, "unknown template \"" + std::string(name) + "\"");
    return get(*id);
}

void PromptLibrary::set(TemplateId id, std::string text) {
    PromptTemplate tmpl{id, std::move(text)};
    const auto& declared = declared_placeholders(id);
    for (const auto& name : tmpl.placeholders()) {
        if (std::find(declared.begin(), declared.end(), name) == declared.end()) {
            throw Error(ErrorKind::UnboundPlaceholder, "template " + std::string(to_string(id)) +
                                                           " uses undeclared placeholder {" + name + "}");
        }
    }
    templates_[id] = std::move(tmpl);
}

std::string render_prompt(const PromptTemplate& tmpl, const Bindings& bindings) {
    std::string out;
    out.reserve(tmpl.text.size() * 2);
    scan(
        tmpl.text, [&](std::string_view literal) { out.append(literal); },
        [&](const std::string& name) {
            auto it = bindings.find(name);
            if (it == bindings.end()) {
                throw Error(ErrorKind::UnboundPlaceholder, "template " + std::string(to_string(tmpl.id)) +
                                                               ": unbound placeholder {" + name + "}");
            }
            out.append(it->second);
        });
    return out;
}

std::string render_prompt(const PromptLibrary& library, std::string_view template_name,
                          const Bindings& bindings) {
    return render_prompt(library.get(template_name), bindings);
}

} // namespace ideation
