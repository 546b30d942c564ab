#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ideation {

enum class TemplateId {
    RelationAnalysis,
    KeywordSelection,
    KeywordReplacement,
    IdeaFormulation,
    Review,
    Router,
    Extraction,
};

inline constexpr std::array<TemplateId, 7> kAllTemplates = {
    TemplateId::RelationAnalysis, TemplateId::KeywordSelection, TemplateId::KeywordReplacement,
    TemplateId::IdeaFormulation,  TemplateId::Review,           TemplateId::Router,
    TemplateId::Extraction,
};

/// Snake-case id, also the template's file stem (e.g. "keyword_selection").
std::string_view to_string(TemplateId id);
std::optional<TemplateId> parse_template_id(std::string_view name);

/// Placeholder names each template is allowed to use.
const std::vector<std::string>& declared_placeholders(TemplateId id);

using Bindings = std::map<std::string, std::string>;

struct PromptTemplate {
    TemplateId id = TemplateId::RelationAnalysis;
    std::string text;

    /// Names of `{name}` placeholders in order of first appearance.
    std::vector<std::string> placeholders() const;
};

/// The template set. Defaults to the texts compiled in from prompts/*.txt;
/// a directory of `<template_id>.txt` files can override any of them.
class PromptLibrary {
public:
    PromptLibrary();

    static PromptLibrary builtin();
    /// Files missing from `dir` keep their built-in text.
    static PromptLibrary from_directory(const std::filesystem::path& dir);

    const PromptTemplate& get(TemplateId id) const;
    /// Throws UnknownTemplate for names that are not template ids.
    const PromptTemplate& get(std::string_view name) const;

    /// Throws UnboundPlaceholder if `text` uses a name not declared for `id`.
    void set(TemplateId id, std::string text);

private:
    std::map<TemplateId, PromptTemplate> templates_;
};

/// Single-pass substitution of every `{name}`. Bound values are inserted
/// literally and never re-expanded. Throws UnboundPlaceholder naming the first
/// placeholder without a binding.
std::string render_prompt(const PromptTemplate& tmpl, const Bindings& bindings);
std::string render_prompt(const PromptLibrary& library, std::string_view template_name,
                          const Bindings& bindings);

namespace detail {
/// Generated at build time from prompts/*.txt.
std::string_view embedded_prompt(TemplateId id);
} // namespace detail

} // namespace ideation
