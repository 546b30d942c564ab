#include <doctest.h>

#include <fstream>

#include "fixtures.hpp"
#include "ideation/prompts.hpp"

using namespace ideation;

TEST_CASE("builtin templates declare exactly the placeholders they use") {
    const auto lib = PromptLibrary::builtin();
    for (auto id : kAllTemplates) {
        auto used = lib.get(id).placeholders();
        auto declared = declared_placeholders(id);
        std::sort(used.begin(), used.end());
        std::sort(declared.begin(), declared.end());
        CHECK_MESSAGE(used == declared, to_string(id));
        CHECK(parse_template_id(to_string(id)) == id);
    }
}

TEST_CASE("builtin templates keep the published output formats") {
    const auto lib = PromptLibrary::builtin();
    CHECK(lib.get(TemplateId::KeywordSelection).text.find("NEW_KEYWORD:") != std::string::npos);
    CHECK(lib.get(TemplateId::KeywordSelection).text.find("REASON_FOR_SELECTION:") != std::string::npos);
    CHECK(lib.get(TemplateId::KeywordReplacement).text.find("REPLACED_KEYWORD:") != std::string::npos);
    CHECK(lib.get(TemplateId::Router).text.find("Keyword_Replacement") != std::string::npos);
    CHECK(lib.get(TemplateId::Review).text.find("Novelty Score and Description:") != std::string::npos);
    CHECK(lib.get(TemplateId::IdeaFormulation).text.find("general implementation approach") != std::string::npos);
}

TEST_CASE("render substitutes in one pass") {
    PromptLibrary lib;
    lib.set(TemplateId::Router, "A={research_idea} B={keywords} C={novelty_score_desc}{feasibility_score_desc}");
    const auto out = render_prompt(lib.get(TemplateId::Router), {{"research_idea", "{keywords}"},
                                                                 {"keywords", "k"},
                                                                 {"novelty_score_desc", "n"},
                                                                 {"feasibility_score_desc", "f"}});
    CHECK(out == "A={keywords} B=k C=nf");
}

TEST_CASE("render reports unbound placeholders and unknown templates") {
    const auto lib = PromptLibrary::builtin();
    try {
        render_prompt(lib, "review", {{"research_idea", "x"}, {"keywords", "y"}});
        FAIL("expected unbound placeholder");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnboundPlaceholder);
        CHECK(std::string(e.what()).find("graph_features") != std::string::npos);
    }
    try {
        render_prompt(lib, "nonexistent", {});
        FAIL("expected unknown template");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownTemplate);
    }
}

TEST_CASE("template overrides are validated") {
    PromptLibrary lib;
    try {
        lib.set(TemplateId::Review, "{research_idea} {surprise}");
        FAIL("expected undeclared placeholder");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnboundPlaceholder);
    }
    fixtures::TempDir dir;
    fixtures::write_file(dir.file("router.txt"), "Decide for {keywords}.");
    const auto custom = PromptLibrary::from_directory(dir.path);
    CHECK(custom.get(TemplateId::Router).text == "Decide for {keywords}.");
    CHECK(custom.get(TemplateId::Review).text == PromptLibrary::builtin().get(TemplateId::Review).text);
}
