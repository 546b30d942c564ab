#include "ideation/gateway.hpp"

namespace ideation {

ChatRequest Gateway::build_request(TemplateId id, const Bindings& bindings) const {
    ChatRequest request;
    request.template_id = id;
    request.model = options_.model;
    request.max_tokens = options_.max_tokens;
    if (auto it = options_.temperatures.find(id); it != options_.temperatures.end()) {
        request.temperature = it->second;
    }
    request.messages.push_back(
        {options_.instructions_as_system ? "system" : "user", render_prompt(prompts_->get(id), bindings)});
    return request;
}

std::string Gateway::ask(TemplateId id, const Bindings& bindings) {
    return complete(*provider_, build_request(id, bindings));
}

bool Gateway::is_retryable_reply_error(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MissingField:
        case ErrorKind::InvalidAction:
        case ErrorKind::InvalidScore:
        case ErrorKind::InvalidSelection:
        case ErrorKind::InvalidReplacement:
        case ErrorKind::FormatError:
        case ErrorKind::ExtractionCount:
        case ErrorKind::EmptyKeyword:
            return true;
        default:
            return false;
    }
}

} // namespace ideation
