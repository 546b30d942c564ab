#include "ideation/error.hpp"

namespace ideation {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedRecord: return "malformed-record";
        case ErrorKind::FieldMissing: return "field-missing";
        case ErrorKind::DuplicateId: return "duplicate-id";
        case ErrorKind::EmptyKeyword: return "empty-keyword";
        case ErrorKind::ExtractionCount: return "extraction-count";
        case ErrorKind::UnknownKeyword: return "unknown-keyword";
        case ErrorKind::DuplicateKeyword: return "duplicate-keyword";
        case ErrorKind::MissingEdge: return "missing-edge";
        case ErrorKind::RelationFailed: return "relation-failed";
        case ErrorKind::SnapshotVersion: return "snapshot-version";
        case ErrorKind::SnapshotCorrupt: return "snapshot-corrupt";
        case ErrorKind::UnknownTemplate: return "unknown-template";
        case ErrorKind::UnboundPlaceholder: return "unbound-placeholder";
        case ErrorKind::Transport: return "transport";
        case ErrorKind::ScriptUnderrun: return "script-underrun";
        case ErrorKind::MissingField: return "missing-field";
        case ErrorKind::InvalidAction: return "invalid-action";
        case ErrorKind::InvalidScore: return "invalid-score";
        case ErrorKind::ReviewUnavailable: return "review-unavailable";
        case ErrorKind::InvalidSelection: return "invalid-selection";
        case ErrorKind::InvalidReplacement: return "invalid-replacement";
        case ErrorKind::FormatError: return "format-error";
        case ErrorKind::Config: return "config";
        case ErrorKind::Io: return "io";
        case ErrorKind::Usage: return "usage";
    }
    return "unknown";
}

} // namespace ideation
