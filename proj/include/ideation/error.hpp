#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ideation {

enum class ErrorKind {
    // corpus
    MalformedRecord,
    FieldMissing,
    DuplicateId,
    EmptyKeyword,
    ExtractionCount,
    // graph
    UnknownKeyword,
    DuplicateKeyword,
    MissingEdge,
    RelationFailed,
    SnapshotVersion,
    SnapshotCorrupt,
    // gateway
    UnknownTemplate,
    UnboundPlaceholder,
    Transport,
    ScriptUnderrun,
    MissingField,
    InvalidAction,
    InvalidScore,
    // critic / workflow
    ReviewUnavailable,
    InvalidSelection,
    InvalidReplacement,
    FormatError,
    Config,
    Io,
    Usage,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers can branch
/// on it without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    Error(ErrorKind kind, const std::string& message, ErrorKind cause)
        : std::runtime_error(message), kind_(kind), cause_(cause) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// Kind of the underlying failure when this error wraps another one.
    std::optional<ErrorKind> cause() const noexcept { return cause_; }

private:
    ErrorKind kind_;
    std::optional<ErrorKind> cause_;
};

} // namespace ideation
