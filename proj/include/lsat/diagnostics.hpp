#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsat {

// Stable diagnostic / error codes. These are part of the tool's contract:
// scripts match on them, so they never change meaning between releases.
enum class Code {
    // model validation
    E_CYCLE,
    E_SELF_CONCURRENCY,
    E_UNCLAIMED_ACTION,
    E_UNRELEASED_CLAIM,
    E_MULTI_CLAIM,
    E_RELEASE_BEFORE_CLAIM,
    E_UNKNOWN_REF,
    E_BAD_TIMING,
    E_BAD_PROFILE,
    E_MOVE_ENDPOINTS,
    // operational errors
    E_UNSUPPORTED_PROFILE,
    E_NEGATIVE_POWER,
    E_INDEX,
    E_TOO_LARGE,
    E_BUDGET,
    E_INVALID_SPEC,
    E_EMPTY_FSA,
    // parser
    P_SYNTAX,
    P_DUPLICATE,
    P_UNKNOWN_KEYWORD,
};

const char* code_name(Code c);

// Location of a token or construct in a source file. line/column are 1-based.
struct SourceSpan {
    std::string file;
    int line = 1;
    int column = 1;
    int length = 0;

    bool operator==(const SourceSpan&) const = default;
};

struct Diagnostic {
    Code code;
    std::string entity;  // id of the offending entity, may be empty
    std::string message;
    std::optional<SourceSpan> span;
};

// Renders `code:file:line:col: message`; span-less diagnostics omit the location.
std::string format_diagnostic(const Diagnostic& d);

// Sorts by entity id, then code, then message. Validation output is defined
// to be stable under this order.
void sort_diagnostics(std::vector<Diagnostic>& ds);

// Thrown by operations whose contract names an error code (budget overruns,
// bad arguments). Validation never throws; it returns Diagnostics.
class Error : public std::runtime_error {
public:
    Error(Code code, const std::string& message)
        : std::runtime_error(std::string(code_name(code)) + ": " + message), code_(code) {}

    Code code() const { return code_; }

private:
    Code code_;
};

}  // namespace lsat
