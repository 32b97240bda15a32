#include "lsat/diagnostics.hpp"

#include <algorithm>
#include <tuple>

namespace lsat {

const char* code_name(Code c) {
    switch (c) {
        case Code::E_CYCLE: return "E_CYCLE";
        case Code::E_SELF_CONCURRENCY: return "E_SELF_CONCURRENCY";
        case Code::E_UNCLAIMED_ACTION: return "E_UNCLAIMED_ACTION";
        case Code::E_UNRELEASED_CLAIM: return "E_UNRELEASED_CLAIM";
        case Code::E_MULTI_CLAIM: return "E_MULTI_CLAIM";
        case Code::E_RELEASE_BEFORE_CLAIM: return "E_RELEASE_BEFORE_CLAIM";
        case Code::E_UNKNOWN_REF: return "E_UNKNOWN_REF";
        case Code::E_BAD_TIMING: return "E_BAD_TIMING";
        case Code::E_BAD_PROFILE: return "E_BAD_PROFILE";
        case Code::E_MOVE_ENDPOINTS: return "E_MOVE_ENDPOINTS";
        case Code::E_UNSUPPORTED_PROFILE: return "E_UNSUPPORTED_PROFILE";
        case Code::E_NEGATIVE_POWER: return "E_NEGATIVE_POWER";
        case Code::E_INDEX: return "E_INDEX";
        case Code::E_TOO_LARGE: return "E_TOO_LARGE";
        case Code::E_BUDGET: return "E_BUDGET";
        case Code::E_INVALID_SPEC: return "E_INVALID_SPEC";
        case Code::E_EMPTY_FSA: return "E_EMPTY_FSA";
        case Code::P_SYNTAX: return "P_SYNTAX";
        case Code::P_DUPLICATE: return "P_DUPLICATE";
        case Code::P_UNKNOWN_KEYWORD: return "P_UNKNOWN_KEYWORD";
    }
    return "E_UNKNOWN";
}

std::string format_diagnostic(const Diagnostic& d) {
    std::string out = code_name(d.code);
    if (d.span) {
        out += ":" + d.span->file + ":" + std::to_string(d.span->line) + ":" +
               std::to_string(d.span->column);
    }
    out += ": " + d.message;
    return out;
}

void sort_diagnostics(std::vector<Diagnostic>& ds) {
    std::stable_sort(ds.begin(), ds.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.entity, a.code, a.message) < std::tie(b.entity, b.code, b.message);
    });
}

}  // namespace lsat
