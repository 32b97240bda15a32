#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lsat/diagnostics.hpp"
#include "lsat/model.hpp"

namespace lsat::dsl {

struct ParseResult {
    Specification spec;
    std::vector<Diagnostic> diagnostics;
    // declaration sites of named entities ("Act", "Act.n1", "p1", "p1.a"),
    // for attaching source spans to model-level diagnostics
    std::map<std::string, SourceSpan> entity_spans;

    bool ok() const { return diagnostics.empty(); }
};

// Parses the .lsat syntax. Never throws: syntax errors come back as
// diagnostics with source spans, alongside whatever could be recovered.
ParseResult parse(std::string_view text, const std::string& file = "<input>");

// Canonical rendering: declarations sorted by id, defaults materialized,
// comments dropped. parse(pretty_print(parse(x))) == parse(x).
std::string pretty_print(const Specification& spec);

// Trace files: one event per line in the wire encoding, lines whose first
// non-blank character is '#' are comments, blank lines are skipped.
// Returns (line number, event) pairs or a diagnostic for the first bad line.
struct TraceParse {
    std::vector<std::pair<int, EventLabel>> events;
    std::optional<Diagnostic> error;
};
TraceParse parse_trace(std::string_view text, const std::string& file = "<trace>");

}  // namespace lsat::dsl
