// lsatool - validate .lsat specifications, build their automata semantics,
// explore, check traces and compare dispatch descriptions.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lsat/dsl.hpp"
#include "lsat/system.hpp"

namespace {

// 0 clean, 1 diagnostics/violation, 2 usage or I/O, 3 budget
constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct LoadedSpec {
    lsat::Specification spec;
    std::vector<lsat::Diagnostic> diagnostics;  // parse + validation
};

// parse + validate, attaching declaration spans to model diagnostics
int load_spec(const std::string& path, LoadedSpec& out) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return kUsage;
    }
    auto parsed = lsat::dsl::parse(*text, path);
    out.spec = parsed.spec;
    out.diagnostics = parsed.diagnostics;
    if (parsed.ok()) {
        auto model_diags = lsat::validate_spec(parsed.spec);
        for (auto& d : model_diags) {
            auto it = parsed.entity_spans.find(d.entity);
            if (it != parsed.entity_spans.end()) d.span = it->second;
            out.diagnostics.push_back(std::move(d));
        }
    }
    return kOk;
}

void print_diagnostics(const std::vector<lsat::Diagnostic>& ds) {
    for (const auto& d : ds) std::cerr << lsat::format_diagnostic(d) << "\n";
}

std::map<lsat::PeripheralId, std::string> parse_pins(const std::vector<std::string>& pins,
                                                     bool& ok) {
    std::map<lsat::PeripheralId, std::string> out;
    ok = true;
    for (const auto& pin : pins) {
        auto eq = pin.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= pin.size()) {
            std::cerr << "error: --initial expects peripheral=state, got '" << pin << "'\n";
            ok = false;
            continue;
        }
        out[pin.substr(0, eq)] = pin.substr(eq + 1);
    }
    return out;
}

// the system automaton for whichever dispatch the file declares
lsat::AutomatonPtr build_system(const lsat::Specification& spec,
                                const std::map<lsat::PeripheralId, std::string>& pins) {
    if (auto* seq = std::get_if<lsat::DispatchingSequence>(&spec.dispatch)) {
        lsat::MseqOptions opt;
        opt.pinned_initials = pins;
        return lsat::build_mseq(spec, *seq, opt);
    }
    lsat::MSeqOptions opt;
    opt.pinned_initials = pins;
    return lsat::build_mSeq(spec, std::get<lsat::DispatchFSA>(spec.dispatch), opt);
}

int run_explore(const std::string& file, int depth, std::size_t max_states, bool strict,
                bool as_json, const std::string& dot_path, const std::vector<std::string>& pins,
                bool dot_to_stdout) {
    LoadedSpec loaded;
    if (int rc = load_spec(file, loaded)) return rc;
    if (!loaded.diagnostics.empty()) {
        print_diagnostics(loaded.diagnostics);
        return kViolation;
    }
    bool pins_ok = true;
    auto pin_map = parse_pins(pins, pins_ok);
    if (!pins_ok) return kUsage;

    try {
        auto automaton = build_system(loaded.spec, pin_map);
        auto graph = lsat::bounded_explore(*automaton, depth, max_states, strict);
        if (!dot_path.empty()) {
            std::ofstream dot(dot_path);
            if (!dot) {
                std::cerr << "error: cannot write '" << dot_path << "'\n";
                return kUsage;
            }
            dot << lsat::export_dot(graph);
        }
        if (dot_to_stdout) {
            std::cout << lsat::export_dot(graph);
            return kOk;
        }
        if (as_json) {
            nlohmann::ordered_json summary;
            summary["states"] = graph.states.size();
            summary["transitions"] = graph.transitions.size();
            summary["frontier"] = graph.frontier.size();
            summary["depth"] = graph.depth;
            summary["truncated"] = graph.truncated;
            std::cout << summary.dump() << "\n";
        } else {
            std::cout << "states=" << graph.states.size()
                      << " transitions=" << graph.transitions.size()
                      << " frontier=" << graph.frontier.size() << " depth=" << graph.depth << "\n";
        }
        return kOk;
    } catch (const lsat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == lsat::Code::E_BUDGET ? kBudget : kViolation;
    }
}

int run_trace(const std::string& file, const std::string& trace_path) {
    LoadedSpec loaded;
    if (int rc = load_spec(file, loaded)) return rc;
    if (!loaded.diagnostics.empty()) {
        print_diagnostics(loaded.diagnostics);
        return kViolation;
    }
    auto text = read_file(trace_path);
    if (!text) {
        std::cerr << "error: cannot read '" << trace_path << "'\n";
        return kUsage;
    }
    auto parsed = lsat::dsl::parse_trace(*text, trace_path);
    if (parsed.error) {
        std::cerr << lsat::format_diagnostic(*parsed.error) << "\n";
        return kUsage;
    }
    std::vector<lsat::EventLabel> events;
    events.reserve(parsed.events.size());
    for (const auto& [_, e] : parsed.events) events.push_back(e);

    auto automaton = build_system(loaded.spec, {});
    auto rejected = lsat::first_rejection(*automaton, events);
    if (!rejected) {
        std::cout << "accept\n";
        return kOk;
    }
    const int line = parsed.events.empty()
                         ? 1
                         : parsed.events[std::min(*rejected, parsed.events.size() - 1)].first;
    std::cout << "reject at line " << line << "\n";
    return kViolation;
}

int run_complete_check(const std::string& file, const std::string& candidates_path, int depth,
                       bool suggest, int max_len) {
    LoadedSpec loaded;
    if (int rc = load_spec(file, loaded)) return rc;
    if (!loaded.diagnostics.empty()) {
        print_diagnostics(loaded.diagnostics);
        return kViolation;
    }
    auto* fsa = std::get_if<lsat::DispatchFSA>(&loaded.spec.dispatch);
    if (!fsa) {
        std::cerr << "error: '" << file << "' does not declare a dispatch fsa\n";
        return kUsage;
    }

    std::vector<lsat::DispatchingSequence> candidates;
    if (suggest) {
        try {
            candidates = lsat::suggest_complete_set(*fsa, max_len);
        } catch (const lsat::Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kBudget;
        }
        for (const auto& c : candidates) std::cout << "candidate: " << lsat::to_text(c) << "\n";
    } else {
        auto text = read_file(candidates_path);
        if (!text) {
            std::cerr << "error: cannot read '" << candidates_path << "'\n";
            return kUsage;
        }
        std::istringstream lines(*text);
        std::string line;
        int line_no = 0;
        while (std::getline(lines, line)) {
            line_no++;
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            auto seq = lsat::sequence_from_text(line);
            if (!seq) {
                std::cerr << "error: " << candidates_path << ":" << line_no
                          << ": malformed sequence '" << line << "'\n";
                return kUsage;
            }
            candidates.push_back(*seq);
        }
    }

    auto report = lsat::check_complete(*fsa, candidates, depth);
    std::cout << "complete at depth " << report.depth << ": " << (report.complete() ? "yes" : "no")
              << "\n";
    for (const auto& w : report.missing_words) std::cout << "missing word: " << lsat::to_text(w) << "\n";
    for (const auto& bp : report.bad_prefixes)
        std::cout << "bad prefix: " << lsat::to_text(bp.candidate) << " : " << lsat::to_text(bp.prefix)
                  << "\n";
    return report.complete() ? kOk : kViolation;
}

int run_stats(const std::string& file) {
    LoadedSpec loaded;
    if (int rc = load_spec(file, loaded)) return rc;
    if (!loaded.diagnostics.empty()) {
        print_diagnostics(loaded.diagnostics);
        return kViolation;
    }
    const auto& spec = loaded.spec;
    std::cout << "resources=" << spec.resources.size() << " peripherals=" << spec.peripherals.size()
              << " activities=" << spec.activities.size() << "\n";
    for (const auto& [pid, p] : spec.peripherals) {
        if (auto* u = std::get_if<lsat::UnmovablePeripheral>(&p.kind)) {
            for (const auto& [a, t] : u->actions)
                std::cout << "action " << pid << "." << a << " mean=" << lsat::timing_mean(t) << "\n";
        } else {
            for (const auto& [id, mv] : std::get<lsat::MovablePeripheral>(p.kind).moves) {
                std::cout << "move " << pid << "." << id;
                try {
                    std::cout << " duration=" << lsat::movement_duration(mv);
                } catch (const lsat::Error&) {
                    std::cout << " duration=n/a";  // third-order profiles are not timed
                }
                std::cout << "\n";
            }
        }
    }
    for (const auto& [aid, act] : spec.activities) {
        std::cout << "activity " << aid << " nodes=" << act.nodes.size()
                  << " edges=" << act.edges.size() << " resources=";
        bool first = true;
        for (const auto& r : act.resources()) {
            if (!first) std::cout << ",";
            std::cout << r;
            first = false;
        }
        std::cout << "\n";
    }
    if (auto* seq = std::get_if<lsat::DispatchingSequence>(&spec.dispatch)) {
        std::cout << "dispatch sequence " << lsat::to_text(*seq) << "\n";
        auto used = lsat::used_sets(spec, *seq);
        for (const auto& [act, bound] : used.instance_bound) {
            std::cout << "instances " << act << "=";
            if (bound)
                std::cout << *bound;
            else
                std::cout << "unbounded";
            std::cout << "\n";
        }
    } else {
        const auto& fsa = std::get<lsat::DispatchFSA>(spec.dispatch);
        std::cout << "dispatch fsa states=" << fsa.states.size()
                  << " edges=" << fsa.transitions.size() << " initial=" << fsa.initial.size()
                  << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"automata semantics for .lsat manufacturing specifications"};
    app.require_subcommand(1);
    int seed = 0;
    app.add_option("--seed", seed, "reserved; no randomized behavior");

    std::string file, trace_path, dot_path, candidates_path;
    int depth = 10;
    std::size_t max_states = 10000;
    bool strict = false, as_json = false, suggest = false;
    int max_len = 4;
    std::vector<std::string> pins;

    auto* validate = app.add_subcommand("validate", "check a specification");
    validate->add_option("file", file)->required();

    auto* explore = app.add_subcommand("explore", "bounded exploration of the system automaton");
    explore->add_option("file", file)->required();
    explore->add_option("--depth", depth, "transition depth")->check(CLI::NonNegativeNumber);
    explore->add_option("--max-states", max_states, "state budget");
    explore->add_option("--dot", dot_path, "write the explored graph as DOT");
    explore->add_option("--initial", pins, "pin a peripheral's initial state (p=state)");
    explore->add_flag("--json", as_json, "machine-readable summary");
    explore->add_flag("--strict", strict, "fail with exit 3 when the budget truncates");

    auto* dot = app.add_subcommand("dot", "print the explored graph as DOT");
    dot->add_option("file", file)->required();
    dot->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
    dot->add_option("--max-states", max_states);
    dot->add_option("--initial", pins);

    auto* trace = app.add_subcommand("trace", "check a trace file against the system automaton");
    trace->add_option("file", file)->required();
    trace->add_option("tracefile", trace_path)->required();

    auto* complete = app.add_subcommand("complete-check",
                                        "check a candidate sequence set against the dispatch fsa");
    complete->add_option("file", file)->required();
    complete->add_option("--candidates", candidates_path, "file with one sequence per line");
    complete->add_flag("--suggest", suggest, "enumerate candidate lassos instead");
    complete->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
    complete->add_option("--max-len", max_len, "stem/cycle bound for --suggest");

    auto* stats = app.add_subcommand("stats", "model summary");
    stats->add_option("file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kUsage;
    }

    try {
        if (app.got_subcommand(validate)) {
            LoadedSpec loaded;
            if (int rc = load_spec(file, loaded)) return rc;
            if (!loaded.diagnostics.empty()) {
                print_diagnostics(loaded.diagnostics);
                return kViolation;
            }
            return kOk;
        }
        if (app.got_subcommand(explore))
            return run_explore(file, depth, max_states, strict, as_json, dot_path, pins, false);
        if (app.got_subcommand(dot))
            return run_explore(file, depth, max_states, false, false, "", pins, true);
        if (app.got_subcommand(trace)) return run_trace(file, trace_path);
        if (app.got_subcommand(complete)) {
            if (!suggest && candidates_path.empty()) {
                std::cerr << "error: provide --candidates FILE or --suggest\n";
                return kUsage;
            }
            return run_complete_check(file, candidates_path, depth, suggest, max_len);
        }
        if (app.got_subcommand(stats)) return run_stats(file);
    } catch (const lsat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == lsat::Code::E_BUDGET ? kBudget : kViolation;
    }
    return kUsage;
}
