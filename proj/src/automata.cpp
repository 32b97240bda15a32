#include "lsat/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace lsat {

namespace detail {

void sort_transitions(std::vector<Transition>& ts) {
    std::sort(ts.begin(), ts.end(), [](const Transition& a, const Transition& b) {
        if (a.event != b.event) return a.event < b.event;
        return a.target.key() < b.target.key();
    });
    ts.erase(std::unique(ts.begin(), ts.end(),
                         [](const Transition& a, const Transition& b) {
                             return a.event == b.event && a.target == b.target;
                         }),
             ts.end());
}

void sort_states(std::vector<State>& ss) {
    std::sort(ss.begin(), ss.end());
    ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
}

}  // namespace detail

std::vector<State> Automaton::targets(const State& s, const EventLabel& e) const {
    std::vector<State> out;
    for (const auto& t : successors(s))
        if (t.event == e) out.push_back(t.target);
    return out;
}

// --- synchronous composition ----------------------------------------------

namespace {

class ProductAutomaton final : public Automaton {
public:
    explicit ProductAutomaton(std::vector<AutomatonPtr> parts) : parts_(std::move(parts)) {}

    bool alphabet_contains(const EventLabel& e) const override {
        return std::any_of(parts_.begin(), parts_.end(),
                           [&](const AutomatonPtr& p) { return p->alphabet_contains(e); });
    }

    std::vector<State> initial_states() const override {
        std::vector<State> acc;
        cross(0, {}, acc);
        detail::sort_states(acc);
        return acc;
    }

    std::vector<Transition> successors(const State& s) const override {
        const auto& tuple = s.as<std::vector<State>>();
        // Candidate events come from the parts' own enumerations; a part whose
        // alphabet contains the event must then confirm it via targets().
        std::set<EventLabel> candidates;
        for (std::size_t i = 0; i < parts_.size(); ++i)
            for (const auto& t : parts_[i]->successors(tuple[i])) candidates.insert(t.event);

        std::vector<Transition> out;
        for (const auto& e : candidates) {
            std::vector<std::vector<State>> choices(parts_.size());
            bool enabled = true;
            for (std::size_t i = 0; i < parts_.size(); ++i) {
                if (parts_[i]->alphabet_contains(e)) {
                    choices[i] = parts_[i]->targets(tuple[i], e);
                    if (choices[i].empty()) {
                        enabled = false;
                        break;
                    }
                } else {
                    choices[i] = {tuple[i]};
                }
            }
            if (!enabled) continue;
            std::vector<State> picked;
            emit(e, choices, 0, picked, out);
        }
        detail::sort_transitions(out);
        return out;
    }

    std::vector<State> targets(const State& s, const EventLabel& e) const override {
        const auto& tuple = s.as<std::vector<State>>();
        std::vector<std::vector<State>> choices(parts_.size());
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i]->alphabet_contains(e)) {
                choices[i] = parts_[i]->targets(tuple[i], e);
                if (choices[i].empty()) return {};
            } else {
                choices[i] = {tuple[i]};
            }
        }
        std::vector<Transition> ts;
        std::vector<State> picked;
        emit(e, choices, 0, picked, ts);
        std::vector<State> out;
        out.reserve(ts.size());
        for (auto& t : ts) out.push_back(t.target);
        detail::sort_states(out);
        return out;
    }

    static State make_state(std::vector<State> tuple) {
        std::string key = "(";
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (i) key += " | ";
            key += tuple[i].key();
        }
        key += ")";
        return State::make(std::move(key), std::move(tuple));
    }

private:
    void cross(std::size_t i, std::vector<State> acc, std::vector<State>& out) const {
        if (i == parts_.size()) {
            out.push_back(make_state(std::move(acc)));
            return;
        }
        for (const auto& s : parts_[i]->initial_states()) {
            auto next = acc;
            next.push_back(s);
            cross(i + 1, std::move(next), out);
        }
    }

    static void emit(const EventLabel& e, const std::vector<std::vector<State>>& choices,
                     std::size_t i, std::vector<State>& picked, std::vector<Transition>& out) {
        if (i == choices.size()) {
            out.push_back({e, make_state(picked)});
            return;
        }
        for (const auto& s : choices[i]) {
            picked.push_back(s);
            emit(e, choices, i + 1, picked, out);
            picked.pop_back();
        }
    }

    std::vector<AutomatonPtr> parts_;
};

}  // namespace

AutomatonPtr sync_compose(std::vector<AutomatonPtr> parts) {
    if (parts.empty()) throw Error(Code::E_INVALID_SPEC, "composition of zero automata");
    return std::make_shared<ProductAutomaton>(std::move(parts));
}

// --- bounded exploration -----------------------------------------------------

ExploredGraph bounded_explore(const Automaton& a, int depth, std::size_t max_states, bool strict) {
    if (depth < 0) throw Error(Code::E_INDEX, "exploration depth must be >= 0");
    ExploredGraph g;
    g.depth = depth;

    std::unordered_map<std::string, int> index;
    std::vector<State> states;
    std::vector<int> state_depth;
    std::deque<int> queue;
    std::set<int> frontier;

    auto initial = a.initial_states();
    detail::sort_states(initial);
    if (initial.size() > max_states) {
        if (strict) throw Error(Code::E_BUDGET, "state budget exhausted by initial states");
        initial.resize(max_states);
        g.truncated = true;
    }
    for (const auto& s : initial) {
        int id = static_cast<int>(states.size());
        index.emplace(s.key(), id);
        states.push_back(s);
        state_depth.push_back(0);
        g.initial.push_back(id);
        queue.push_back(id);
    }

    while (!queue.empty()) {
        const int id = queue.front();
        queue.pop_front();
        if (g.truncated || state_depth[id] >= depth) {
            frontier.insert(id);
            continue;
        }
        auto succ = a.successors(states[id]);
        // atomic expansion: either all successors fit or the state stays
        // on the frontier so that member transitions never dangle
        std::set<std::string> fresh;
        for (const auto& t : succ)
            if (!index.count(t.target.key())) fresh.insert(t.target.key());
        if (states.size() + fresh.size() > max_states) {
            if (strict) throw Error(Code::E_BUDGET, "state budget exhausted");
            g.truncated = true;
            frontier.insert(id);
            continue;
        }
        for (const auto& t : succ) {
            auto it = index.find(t.target.key());
            int tid;
            if (it == index.end()) {
                tid = static_cast<int>(states.size());
                index.emplace(t.target.key(), tid);
                states.push_back(t.target);
                state_depth.push_back(state_depth[id] + 1);
                queue.push_back(tid);
            } else {
                tid = it->second;
            }
            g.transitions.emplace_back(id, t.event, tid);
        }
    }

    g.states.reserve(states.size());
    for (const auto& s : states) g.states.push_back(s.key());
    g.frontier.assign(frontier.begin(), frontier.end());
    return g;
}

// --- trace membership --------------------------------------------------------

namespace {

std::vector<State> step(const Automaton& a, const std::vector<State>& current,
                        const EventLabel& e) {
    std::vector<State> next;
    for (const auto& s : current)
        for (const auto& t : a.targets(s, e)) next.push_back(t);
    detail::sort_states(next);
    return next;
}

}  // namespace

std::optional<std::size_t> first_rejection(const Automaton& a,
                                           const std::vector<EventLabel>& trace) {
    auto current = a.initial_states();
    detail::sort_states(current);
    // no initial state: the language is empty, even the empty trace is out
    if (current.empty()) return 0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        current = step(a, current, trace[i]);
        if (current.empty()) return i;
    }
    return std::nullopt;
}

bool accepts_trace(const Automaton& a, const std::vector<EventLabel>& trace) {
    return !first_rejection(a, trace).has_value();
}

// --- bounded language equality ----------------------------------------------

namespace {

std::string subset_key(const std::vector<State>& ss) {
    std::string key;
    for (const auto& s : ss) {
        key += s.key();
        key += '\x1f';
    }
    return key;
}

}  // namespace

LanguageComparison bounded_language_equal(const Automaton& a, const Automaton& b, int depth,
                                          std::size_t max_states) {
    if (depth < 0) throw Error(Code::E_INDEX, "comparison depth must be >= 0");
    LanguageComparison result;

    struct Node {
        std::vector<State> in_a, in_b;
        std::vector<EventLabel> trace;
    };

    Node root;
    root.in_a = a.initial_states();
    root.in_b = b.initial_states();
    detail::sort_states(root.in_a);
    detail::sort_states(root.in_b);
    if (root.in_a.empty() != root.in_b.empty()) {
        result.equal = false;
        result.counterexample_in_first = !root.in_a.empty();
        return result;  // the empty trace distinguishes them
    }
    if (root.in_a.empty()) return result;

    std::set<std::pair<std::string, std::string>> visited;
    std::deque<Node> queue;
    visited.insert({subset_key(root.in_a), subset_key(root.in_b)});
    queue.push_back(std::move(root));

    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        if (static_cast<int>(node.trace.size()) >= depth) continue;

        // all events either side can perform next, in canonical order
        std::set<EventLabel> events;
        for (const auto& s : node.in_a)
            for (const auto& t : a.successors(s)) events.insert(t.event);
        for (const auto& s : node.in_b)
            for (const auto& t : b.successors(s)) events.insert(t.event);

        for (const auto& e : events) {
            std::vector<State> next_a = step(a, node.in_a, e);
            std::vector<State> next_b = step(b, node.in_b, e);
            if (next_a.empty() && next_b.empty()) continue;
            auto trace = node.trace;
            trace.push_back(e);
            if (next_a.empty() || next_b.empty()) {
                result.equal = false;
                result.counterexample = trace;
                result.counterexample_in_first = !next_a.empty();
                return result;
            }
            auto mark = std::make_pair(subset_key(next_a), subset_key(next_b));
            if (visited.count(mark)) continue;
            if (visited.size() >= max_states)
                throw Error(Code::E_BUDGET, "language comparison exceeded the state budget");
            visited.insert(std::move(mark));
            queue.push_back({std::move(next_a), std::move(next_b), std::move(trace)});
        }
    }
    return result;
}

// --- DOT export ---------------------------------------------------------------

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string export_dot(const ExploredGraph& g) {
    std::ostringstream os;
    os << "digraph exploration {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=ellipse];\n";
    std::set<int> frontier(g.frontier.begin(), g.frontier.end());
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        os << "  s" << i << " [label=\"" << dot_escape(g.states[i]) << "\"";
        if (frontier.count(static_cast<int>(i))) os << ", style=dashed";
        os << "];\n";
    }
    for (std::size_t k = 0; k < g.initial.size(); ++k) {
        os << "  __init" << k << " [shape=point, label=\"\"];\n";
        os << "  __init" << k << " -> s" << g.initial[k] << ";\n";
    }
    for (const auto& [from, event, to] : g.transitions)
        os << "  s" << from << " -> s" << to << " [label=\"" << dot_escape(event.text())
           << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace lsat
