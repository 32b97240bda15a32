#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lsat/model.hpp"

namespace lsat {

// A state handle. The carried value is owned and immutable; identity is the
// canonical key, which the producing automaton guarantees to be injective on
// its reachable states. Keys are printable and stable across runs.
class State {
public:
    template <typename T>
    static State make(std::string key, T value) {
        State s;
        s.key_ = std::move(key);
        s.data_ = std::make_shared<T>(std::move(value));
        return s;
    }
    static State keyed(std::string key) {
        State s;
        s.key_ = std::move(key);
        return s;
    }

    const std::string& key() const { return key_; }

    template <typename T>
    const T& as() const {
        return *std::static_pointer_cast<const T>(data_);
    }

    bool operator==(const State& o) const { return key_ == o.key_; }
    bool operator<(const State& o) const { return key_ < o.key_; }

private:
    std::string key_;
    std::shared_ptr<const void> data_;
};

struct Transition {
    EventLabel event;
    State target;
};

// The lazy, possibly infinite-state LTS contract. Alphabets are membership
// predicates: component alphabets may quantify over an unbounded set of
// activity instances, so they are never materialized. successors() must be a
// pure function of the state and return a finite list, sorted by
// (event, target key); for automata whose raw transition relation fans out
// over an unbounded instance set, successors() enumerates a finite window
// while targets() answers membership-exact queries for composition.
class Automaton {
public:
    virtual ~Automaton() = default;

    virtual bool alphabet_contains(const EventLabel& e) const = 0;
    virtual std::vector<State> initial_states() const = 0;
    virtual std::vector<Transition> successors(const State& s) const = 0;

    // Targets reached from s by exactly event e. The default filters
    // successors(); override where the alphabet is wider than the
    // enumeration window.
    virtual std::vector<State> targets(const State& s, const EventLabel& e) const;
};

using AutomatonPtr = std::shared_ptr<const Automaton>;

namespace detail {
// canonical order used everywhere successors are produced
void sort_transitions(std::vector<Transition>& ts);
void sort_states(std::vector<State>& ss);
}  // namespace detail

// Finite window onto a (possibly infinite) automaton.
struct ExploredGraph {
    std::vector<std::string> states;  // keys, in BFS discovery order
    std::vector<std::tuple<int, EventLabel, int>> transitions;
    std::vector<int> initial;
    std::vector<int> frontier;  // states whose successors were not expanded
    int depth = 0;
    bool truncated = false;  // state budget was hit
};

// Synchronous composition: shared events move in lock-step, unique events
// interleave. Associative and commutative up to state-tuple relabeling.
AutomatonPtr sync_compose(std::vector<AutomatonPtr> parts);

// Breadth-first closure of the initial states up to `depth` transitions,
// truncated at max_states. Expansion of one state is atomic: if its
// successors do not fit in the budget the state is left on the frontier.
// strict=true turns truncation into Error{E_BUDGET}.
ExploredGraph bounded_explore(const Automaton& a, int depth, std::size_t max_states,
                              bool strict = false);

// Membership of a finite trace in the (prefix-closed) language.
bool accepts_trace(const Automaton& a, const std::vector<EventLabel>& trace);

// Index (0-based) of the first event that cannot be executed; nullopt when
// the whole trace is accepted.
std::optional<std::size_t> first_rejection(const Automaton& a, const std::vector<EventLabel>& trace);

struct LanguageComparison {
    bool equal = true;
    std::vector<EventLabel> counterexample;  // a shortest distinguishing trace
    bool counterexample_in_first = false;    // which side accepts it
};

// Compares the sets of traces of length <= depth. Walks the pair of subset
// graphs, so it terminates on infinite-state inputs whenever the bounded
// subset graphs are finite; max_states bounds the walk (Error{E_BUDGET}).
LanguageComparison bounded_language_equal(const Automaton& a, const Automaton& b, int depth,
                                          std::size_t max_states = 1u << 20);

// Deterministic GraphViz rendering: entry arrows from point-shaped
// pseudo-nodes, frontier states dashed.
std::string export_dot(const ExploredGraph& g);

}  // namespace lsat
