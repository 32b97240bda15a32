#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lsat/automata.hpp"
#include "lsat/builders.hpp"
#include "lsat/model.hpp"
#include "lsat/sequence.hpp"

namespace lsat {

// Finite presentation of the full-system product state. Availability automata
// become the claimed flags, claiming automata become per-resource counters,
// activity-instance automata become the in-flight postsets plus a completed
// counter (completion of same-activity instances is FIFO in every reachable
// state, so a counter is a faithful summary), peripheral automata become the
// last-action / position map.
struct SystemState {
    std::map<ResourceId, bool> claimed;
    std::map<ResourceId, std::size_t> claim_count;
    std::map<ActivityInstance, std::set<NodeId>> in_flight;
    std::map<ActivityId, int> completed;
    std::map<PeripheralId, std::string> peripheral;

    std::string key() const;
};

// State of the union product driven by a dispatch FSA: dispatching an
// activity is an internal step that advances the FSA and appends the new
// instance to the claim queue of every resource it uses.
struct UnionSystemState {
    std::string fsa_state;
    std::map<ActivityId, int> dispatched;
    std::map<ResourceId, std::deque<ActivityInstance>> queues;
    std::map<ResourceId, bool> claimed;
    std::map<ActivityInstance, std::set<NodeId>> in_flight;
    std::map<ActivityId, int> completed;
    std::map<PeripheralId, std::string> peripheral;

    std::string key() const;
};

struct MseqOptions {
    enum class Route { Lazy, Explicit };
    Route route = Route::Lazy;
    std::map<PeripheralId, std::string> pinned_initials;
    // enumeration window for unbounded instance sets in the explicit
    // component automata (stand-alone exploration only; composition is exact)
    int window = 3;
};

// The component automata of one dispatching sequence, in deterministic order:
// availability and claiming per used resource, one activity automaton per
// used instance, one peripheral automaton per used peripheral. Requires a
// finite instance universe (Error{E_BUDGET} otherwise): a periodic sequence
// needs infinitely many instance automata.
std::vector<AutomatonPtr> component_automata(const Specification& spec,
                                             const DispatchingSequence& seq,
                                             const MseqOptions& options = {});

// Full-system automaton for one dispatching sequence. The default lazy route
// carries SystemState values and supports unbounded instance sets; the
// explicit route is sync_compose over component_automata. Both have the same
// bounded language. Throws Error{E_INVALID_SPEC} when validation fails.
AutomatonPtr build_mseq(const Specification& spec, const DispatchingSequence& seq,
                        const MseqOptions& options = {});

struct MSeqOptions {
    std::map<PeripheralId, std::string> pinned_initials;
    // max consecutive internal dispatch steps between observable events;
    // 0 selects max(4, 2 * |fsa states|), enough to walk any simple FSA path
    int dispatch_cap = 0;
};

// Union automaton over every dispatching sequence allowed by the FSA.
// Dispatch steps are unobservable; traces contain claim/release/action
// events only. Throws Error{E_INVALID_SPEC} / Error{E_EMPTY_FSA}.
AutomatonPtr build_mSeq(const Specification& spec, const DispatchFSA& fsa,
                        const MSeqOptions& options = {});

struct CompletenessReport {
    int depth = 0;
    // words of the FSA language no candidate sequence has as a prefix
    std::vector<ActivitySequence> missing_words;
    // candidate prefixes outside the FSA language
    struct BadPrefix {
        DispatchingSequence candidate;
        ActivitySequence prefix;
    };
    std::vector<BadPrefix> bad_prefixes;

    bool complete() const { return missing_words.empty() && bad_prefixes.empty(); }
};

// Checks both completeness conditions for all words / prefixes of length
// <= depth. A pass is evidence at that depth, not a proof.
CompletenessReport check_complete(const DispatchFSA& fsa,
                                  const std::vector<DispatchingSequence>& candidates, int depth);

// Best-effort enumeration of lassos (and maximal finite words) realizable as
// runs of the FSA, stem and cycle bounded by max_len. The result should be
// fed back through check_complete; it may be incomplete.
std::vector<DispatchingSequence> suggest_complete_set(const DispatchFSA& fsa, int max_len,
                                                      std::size_t budget = 100000);

}  // namespace lsat
