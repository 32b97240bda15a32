#pragma once

#include <memory>
#include <optional>
#include <set>

#include "lsat/automata.hpp"
#include "lsat/model.hpp"
#include "lsat/sequence.hpp"

namespace lsat {

// The activity instances relevant to a dispatching sequence: per activity a
// finite occurrence count (transient-only) or unbounded (periodic). The
// contains() predicate is exact; enumerate_indices() yields at most
// `window` indices for unbounded activities and is only used where a finite
// event enumeration is required (stand-alone exploration of availability and
// peripheral automata).
class InstanceUniverse {
public:
    InstanceUniverse(std::shared_ptr<const Specification> spec, const DispatchingSequence& seq,
                     int window = 3);

    bool contains(const ActivityInstance& inst) const;
    std::vector<int> enumerate_indices(const ActivityId& act) const;
    const std::map<ActivityId, std::optional<int>>& bounds() const { return bounds_; }
    // true iff every used activity has a finite instance bound
    bool finite() const;
    const Specification& spec() const { return *spec_; }
    std::shared_ptr<const Specification> spec_ptr() const { return spec_; }
    const std::set<ActivityId>& activities() const { return used_activities_; }
    const std::set<ResourceId>& resources() const { return used_resources_; }
    const std::set<PeripheralId>& peripherals() const { return used_peripherals_; }

private:
    std::shared_ptr<const Specification> spec_;
    std::map<ActivityId, std::optional<int>> bounds_;
    std::set<ActivityId> used_activities_;
    std::set<ResourceId> used_resources_;
    std::set<PeripheralId> used_peripherals_;
    int window_;
};

// Two states, released/claimed; claim and release events of r alternate,
// starting released.
AutomatonPtr build_availability(const ResourceId& r, const InstanceUniverse& universe);

// Single path claiming r in dispatching order: state k has one outgoing
// claim, labeled with the (k+1)-th element of the r-reduced sequence. States
// are counters, in bijection with the prefixes of that sequence.
AutomatonPtr build_claiming(const ResourceId& r, const DispatchingSequence& seq,
                            const InstanceUniverse& universe);

// All postsets of the activity DAG: subsets whose removed complement is
// closed under predecessors. Always contains N and the empty set.
// Throws Error{E_TOO_LARGE} beyond `cap` postsets.
std::vector<std::set<NodeId>> enumerate_postsets(const Activity& act, std::size_t cap = 1000000);

// Progress automaton of one activity instance: states are postsets, each
// transition removes one ready node and emits its claim/release/action event.
AutomatonPtr build_activity_automaton(const ActivityInstance& inst, const Activity& act);

// Peripheral state automaton: unmovable peripherals land in the state of the
// last executed action (complete fan-in), movable ones walk the movement
// graph. Every state is initial; `pinned` restricts the initial set to one
// state (Error{E_UNKNOWN_REF} if it is not a state).
AutomatonPtr build_peripheral(const Peripheral& p, const InstanceUniverse& universe,
                              const std::optional<std::string>& pinned = std::nullopt);

}  // namespace lsat
