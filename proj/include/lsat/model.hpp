#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lsat/diagnostics.hpp"

namespace lsat {

using ResourceId = std::string;
using PeripheralId = std::string;
using ActionId = std::string;
using ActivityId = std::string;
using NodeId = std::string;
using PositionId = std::string;

// --- timing -----------------------------------------------------------------

struct DeterministicTime {
    double t = 0.0;
    bool operator==(const DeterministicTime&) const = default;
};
struct NormalTime {
    double mu = 0.0;
    double sigma = 1.0;
    bool operator==(const NormalTime&) const = default;
};
struct TriangularTime {
    double a = 0.0, m = 0.0, b = 0.0;
    bool operator==(const TriangularTime&) const = default;
};
struct PertTime {
    double a = 0.0, m = 0.0, b = 0.0;
    bool operator==(const PertTime&) const = default;
};

using TimingSpec = std::variant<DeterministicTime, NormalTime, TriangularTime, PertTime>;

// --- peripherals ------------------------------------------------------------

struct SecondOrderProfile {
    double vmax = 1.0;
    double amax = 1.0;
    bool operator==(const SecondOrderProfile&) const = default;
};
struct ThirdOrderProfile {
    double vmax = 1.0;
    double amax = 1.0;
    double jmax = 1.0;
    bool operator==(const ThirdOrderProfile&) const = default;
};
using SpeedProfile = std::variant<SecondOrderProfile, ThirdOrderProfile>;

// A directed movement between two positions of a movable peripheral.
// Positions carry no coordinates, so the travel distance is part of the
// movement itself (default 1.0 in the DSL).
struct Movement {
    ActionId id;
    PositionId source;
    PositionId target;
    SpeedProfile profile = SecondOrderProfile{};
    double settling = 0.0;
    double distance = 1.0;
    bool operator==(const Movement&) const = default;
};

struct UnmovablePeripheral {
    std::map<ActionId, TimingSpec> actions;
    bool operator==(const UnmovablePeripheral&) const = default;
};
struct MovablePeripheral {
    std::set<PositionId> positions;
    std::map<ActionId, Movement> moves;
    bool operator==(const MovablePeripheral&) const = default;
};

struct Peripheral {
    PeripheralId id;
    std::variant<UnmovablePeripheral, MovablePeripheral> kind;

    bool is_movable() const { return std::holds_alternative<MovablePeripheral>(kind); }
    // Action ids performed by this peripheral (timed actions or movements).
    std::set<ActionId> action_ids() const;
    bool has_action(const ActionId& a) const;
    bool operator==(const Peripheral&) const = default;
};

// --- activities -------------------------------------------------------------

struct ClaimNode {
    ResourceId resource;
    bool operator==(const ClaimNode&) const = default;
};
struct ReleaseNode {
    ResourceId resource;
    bool operator==(const ReleaseNode&) const = default;
};
struct ActionNode {
    ActionId action;
    PeripheralId peripheral;
    bool operator==(const ActionNode&) const = default;
};
using NodeKind = std::variant<ClaimNode, ReleaseNode, ActionNode>;

// One operational recipe: a DAG of claim / action / release nodes.
struct Activity {
    ActivityId id;
    std::map<NodeId, NodeKind> nodes;
    std::set<std::pair<NodeId, NodeId>> edges;

    std::vector<NodeId> predecessors(const NodeId& n) const;
    std::vector<NodeId> successors(const NodeId& n) const;
    // Resources this activity uses, i.e. resources named by its claim nodes.
    std::set<ResourceId> resources() const;
    bool operator==(const Activity&) const = default;
};

// --- dispatch ---------------------------------------------------------------

struct ActivitySequence {
    std::vector<ActivityId> items;

    size_t size() const { return items.size(); }
    bool empty() const { return items.empty(); }
    bool operator==(const ActivitySequence&) const = default;
    auto operator<=>(const ActivitySequence&) const = default;
};

// seq = transient ; (periodic)^inf. Either part may be empty.
struct DispatchingSequence {
    ActivitySequence transient;
    ActivitySequence periodic;
    bool operator==(const DispatchingSequence&) const = default;
};

// Finite automaton over activity names; its language is the set of allowed
// dispatching orders. Every state accepts.
struct DispatchFSA {
    std::set<std::string> states;
    std::set<std::tuple<std::string, ActivityId, std::string>> transitions;
    std::set<std::string> initial;
    bool operator==(const DispatchFSA&) const = default;
};

using DispatchDescription = std::variant<DispatchingSequence, DispatchFSA>;

// --- the specification ------------------------------------------------------

struct Specification {
    std::map<PeripheralId, Peripheral> peripherals;
    std::set<ResourceId> resources;
    std::map<PeripheralId, ResourceId> owner;  // R(p)
    std::map<ActivityId, Activity> activities;
    DispatchDescription dispatch = DispatchingSequence{};

    const Peripheral* find_peripheral(const PeripheralId& p) const;
    const Activity* find_activity(const ActivityId& a) const;
    bool operator==(const Specification&) const = default;
};

// --- instances and events ---------------------------------------------------

// The j-th dispatched occurrence of an activity, j >= 1.
struct ActivityInstance {
    ActivityId activity;
    int index = 1;

    std::string text() const;  // "Act#3"
    bool operator==(const ActivityInstance&) const = default;
    auto operator<=>(const ActivityInstance&) const = default;
};

struct ClaimEvent {
    ResourceId resource;
    bool operator==(const ClaimEvent&) const = default;
    auto operator<=>(const ClaimEvent&) const = default;
};
struct ReleaseEvent {
    ResourceId resource;
    bool operator==(const ReleaseEvent&) const = default;
    auto operator<=>(const ReleaseEvent&) const = default;
};
struct DoEvent {
    ActionId action;
    PeripheralId peripheral;
    bool operator==(const DoEvent&) const = default;
    auto operator<=>(const DoEvent&) const = default;
};

// The shared alphabet of every component automaton: an activity instance
// claiming / releasing a resource or performing an action on a peripheral.
struct EventLabel {
    ActivityInstance instance;
    std::variant<ClaimEvent, ReleaseEvent, DoEvent> payload;

    // Wire encoding, used in traces, DOT labels and CLI output:
    //   Name#k.claim(R) | Name#k.release(R) | Name#k.do(P.a)
    std::string text() const;
    bool operator==(const EventLabel&) const = default;
    auto operator<=>(const EventLabel&) const = default;
};

// Parses the wire encoding above. Returns nullopt on malformed input.
std::optional<EventLabel> parse_event_text(const std::string& text);

// --- operations -------------------------------------------------------------

// Checks every structural rule on the model and returns all violations,
// sorted by entity then code. Empty result == valid specification.
std::vector<Diagnostic> validate_spec(const Specification& spec);

struct UsedSets {
    std::set<ActivityId> activities;
    std::set<ResourceId> resources;
    std::set<PeripheralId> peripherals;
    // nullopt = unbounded (activity occurs in the periodic part).
    std::map<ActivityId, std::optional<int>> instance_bound;
};

// The slice of the specification relevant to a dispatching sequence.
// Throws Error{E_UNKNOWN_REF} if the sequence names an undefined activity.
UsedSets used_sets(const Specification& spec, const DispatchingSequence& seq);

// Travel time of a second-order (trapezoidal) movement, settling included.
// Throws Error{E_UNSUPPORTED_PROFILE} for third-order profiles.
double movement_duration(const Movement& m);

// Mean of a timing spec: Deterministic t, Normal mu, Triangular (a+m+b)/3,
// PERT (a+4m+b)/6.
double timing_mean(const TimingSpec& t);

}  // namespace lsat
