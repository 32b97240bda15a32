#include "lsat/builders.hpp"

#include <algorithm>
#include <deque>

namespace lsat {

// --- instance universe -------------------------------------------------------

InstanceUniverse::InstanceUniverse(std::shared_ptr<const Specification> spec,
                                   const DispatchingSequence& seq, int window)
    : spec_(std::move(spec)), window_(window) {
    UsedSets u = used_sets(*spec_, seq);
    bounds_ = std::move(u.instance_bound);
    used_activities_ = std::move(u.activities);
    used_resources_ = std::move(u.resources);
    used_peripherals_ = std::move(u.peripherals);
}

bool InstanceUniverse::contains(const ActivityInstance& inst) const {
    if (inst.index < 1) return false;
    auto it = bounds_.find(inst.activity);
    if (it == bounds_.end()) return false;
    return !it->second.has_value() || inst.index <= *it->second;
}

std::vector<int> InstanceUniverse::enumerate_indices(const ActivityId& act) const {
    auto it = bounds_.find(act);
    if (it == bounds_.end()) return {};
    const int n = it->second.has_value() ? *it->second : window_;
    std::vector<int> out;
    for (int j = 1; j <= n; ++j) out.push_back(j);
    return out;
}

bool InstanceUniverse::finite() const {
    return std::all_of(bounds_.begin(), bounds_.end(),
                       [](const auto& kv) { return kv.second.has_value(); });
}

// --- availability automaton ---------------------------------------------------

namespace {

constexpr const char* kReleased = "released";
constexpr const char* kClaimed = "claimed";

class AvailabilityAutomaton final : public Automaton {
public:
    AvailabilityAutomaton(ResourceId r, std::shared_ptr<const InstanceUniverse> universe)
        : resource_(std::move(r)), universe_(std::move(universe)) {
        for (const auto& act : universe_->activities())
            if (universe_->spec().activities.at(act).resources().count(resource_))
                users_.insert(act);
    }

    bool alphabet_contains(const EventLabel& e) const override {
        const ResourceId* r = nullptr;
        if (auto* c = std::get_if<ClaimEvent>(&e.payload)) r = &c->resource;
        if (auto* rl = std::get_if<ReleaseEvent>(&e.payload)) r = &rl->resource;
        if (!r || *r != resource_) return false;
        return users_.count(e.instance.activity) > 0 && universe_->contains(e.instance);
    }

    std::vector<State> initial_states() const override { return {State::keyed(kReleased)}; }

    std::vector<Transition> successors(const State& s) const override {
        const bool released = s.key() == kReleased;
        std::vector<Transition> out;
        for (const auto& act : users_)
            for (int j : universe_->enumerate_indices(act)) {
                ActivityInstance inst{act, j};
                if (released)
                    out.push_back({EventLabel{inst, ClaimEvent{resource_}}, State::keyed(kClaimed)});
                else
                    out.push_back({EventLabel{inst, ReleaseEvent{resource_}}, State::keyed(kReleased)});
            }
        detail::sort_transitions(out);
        return out;
    }

    std::vector<State> targets(const State& s, const EventLabel& e) const override {
        if (!alphabet_contains(e)) return {};
        const bool is_claim = std::holds_alternative<ClaimEvent>(e.payload);
        if (s.key() == kReleased && is_claim) return {State::keyed(kClaimed)};
        if (s.key() == kClaimed && !is_claim) return {State::keyed(kReleased)};
        return {};
    }

private:
    ResourceId resource_;
    std::shared_ptr<const InstanceUniverse> universe_;
    std::set<ActivityId> users_;
};

}  // namespace

// Builders copy the universe; the produced automata stay valid independently
// of the caller's copy.
AutomatonPtr build_availability(const ResourceId& r, const InstanceUniverse& universe) {
    return std::make_shared<AvailabilityAutomaton>(r,
                                                   std::make_shared<const InstanceUniverse>(universe));
}

// --- claiming automaton --------------------------------------------------------

namespace {

class ClaimingAutomaton final : public Automaton {
public:
    ClaimingAutomaton(ResourceId r, const DispatchingSequence& seq,
                      std::shared_ptr<const InstanceUniverse> universe)
        : resource_(std::move(r)),
          universe_(std::move(universe)),
          reduced_(reduce_for_resource(seq.transient, resource_, universe_->spec()),
                   reduce_for_resource(seq.periodic, resource_, universe_->spec())) {
        for (const auto& act : universe_->activities())
            if (universe_->spec().activities.at(act).resources().count(resource_))
                users_.insert(act);
    }

    bool alphabet_contains(const EventLabel& e) const override {
        auto* c = std::get_if<ClaimEvent>(&e.payload);
        if (!c || c->resource != resource_) return false;
        return users_.count(e.instance.activity) > 0 && universe_->contains(e.instance);
    }

    std::vector<State> initial_states() const override { return {make_state(0)}; }

    std::vector<Transition> successors(const State& s) const override {
        const std::size_t k = s.as<std::size_t>();
        auto act = reduced_.item(k);
        if (!act) return {};
        const int j = static_cast<int>(1 + reduced_.count_prefix(k, *act));
        return {{EventLabel{ActivityInstance{*act, j}, ClaimEvent{resource_}}, make_state(k + 1)}};
    }

private:
    static State make_state(std::size_t k) { return State::make(std::to_string(k), k); }

    ResourceId resource_;
    std::shared_ptr<const InstanceUniverse> universe_;
    PeriodicView reduced_;
    std::set<ActivityId> users_;
};

}  // namespace

AutomatonPtr build_claiming(const ResourceId& r, const DispatchingSequence& seq,
                            const InstanceUniverse& universe) {
    auto copy = std::make_shared<const InstanceUniverse>(universe);
    return std::make_shared<ClaimingAutomaton>(r, seq, std::move(copy));
}

// --- activity automaton ---------------------------------------------------------

namespace {

std::string postset_key(const std::set<NodeId>& remaining) {
    std::string key = "{";
    bool first = true;
    for (const auto& n : remaining) {
        if (!first) key += ",";
        key += n;
        first = false;
    }
    key += "}";
    return key;
}

EventLabel node_event(const ActivityInstance& inst, const NodeKind& kind) {
    if (auto* c = std::get_if<ClaimNode>(&kind)) return {inst, ClaimEvent{c->resource}};
    if (auto* r = std::get_if<ReleaseNode>(&kind)) return {inst, ReleaseEvent{r->resource}};
    const auto& a = std::get<ActionNode>(kind);
    return {inst, DoEvent{a.action, a.peripheral}};
}

class ActivityAutomaton final : public Automaton {
public:
    ActivityAutomaton(ActivityInstance inst, Activity act)
        : inst_(std::move(inst)), act_(std::move(act)) {
        for (const auto& [n, kind] : act_.nodes) payloads_.insert(node_event(inst_, kind).payload);
    }

    bool alphabet_contains(const EventLabel& e) const override {
        return e.instance == inst_ && payloads_.count(e.payload) > 0;
    }

    std::vector<State> initial_states() const override {
        std::set<NodeId> all;
        for (const auto& [n, _] : act_.nodes) all.insert(n);
        return {make_state(std::move(all))};
    }

    std::vector<Transition> successors(const State& s) const override {
        const auto& remaining = s.as<std::set<NodeId>>();
        std::vector<Transition> out;
        for (const auto& n : remaining) {
            bool ready = true;
            for (const auto& pred : act_.predecessors(n))
                if (remaining.count(pred)) {
                    ready = false;
                    break;
                }
            if (!ready) continue;
            std::set<NodeId> next = remaining;
            next.erase(n);
            out.push_back({node_event(inst_, act_.nodes.at(n)), make_state(std::move(next))});
        }
        detail::sort_transitions(out);
        return out;
    }

private:
    static State make_state(std::set<NodeId> remaining) {
        std::string key = postset_key(remaining);
        return State::make(std::move(key), std::move(remaining));
    }

    ActivityInstance inst_;
    Activity act_;
    std::set<decltype(EventLabel::payload)> payloads_;
};

}  // namespace

std::vector<std::set<NodeId>> enumerate_postsets(const Activity& act, std::size_t cap) {
    // breadth-first over the postset lattice, from N downwards
    std::set<std::set<NodeId>> seen;
    std::deque<std::set<NodeId>> work;
    std::set<NodeId> all;
    for (const auto& [n, _] : act.nodes) all.insert(n);
    seen.insert(all);
    work.push_back(std::move(all));

    ActivityAutomaton aut(ActivityInstance{act.id, 1}, act);
    while (!work.empty()) {
        std::set<NodeId> cur = std::move(work.front());
        work.pop_front();
        State s = State::make(postset_key(cur), cur);
        for (const auto& t : aut.successors(s)) {
            const auto& next = t.target.as<std::set<NodeId>>();
            if (seen.insert(next).second) {
                if (seen.size() > cap)
                    throw Error(Code::E_TOO_LARGE, "postset count of activity '" + act.id +
                                                       "' exceeds " + std::to_string(cap));
                work.push_back(next);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

AutomatonPtr build_activity_automaton(const ActivityInstance& inst, const Activity& act) {
    return std::make_shared<ActivityAutomaton>(inst, act);
}

// --- peripheral automaton --------------------------------------------------------

namespace {

class PeripheralAutomaton final : public Automaton {
public:
    PeripheralAutomaton(Peripheral p, std::shared_ptr<const InstanceUniverse> universe,
                        std::optional<std::string> pinned)
        : peripheral_(std::move(p)), universe_(std::move(universe)), pinned_(std::move(pinned)) {
        // events restricted to actions that used activities actually perform
        for (const auto& act_id : universe_->activities()) {
            const Activity& act = universe_->spec().activities.at(act_id);
            for (const auto& [n, kind] : act.nodes) {
                auto* a = std::get_if<ActionNode>(&kind);
                if (a && a->peripheral == peripheral_.id && peripheral_.has_action(a->action))
                    used_by_[a->action].insert(act_id);
            }
        }
        if (peripheral_.is_movable()) {
            const auto& m = std::get<MovablePeripheral>(peripheral_.kind);
            for (const auto& [id, move] : m.moves)
                if (used_by_.count(id)) {
                    states_.insert(move.source);
                    states_.insert(move.target);
                }
        } else {
            for (const auto& [a, _] : used_by_) states_.insert(a);
        }
        if (pinned_ && !states_.count(*pinned_))
            throw Error(Code::E_UNKNOWN_REF, "peripheral '" + peripheral_.id +
                                                 "' has no state '" + *pinned_ + "'");
    }

    bool alphabet_contains(const EventLabel& e) const override {
        auto* d = std::get_if<DoEvent>(&e.payload);
        if (!d || d->peripheral != peripheral_.id) return false;
        auto it = used_by_.find(d->action);
        if (it == used_by_.end() || !it->second.count(e.instance.activity)) return false;
        return universe_->contains(e.instance);
    }

    std::vector<State> initial_states() const override {
        if (pinned_) return {State::keyed(*pinned_)};
        std::vector<State> out;
        for (const auto& s : states_) out.push_back(State::keyed(s));
        return out;
    }

    std::vector<Transition> successors(const State& s) const override {
        std::vector<Transition> out;
        for (const auto& [action, users] : used_by_) {
            auto dest = destination(s.key(), action);
            if (!dest) continue;
            for (const auto& act : users)
                for (int j : universe_->enumerate_indices(act))
                    out.push_back({EventLabel{ActivityInstance{act, j},
                                              DoEvent{action, peripheral_.id}},
                                   State::keyed(*dest)});
        }
        detail::sort_transitions(out);
        return out;
    }

    std::vector<State> targets(const State& s, const EventLabel& e) const override {
        if (!alphabet_contains(e)) return {};
        auto dest = destination(s.key(), std::get<DoEvent>(e.payload).action);
        if (!dest) return {};
        return {State::keyed(*dest)};
    }

private:
    // where action `a` leads from state `from`; nullopt when disabled
    std::optional<std::string> destination(const std::string& from, const ActionId& a) const {
        if (!peripheral_.is_movable()) return a;  // last executed action, any source
        const auto& m = std::get<MovablePeripheral>(peripheral_.kind);
        const Movement& move = m.moves.at(a);
        if (move.source != from) return std::nullopt;
        return move.target;
    }

    Peripheral peripheral_;
    std::shared_ptr<const InstanceUniverse> universe_;
    std::optional<std::string> pinned_;
    std::map<ActionId, std::set<ActivityId>> used_by_;
    std::set<std::string> states_;
};

}  // namespace

AutomatonPtr build_peripheral(const Peripheral& p, const InstanceUniverse& universe,
                              const std::optional<std::string>& pinned) {
    auto copy = std::make_shared<const InstanceUniverse>(universe);
    return std::make_shared<PeripheralAutomaton>(p, std::move(copy), pinned);
}

}  // namespace lsat
