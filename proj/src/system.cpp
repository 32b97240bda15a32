#include "lsat/system.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace lsat {

// --- state keys ---------------------------------------------------------------

namespace {

template <typename Map, typename Render>
void render_map(std::ostringstream& os, const char* tag, const Map& m, Render render) {
    os << tag << "{";
    bool first = true;
    for (const auto& [k, v] : m) {
        if (!first) os << ",";
        first = false;
        render(os, k, v);
    }
    os << "}";
}

std::string postset_text(const std::set<NodeId>& ns) {
    std::string out = "{";
    bool first = true;
    for (const auto& n : ns) {
        if (!first) out += ",";
        out += n;
        first = false;
    }
    return out + "}";
}

}  // namespace

std::string SystemState::key() const {
    std::ostringstream os;
    render_map(os, "A", claimed,
               [](auto& o, const auto& r, bool c) { o << r << "=" << (c ? "c" : "r"); });
    os << "|";
    render_map(os, "C", claim_count, [](auto& o, const auto& r, std::size_t k) { o << r << "=" << k; });
    os << "|";
    render_map(os, "B", in_flight, [](auto& o, const auto& inst, const std::set<NodeId>& ns) {
        o << inst.text() << "=" << postset_text(ns);
    });
    os << "|";
    render_map(os, "F", completed, [](auto& o, const auto& a, int n) { o << a << "=" << n; });
    os << "|";
    render_map(os, "P", peripheral,
               [](auto& o, const auto& p, const std::string& s) { o << p << "=" << s; });
    return os.str();
}

std::string UnionSystemState::key() const {
    std::ostringstream os;
    os << "D=" << fsa_state << "|";
    render_map(os, "N", dispatched, [](auto& o, const auto& a, int n) { o << a << "=" << n; });
    os << "|";
    render_map(os, "Q", queues, [](auto& o, const auto& r, const std::deque<ActivityInstance>& q) {
        o << r << "=[";
        for (std::size_t i = 0; i < q.size(); ++i) o << (i ? ";" : "") << q[i].text();
        o << "]";
    });
    os << "|";
    render_map(os, "A", claimed,
               [](auto& o, const auto& r, bool c) { o << r << "=" << (c ? "c" : "r"); });
    os << "|";
    render_map(os, "B", in_flight, [](auto& o, const auto& inst, const std::set<NodeId>& ns) {
        o << inst.text() << "=" << postset_text(ns);
    });
    os << "|";
    render_map(os, "F", completed, [](auto& o, const auto& a, int n) { o << a << "=" << n; });
    os << "|";
    render_map(os, "P", peripheral,
               [](auto& o, const auto& p, const std::string& s) { o << p << "=" << s; });
    return os.str();
}

// --- shared plant data ----------------------------------------------------------

namespace {

// Immutable lookup tables shared by both lazy products.
struct Plant {
    std::shared_ptr<const Specification> spec;
    std::set<ActivityId> activities;
    std::set<ResourceId> resources;
    std::set<PeripheralId> peripherals;
    std::map<ActivityId, std::set<ResourceId>> act_resources;
    std::map<ActivityId, std::map<ResourceId, NodeId>> claim_node;
    std::map<ActivityId, std::set<NodeId>> all_nodes;
    std::map<ActivityId, std::map<NodeId, std::vector<NodeId>>> preds;
    // per used peripheral, the states any instance may start in
    std::map<PeripheralId, std::vector<std::string>> initial_peripheral;

    static Plant build(std::shared_ptr<const Specification> spec,
                       const std::set<ActivityId>& acts,
                       const std::map<PeripheralId, std::string>& pinned) {
        Plant plant;
        plant.spec = std::move(spec);
        plant.activities = acts;
        std::map<PeripheralId, std::set<std::string>> periph_states;
        for (const auto& a : acts) {
            const Activity& act = plant.spec->activities.at(a);
            plant.act_resources[a] = act.resources();
            for (const auto& r : plant.act_resources[a]) plant.resources.insert(r);
            for (const auto& [n, kind] : act.nodes) {
                plant.all_nodes[a].insert(n);
                plant.preds[a][n] = act.predecessors(n);
                if (auto* c = std::get_if<ClaimNode>(&kind)) plant.claim_node[a][c->resource] = n;
                if (auto* an = std::get_if<ActionNode>(&kind)) {
                    plant.peripherals.insert(an->peripheral);
                    const Peripheral& p = plant.spec->peripherals.at(an->peripheral);
                    if (p.is_movable()) {
                        const auto& mv = std::get<MovablePeripheral>(p.kind).moves.at(an->action);
                        periph_states[an->peripheral].insert(mv.source);
                        periph_states[an->peripheral].insert(mv.target);
                    } else {
                        periph_states[an->peripheral].insert(an->action);
                    }
                }
            }
            plant.all_nodes.try_emplace(a);
        }
        for (const auto& [p, states] : periph_states)
            plant.initial_peripheral[p] = {states.begin(), states.end()};
        for (const auto& [p, s] : pinned) {
            auto it = plant.initial_peripheral.find(p);
            if (it == plant.initial_peripheral.end())
                throw Error(Code::E_UNKNOWN_REF,
                            "pinned peripheral '" + p + "' is not used by this dispatch");
            if (!periph_states.at(p).count(s))
                throw Error(Code::E_UNKNOWN_REF,
                            "peripheral '" + p + "' has no reachable state '" + s + "'");
            it->second = {s};
        }
        return plant;
    }

    // where action `a` leads on peripheral `p` from `from`; nullopt = disabled
    std::optional<std::string> peripheral_dest(const PeripheralId& p, const ActionId& a,
                                               const std::string& from) const {
        const Peripheral& per = spec->peripherals.at(p);
        if (!per.is_movable()) return a;
        const Movement& mv = std::get<MovablePeripheral>(per.kind).moves.at(a);
        if (mv.source != from) return std::nullopt;
        return mv.target;
    }
};

// Current postset of an instance: untouched instances hold every node,
// finished ones none.
template <typename S>
std::set<NodeId> postset_of(const Plant& plant, const S& st, const ActivityInstance& inst) {
    if (inst.index <= st.completed.at(inst.activity)) return {};
    auto it = st.in_flight.find(inst);
    if (it != st.in_flight.end()) return it->second;
    return plant.all_nodes.at(inst.activity);
}

bool node_ready(const Plant& plant, const std::set<NodeId>& postset, const ActivityId& act,
                const NodeId& n) {
    if (!postset.count(n)) return false;
    for (const auto& pred : plant.preds.at(act).at(n))
        if (postset.count(pred)) return false;
    return true;
}

// Removes one executed node. Completion is FIFO per activity (guaranteed by
// the availability/claiming constraints on reachable states), which keeps the
// completed counter a faithful summary.
template <typename S>
void remove_node(const Plant& plant, S& st, const ActivityInstance& inst, const NodeId& n) {
    std::set<NodeId> postset = postset_of(plant, st, inst);
    postset.erase(n);
    if (postset.empty()) {
        st.in_flight.erase(inst);
        int& done = st.completed.at(inst.activity);
        if (inst.index != done + 1)
            throw Error(Code::E_INVALID_SPEC, "internal error: non-FIFO instance completion for '" +
                                                  inst.text() + "'");
        done++;
    } else {
        st.in_flight[inst] = std::move(postset);
    }
}

// release / action moves of every in-flight instance; claim moves are owned
// by the per-resource dispatch head and handled by the callers
template <typename S, typename Emit>
void flight_moves(const Plant& plant, const S& st, Emit emit) {
    for (const auto& [inst, postset] : st.in_flight) {
        const Activity& act = plant.spec->activities.at(inst.activity);
        for (const auto& n : postset) {
            if (!node_ready(plant, postset, inst.activity, n)) continue;
            const NodeKind& kind = act.nodes.at(n);
            if (std::holds_alternative<ClaimNode>(kind)) continue;
            if (auto* rel = std::get_if<ReleaseNode>(&kind)) {
                if (!st.claimed.at(rel->resource)) continue;
                S next = st;
                next.claimed.at(rel->resource) = false;
                remove_node(plant, next, inst, n);
                emit(EventLabel{inst, ReleaseEvent{rel->resource}}, std::move(next));
            } else {
                const auto& an = std::get<ActionNode>(kind);
                auto dest = plant.peripheral_dest(an.peripheral, an.action,
                                                  st.peripheral.at(an.peripheral));
                if (!dest) continue;
                S next = st;
                next.peripheral.at(an.peripheral) = *dest;
                remove_node(plant, next, inst, n);
                emit(EventLabel{inst, DoEvent{an.action, an.peripheral}}, std::move(next));
            }
        }
    }
}

// claim of `inst` on `r` if the availability and the instance's own progress
// allow it; returns the state after the claim
template <typename S>
std::optional<S> try_claim(const Plant& plant, const S& st, const ActivityInstance& inst,
                           const ResourceId& r) {
    if (st.claimed.at(r)) return std::nullopt;
    auto cn = plant.claim_node.at(inst.activity).find(r);
    if (cn == plant.claim_node.at(inst.activity).end()) return std::nullopt;
    std::set<NodeId> postset = postset_of(plant, st, inst);
    if (!node_ready(plant, postset, inst.activity, cn->second)) return std::nullopt;
    S next = st;
    next.claimed.at(r) = true;
    remove_node(plant, next, inst, cn->second);
    return next;
}

template <typename S>
void init_core(const Plant& plant, S& st) {
    for (const auto& r : plant.resources) st.claimed[r] = false;
    for (const auto& a : plant.activities) st.completed[a] = 0;
}

// one state per combination of initial peripheral states
template <typename S>
std::vector<S> peripheral_combinations(const Plant& plant, const S& base) {
    std::vector<S> out{base};
    for (const auto& [p, states] : plant.initial_peripheral) {
        std::vector<S> next;
        for (const auto& st : out)
            for (const auto& v : states) {
                S copy = st;
                copy.peripheral[p] = v;
                next.push_back(std::move(copy));
            }
        out = std::move(next);
    }
    return out;
}

// --- lazy M^seq product ---------------------------------------------------------

class MseqAutomaton final : public Automaton {
public:
    MseqAutomaton(std::shared_ptr<const Specification> spec, const DispatchingSequence& seq,
                  const MseqOptions& options)
        : universe_(spec, seq, options.window),
          plant_(Plant::build(spec, universe_.activities(), options.pinned_initials)) {
        for (const auto& r : plant_.resources)
            reduced_.emplace(r, PeriodicView(reduce_for_resource(seq.transient, r, *spec),
                                             reduce_for_resource(seq.periodic, r, *spec)));
    }

    bool alphabet_contains(const EventLabel& e) const override {
        if (!universe_.contains(e.instance)) return false;
        const ActivityId& act = e.instance.activity;
        if (auto* c = std::get_if<ClaimEvent>(&e.payload))
            return plant_.act_resources.at(act).count(c->resource) > 0;
        if (auto* rl = std::get_if<ReleaseEvent>(&e.payload))
            return plant_.act_resources.at(act).count(rl->resource) > 0;
        const auto& d = std::get<DoEvent>(e.payload);
        const Activity& a = plant_.spec->activities.at(act);
        for (const auto& [n, kind] : a.nodes)
            if (auto* an = std::get_if<ActionNode>(&kind))
                if (an->action == d.action && an->peripheral == d.peripheral) return true;
        return false;
    }

    std::vector<State> initial_states() const override {
        SystemState base;
        init_core(plant_, base);
        for (const auto& r : plant_.resources) base.claim_count[r] = 0;
        std::vector<State> out;
        for (auto& st : peripheral_combinations(plant_, base)) {
            std::string key = st.key();
            out.push_back(State::make(std::move(key), std::move(st)));
        }
        detail::sort_states(out);
        return out;
    }

    std::vector<Transition> successors(const State& s) const override {
        const auto& st = s.as<SystemState>();
        std::vector<Transition> out;
        auto emit = [&](EventLabel e, SystemState next) {
            std::string key = next.key();
            out.push_back({std::move(e), State::make(std::move(key), std::move(next))});
        };
        for (const auto& [r, view] : reduced_) {
            const std::size_t k = st.claim_count.at(r);
            auto act = view.item(k);
            if (!act) continue;
            ActivityInstance inst{*act, static_cast<int>(1 + view.count_prefix(k, *act))};
            if (auto next = try_claim(plant_, st, inst, r)) {
                next->claim_count.at(r) = k + 1;
                emit(EventLabel{inst, ClaimEvent{r}}, std::move(*next));
            }
        }
        flight_moves(plant_, st, emit);
        detail::sort_transitions(out);
        return out;
    }

private:
    InstanceUniverse universe_;
    Plant plant_;
    std::map<ResourceId, PeriodicView> reduced_;
};

// --- union product over a dispatch FSA --------------------------------------------

class MSeqAutomaton final : public Automaton {
public:
    MSeqAutomaton(std::shared_ptr<const Specification> spec, DispatchFSA fsa,
                  const MSeqOptions& options)
        : fsa_(std::move(fsa)) {
        if (fsa_.initial.empty()) throw Error(Code::E_EMPTY_FSA, "dispatch FSA has no initial state");
        cap_ = options.dispatch_cap > 0
                   ? options.dispatch_cap
                   : std::max<int>(4, 2 * static_cast<int>(fsa_.states.size()));

        // labels reachable from the initial states define the used activities
        std::set<std::string> reachable = fsa_.initial;
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& [from, label, to] : fsa_.transitions)
                if (reachable.count(from) && reachable.insert(to).second) grew = true;
        }
        std::set<ActivityId> labels;
        for (const auto& [from, label, to] : fsa_.transitions)
            if (reachable.count(from)) labels.insert(label);
        for (const auto& l : labels)
            if (!spec->activities.count(l))
                throw Error(Code::E_INVALID_SPEC, "dispatch FSA uses unknown activity '" + l + "'");
        plant_ = Plant::build(std::move(spec), labels, options.pinned_initials);
        for (const auto& [from, label, to] : fsa_.transitions)
            if (reachable.count(from)) edges_[from].emplace_back(label, to);
        for (auto& [_, es] : edges_) std::sort(es.begin(), es.end());
    }

    bool alphabet_contains(const EventLabel& e) const override {
        if (e.instance.index < 1 || !plant_.activities.count(e.instance.activity)) return false;
        const ActivityId& act = e.instance.activity;
        if (auto* c = std::get_if<ClaimEvent>(&e.payload))
            return plant_.act_resources.at(act).count(c->resource) > 0;
        if (auto* rl = std::get_if<ReleaseEvent>(&e.payload))
            return plant_.act_resources.at(act).count(rl->resource) > 0;
        const auto& d = std::get<DoEvent>(e.payload);
        const Activity& a = plant_.spec->activities.at(act);
        for (const auto& [n, kind] : a.nodes)
            if (auto* an = std::get_if<ActionNode>(&kind))
                if (an->action == d.action && an->peripheral == d.peripheral) return true;
        return false;
    }

    std::vector<State> initial_states() const override {
        UnionSystemState base;
        init_core(plant_, base);
        for (const auto& a : plant_.activities) base.dispatched[a] = 0;
        for (const auto& r : plant_.resources) base.queues[r] = {};
        std::vector<State> out;
        for (const auto& s0 : fsa_.initial) {
            UnionSystemState st = base;
            st.fsa_state = s0;
            for (auto& combo : peripheral_combinations(plant_, st)) {
                std::string key = combo.key();
                out.push_back(State::make(std::move(key), std::move(combo)));
            }
        }
        detail::sort_states(out);
        return out;
    }

    std::vector<Transition> successors(const State& s) const override {
        // dispatch closure: up to cap_ consecutive internal steps
        std::map<std::string, UnionSystemState> closure;
        const auto& start = s.as<UnionSystemState>();
        closure.emplace(start.key(), start);
        std::vector<UnionSystemState> frontier{start};
        for (int step = 0; step < cap_ && !frontier.empty(); ++step) {
            std::vector<UnionSystemState> next;
            for (const auto& st : frontier)
                for (auto& d : dispatch_steps(st)) {
                    std::string key = d.key();
                    if (closure.emplace(key, d).second) next.push_back(std::move(d));
                }
            frontier = std::move(next);
        }

        std::vector<Transition> out;
        auto emit = [&](EventLabel e, UnionSystemState next) {
            std::string key = next.key();
            out.push_back({std::move(e), State::make(std::move(key), std::move(next))});
        };
        for (const auto& [_, st] : closure) {
            for (const auto& [r, q] : st.queues) {
                if (q.empty()) continue;
                const ActivityInstance& inst = q.front();
                if (auto next = try_claim(plant_, st, inst, r)) {
                    next->queues.at(r).pop_front();
                    emit(EventLabel{inst, ClaimEvent{r}}, std::move(*next));
                }
            }
            flight_moves(plant_, st, emit);
        }
        detail::sort_transitions(out);
        return out;
    }

private:
    std::vector<UnionSystemState> dispatch_steps(const UnionSystemState& st) const {
        std::vector<UnionSystemState> out;
        auto it = edges_.find(st.fsa_state);
        if (it == edges_.end()) return out;
        for (const auto& [label, to] : it->second) {
            UnionSystemState next = st;
            next.fsa_state = to;
            int& n = next.dispatched.at(label);
            n++;
            ActivityInstance inst{label, n};
            for (const auto& r : plant_.act_resources.at(label)) next.queues.at(r).push_back(inst);
            out.push_back(std::move(next));
        }
        return out;
    }

    DispatchFSA fsa_;
    Plant plant_;
    std::map<std::string, std::vector<std::pair<ActivityId, std::string>>> edges_;
    int cap_ = 4;
};

}  // namespace

// --- public builders ---------------------------------------------------------------

namespace {

// the unit of synchronous composition: one state, no events
class EpsilonAutomaton final : public Automaton {
public:
    bool alphabet_contains(const EventLabel&) const override { return false; }
    std::vector<State> initial_states() const override { return {State::keyed("()")}; }
    std::vector<Transition> successors(const State&) const override { return {}; }
};

std::shared_ptr<const Specification> validated_copy(const Specification& spec) {
    auto diags = validate_spec(spec);
    if (!diags.empty())
        throw Error(Code::E_INVALID_SPEC,
                    "specification invalid: " + format_diagnostic(diags.front()));
    return std::make_shared<const Specification>(spec);
}

}  // namespace

std::vector<AutomatonPtr> component_automata(const Specification& spec,
                                             const DispatchingSequence& seq,
                                             const MseqOptions& options) {
    auto owned = validated_copy(spec);
    InstanceUniverse universe(owned, seq, options.window);
    if (!universe.finite())
        throw Error(Code::E_BUDGET,
                    "explicit composition needs a finite instance set; "
                    "the periodic part dispatches unboundedly many instances");
    std::vector<AutomatonPtr> parts;
    for (const auto& r : universe.resources()) parts.push_back(build_availability(r, universe));
    for (const auto& r : universe.resources()) parts.push_back(build_claiming(r, seq, universe));
    for (const auto& [act, bound] : universe.bounds())
        for (int j = 1; j <= *bound; ++j)
            parts.push_back(
                build_activity_automaton(ActivityInstance{act, j}, owned->activities.at(act)));
    for (const auto& p : universe.peripherals()) {
        std::optional<std::string> pinned;
        auto it = options.pinned_initials.find(p);
        if (it != options.pinned_initials.end()) pinned = it->second;
        parts.push_back(build_peripheral(owned->peripherals.at(p), universe, pinned));
    }
    for (const auto& [p, _] : options.pinned_initials)
        if (!universe.peripherals().count(p))
            throw Error(Code::E_UNKNOWN_REF, "pinned peripheral '" + p + "' is not used");
    return parts;
}

AutomatonPtr build_mseq(const Specification& spec, const DispatchingSequence& seq,
                        const MseqOptions& options) {
    if (options.route == MseqOptions::Route::Explicit) {
        auto parts = component_automata(spec, seq, options);
        if (parts.empty()) return std::make_shared<EpsilonAutomaton>();
        return sync_compose(std::move(parts));
    }
    auto owned = validated_copy(spec);
    return std::make_shared<MseqAutomaton>(std::move(owned), seq, options);
}

AutomatonPtr build_mSeq(const Specification& spec, const DispatchFSA& fsa,
                        const MSeqOptions& options) {
    auto owned = validated_copy(spec);
    return std::make_shared<MSeqAutomaton>(std::move(owned), fsa, options);
}

// --- completeness -----------------------------------------------------------------

namespace {

std::set<std::string> fsa_step(const DispatchFSA& fsa, const std::set<std::string>& states,
                               const ActivityId& label) {
    std::set<std::string> out;
    for (const auto& [from, l, to] : fsa.transitions)
        if (l == label && states.count(from)) out.insert(to);
    return out;
}

// the candidate's prefix of length len, if one exists
std::optional<ActivitySequence> candidate_prefix(const DispatchingSequence& c, std::size_t len) {
    if (c.periodic.empty() && len > c.transient.size()) return std::nullopt;
    PeriodicView view(c.transient, c.periodic);
    ActivitySequence out;
    for (std::size_t i = 0; i < len; ++i) out.items.push_back(*view.item(i));
    return out;
}

}  // namespace

CompletenessReport check_complete(const DispatchFSA& fsa,
                                  const std::vector<DispatchingSequence>& candidates, int depth) {
    if (depth < 0) throw Error(Code::E_INDEX, "depth must be >= 0");
    CompletenessReport report;
    report.depth = depth;

    // condition 1: every word of L(D) is a prefix of some candidate
    std::function<void(const std::set<std::string>&, ActivitySequence&)> walk =
        [&](const std::set<std::string>& states, ActivitySequence& word) {
            const std::size_t len = word.size();
            bool matched = std::any_of(
                candidates.begin(), candidates.end(), [&](const DispatchingSequence& c) {
                    auto p = candidate_prefix(c, len);
                    return p && p->items == word.items;
                });
            if (!matched) {
                report.missing_words.push_back(word);
                return;  // extensions cannot match either; report the shortest
            }
            if (static_cast<int>(len) >= depth) return;
            std::set<ActivityId> labels;
            for (const auto& [from, l, to] : fsa.transitions)
                if (states.count(from)) labels.insert(l);
            for (const auto& l : labels) {
                auto next = fsa_step(fsa, states, l);
                if (next.empty()) continue;
                word.items.push_back(l);
                walk(next, word);
                word.items.pop_back();
            }
        };
    if (!fsa.initial.empty()) {
        ActivitySequence word;
        walk(fsa.initial, word);
    }

    // condition 2: every candidate prefix is a word of L(D)
    for (const auto& c : candidates) {
        std::set<std::string> states = fsa.initial;
        ActivitySequence prefix;
        if (states.empty()) {
            report.bad_prefixes.push_back({c, prefix});  // even eps is outside L(D)
            continue;
        }
        for (int len = 1; len <= depth; ++len) {
            auto p = candidate_prefix(c, static_cast<std::size_t>(len));
            if (!p) break;
            states = fsa_step(fsa, states, p->items.back());
            if (states.empty()) {
                report.bad_prefixes.push_back({c, *p});
                break;
            }
        }
    }
    return report;
}

std::vector<DispatchingSequence> suggest_complete_set(const DispatchFSA& fsa, int max_len,
                                                      std::size_t budget) {
    if (max_len < 1) throw Error(Code::E_INDEX, "max_len must be >= 1");
    std::size_t used = 0;
    auto charge = [&]() {
        if (++used > budget) throw Error(Code::E_BUDGET, "lasso enumeration exceeded the budget");
    };

    std::map<std::string, std::vector<std::pair<ActivityId, std::string>>> edges;
    for (const auto& [from, label, to] : fsa.transitions) edges[from].emplace_back(label, to);
    for (auto& [_, es] : edges) std::sort(es.begin(), es.end());

    // stems: runs from an initial state, deduplicated by (word, end state)
    std::set<std::pair<std::vector<ActivityId>, std::string>> stems;
    std::function<void(const std::string&, std::vector<ActivityId>&)> stem_walk =
        [&](const std::string& state, std::vector<ActivityId>& word) {
            charge();
            stems.insert({word, state});
            if (static_cast<int>(word.size()) >= max_len) return;
            auto it = edges.find(state);
            if (it == edges.end()) return;
            for (const auto& [label, to] : it->second) {
                word.push_back(label);
                stem_walk(to, word);
                word.pop_back();
            }
        };
    for (const auto& s0 : fsa.initial) {
        std::vector<ActivityId> word;
        stem_walk(s0, word);
    }

    // cycles per state, deduplicated by word
    std::map<std::string, std::set<std::vector<ActivityId>>> cycles;
    for (const auto& s : fsa.states) {
        std::function<void(const std::string&, std::vector<ActivityId>&)> cycle_walk =
            [&](const std::string& state, std::vector<ActivityId>& word) {
                charge();
                if (!word.empty() && state == s) cycles[s].insert(word);
                if (static_cast<int>(word.size()) >= max_len) return;
                auto it = edges.find(state);
                if (it == edges.end()) return;
                for (const auto& [label, to] : it->second) {
                    word.push_back(label);
                    cycle_walk(to, word);
                    word.pop_back();
                }
            };
        std::vector<ActivityId> word;
        cycle_walk(s, word);
    }

    std::set<std::pair<std::vector<ActivityId>, std::vector<ActivityId>>> found;
    for (const auto& [word, state] : stems) {
        auto it = edges.find(state);
        if (it == edges.end() || it->second.empty()) found.insert({word, {}});  // maximal word
        auto cy = cycles.find(state);
        if (cy != cycles.end())
            for (const auto& c : cy->second) found.insert({word, c});
    }

    std::vector<DispatchingSequence> out;
    for (const auto& [stem, cycle] : found) {
        DispatchingSequence seq;
        seq.transient.items = stem;
        seq.periodic.items = cycle;
        out.push_back(std::move(seq));
    }
    return out;
}

}  // namespace lsat
