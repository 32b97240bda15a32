#include "lsat/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>

namespace lsat {

std::set<ActionId> Peripheral::action_ids() const {
    std::set<ActionId> out;
    if (auto* u = std::get_if<UnmovablePeripheral>(&kind)) {
        for (const auto& [a, _] : u->actions) out.insert(a);
    } else {
        for (const auto& [a, _] : std::get<MovablePeripheral>(kind).moves) out.insert(a);
    }
    return out;
}

bool Peripheral::has_action(const ActionId& a) const {
    if (auto* u = std::get_if<UnmovablePeripheral>(&kind)) return u->actions.count(a) > 0;
    return std::get<MovablePeripheral>(kind).moves.count(a) > 0;
}

std::vector<NodeId> Activity::predecessors(const NodeId& n) const {
    std::vector<NodeId> out;
    for (const auto& [from, to] : edges)
        if (to == n) out.push_back(from);
    return out;
}

std::vector<NodeId> Activity::successors(const NodeId& n) const {
    std::vector<NodeId> out;
    for (const auto& [from, to] : edges)
        if (from == n) out.push_back(to);
    return out;
}

std::set<ResourceId> Activity::resources() const {
    std::set<ResourceId> out;
    for (const auto& [_, kind] : nodes)
        if (auto* c = std::get_if<ClaimNode>(&kind)) out.insert(c->resource);
    return out;
}

const Peripheral* Specification::find_peripheral(const PeripheralId& p) const {
    auto it = peripherals.find(p);
    return it == peripherals.end() ? nullptr : &it->second;
}

const Activity* Specification::find_activity(const ActivityId& a) const {
    auto it = activities.find(a);
    return it == activities.end() ? nullptr : &it->second;
}

std::string ActivityInstance::text() const {
    return activity + "#" + std::to_string(index);
}

std::string EventLabel::text() const {
    std::string head = instance.text();
    if (auto* c = std::get_if<ClaimEvent>(&payload)) return head + ".claim(" + c->resource + ")";
    if (auto* r = std::get_if<ReleaseEvent>(&payload)) return head + ".release(" + r->resource + ")";
    const auto& d = std::get<DoEvent>(payload);
    return head + ".do(" + d.peripheral + "." + d.action + ")";
}

std::optional<EventLabel> parse_event_text(const std::string& text) {
    auto hash = text.find('#');
    if (hash == std::string::npos || hash == 0) return std::nullopt;
    auto dot = text.find('.', hash);
    if (dot == std::string::npos) return std::nullopt;

    EventLabel ev;
    ev.instance.activity = text.substr(0, hash);
    const std::string num = text.substr(hash + 1, dot - hash - 1);
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    try {
        ev.instance.index = std::stoi(num);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (ev.instance.index < 1) return std::nullopt;

    if (text.size() < dot + 2 || text.back() != ')') return std::nullopt;
    const std::string rest = text.substr(dot + 1);
    auto paren = rest.find('(');
    if (paren == std::string::npos) return std::nullopt;
    const std::string verb = rest.substr(0, paren);
    const std::string arg = rest.substr(paren + 1, rest.size() - paren - 2);
    if (arg.empty()) return std::nullopt;

    if (verb == "claim") {
        ev.payload = ClaimEvent{arg};
    } else if (verb == "release") {
        ev.payload = ReleaseEvent{arg};
    } else if (verb == "do") {
        auto sep = arg.find('.');
        if (sep == std::string::npos || sep == 0 || sep + 1 >= arg.size()) return std::nullopt;
        ev.payload = DoEvent{arg.substr(sep + 1), arg.substr(0, sep)};
    } else {
        return std::nullopt;
    }
    return ev;
}

// --- validation ---------------------------------------------------------

namespace {

// Reachability over the raw edge relation; well-defined also on cyclic graphs
// so remaining checks stay meaningful when E_CYCLE is reported.
struct Reach {
    std::map<NodeId, std::set<NodeId>> fwd;

    explicit Reach(const Activity& act) {
        std::map<NodeId, std::vector<NodeId>> adj;
        for (const auto& [from, to] : act.edges) adj[from].push_back(to);
        for (const auto& [n, _] : act.nodes) {
            std::set<NodeId>& seen = fwd[n];
            std::deque<NodeId> work{n};
            while (!work.empty()) {
                NodeId cur = work.front();
                work.pop_front();
                auto it = adj.find(cur);
                if (it == adj.end()) continue;
                for (const NodeId& next : it->second)
                    if (seen.insert(next).second) work.push_back(next);
            }
        }
    }

    // true iff a path of length >= 1 leads from a to b
    bool reaches(const NodeId& a, const NodeId& b) const {
        auto it = fwd.find(a);
        return it != fwd.end() && it->second.count(b) > 0;
    }
};

bool has_cycle(const Activity& act) {
    std::map<NodeId, std::vector<NodeId>> adj;
    std::map<NodeId, int> indegree;
    for (const auto& [n, _] : act.nodes) indegree[n] = 0;
    for (const auto& [from, to] : act.edges) {
        adj[from].push_back(to);
        indegree[to]++;
    }
    std::deque<NodeId> ready;
    for (const auto& [n, d] : indegree)
        if (d == 0) ready.push_back(n);
    size_t emitted = 0;
    while (!ready.empty()) {
        NodeId n = ready.front();
        ready.pop_front();
        emitted++;
        for (const NodeId& next : adj[n])
            if (--indegree[next] == 0) ready.push_back(next);
    }
    return emitted != act.nodes.size();
}

void check_timing(const TimingSpec& t, const std::string& entity, std::vector<Diagnostic>& out) {
    if (auto* d = std::get_if<DeterministicTime>(&t)) {
        if (d->t < 0)
            out.push_back({Code::E_BAD_TIMING, entity, "negative deterministic time", {}});
    } else if (auto* n = std::get_if<NormalTime>(&t)) {
        if (n->sigma <= 0)
            out.push_back({Code::E_BAD_TIMING, entity, "normal distribution needs sigma > 0", {}});
    } else if (auto* tr = std::get_if<TriangularTime>(&t)) {
        if (!(tr->a <= tr->m && tr->m <= tr->b))
            out.push_back({Code::E_BAD_TIMING, entity, "triangular distribution needs a <= m <= b", {}});
    } else if (auto* p = std::get_if<PertTime>(&t)) {
        if (!(p->a <= p->m && p->m <= p->b))
            out.push_back({Code::E_BAD_TIMING, entity, "PERT distribution needs a <= m <= b", {}});
    }
}

void check_peripheral(const Specification& spec, const Peripheral& p, std::vector<Diagnostic>& out) {
    if (!spec.owner.count(p.id))
        out.push_back({Code::E_UNKNOWN_REF, p.id, "peripheral belongs to no resource", {}});

    if (auto* u = std::get_if<UnmovablePeripheral>(&p.kind)) {
        for (const auto& [a, timing] : u->actions) check_timing(timing, p.id + "." + a, out);
        return;
    }

    const auto& m = std::get<MovablePeripheral>(p.kind);
    if (m.positions.empty())
        out.push_back({Code::E_UNKNOWN_REF, p.id, "movable peripheral declares no positions", {}});
    for (const auto& [id, move] : m.moves) {
        const std::string entity = p.id + "." + id;
        if (move.source == move.target)
            out.push_back({Code::E_MOVE_ENDPOINTS, entity, "movement source equals target", {}});
        if (!m.positions.count(move.source))
            out.push_back({Code::E_UNKNOWN_REF, entity, "unknown source position '" + move.source + "'", {}});
        if (!m.positions.count(move.target))
            out.push_back({Code::E_UNKNOWN_REF, entity, "unknown target position '" + move.target + "'", {}});
        if (auto* s = std::get_if<SecondOrderProfile>(&move.profile)) {
            if (s->vmax <= 0 || s->amax <= 0)
                out.push_back({Code::E_BAD_PROFILE, entity, "profile parameters must be positive", {}});
        } else {
            const auto& t = std::get<ThirdOrderProfile>(move.profile);
            if (t.vmax <= 0 || t.amax <= 0 || t.jmax <= 0)
                out.push_back({Code::E_BAD_PROFILE, entity, "profile parameters must be positive", {}});
        }
        if (move.settling < 0)
            out.push_back({Code::E_BAD_PROFILE, entity, "negative settling time", {}});
        if (move.distance < 0)
            out.push_back({Code::E_BAD_PROFILE, entity, "negative distance", {}});
    }
}

void check_activity(const Specification& spec, const Activity& act, std::vector<Diagnostic>& out) {
    const std::string aid = act.id;

    for (const auto& [from, to] : act.edges) {
        if (!act.nodes.count(from))
            out.push_back({Code::E_UNKNOWN_REF, aid, "edge references unknown node '" + from + "'", {}});
        if (!act.nodes.count(to))
            out.push_back({Code::E_UNKNOWN_REF, aid, "edge references unknown node '" + to + "'", {}});
    }

    if (has_cycle(act))
        out.push_back({Code::E_CYCLE, aid, "activity graph is not a DAG", {}});

    Reach reach(act);

    // claim/release inventory per resource
    std::map<ResourceId, std::vector<NodeId>> claims, releases;
    for (const auto& [n, kind] : act.nodes) {
        if (auto* c = std::get_if<ClaimNode>(&kind)) {
            if (!spec.resources.count(c->resource))
                out.push_back({Code::E_UNKNOWN_REF, aid + "." + n,
                               "claim of unknown resource '" + c->resource + "'", {}});
            claims[c->resource].push_back(n);
        } else if (auto* r = std::get_if<ReleaseNode>(&kind)) {
            if (!spec.resources.count(r->resource))
                out.push_back({Code::E_UNKNOWN_REF, aid + "." + n,
                               "release of unknown resource '" + r->resource + "'", {}});
            releases[r->resource].push_back(n);
        }
    }

    for (const auto& [r, ns] : claims)
        if (ns.size() > 1)
            out.push_back({Code::E_MULTI_CLAIM, aid, "resource '" + r + "' claimed more than once", {}});
    for (const auto& [r, ns] : releases)
        if (ns.size() > 1)
            out.push_back({Code::E_MULTI_CLAIM, aid, "resource '" + r + "' released more than once", {}});

    auto any_reaches = [&](const std::vector<NodeId>& from, const NodeId& to) {
        return std::any_of(from.begin(), from.end(),
                           [&](const NodeId& f) { return reach.reaches(f, to); });
    };
    auto reaches_any = [&](const NodeId& from, const std::vector<NodeId>& to) {
        return std::any_of(to.begin(), to.end(),
                           [&](const NodeId& t) { return reach.reaches(from, t); });
    };

    // action nodes: known refs, claim before, release after
    std::map<PeripheralId, std::vector<NodeId>> on_peripheral;
    for (const auto& [n, kind] : act.nodes) {
        auto* a = std::get_if<ActionNode>(&kind);
        if (!a) continue;
        const std::string entity = aid + "." + n;
        const Peripheral* p = spec.find_peripheral(a->peripheral);
        if (!p) {
            out.push_back({Code::E_UNKNOWN_REF, entity,
                           "action on unknown peripheral '" + a->peripheral + "'", {}});
            continue;
        }
        if (!p->has_action(a->action)) {
            out.push_back({Code::E_UNKNOWN_REF, entity,
                           "peripheral '" + a->peripheral + "' has no action '" + a->action + "'", {}});
            continue;
        }
        on_peripheral[a->peripheral].push_back(n);
        auto owner = spec.owner.find(a->peripheral);
        if (owner == spec.owner.end()) continue;  // reported on the peripheral
        const ResourceId r = owner->second;
        auto cl = claims.find(r);
        if (cl == claims.end() || !any_reaches(cl->second, n))
            out.push_back({Code::E_UNCLAIMED_ACTION, entity,
                           "action not preceded by a claim of resource '" + r + "'", {}});
        auto rl = releases.find(r);
        if (rl != releases.end() && !reaches_any(n, rl->second))
            out.push_back({Code::E_UNRELEASED_CLAIM, entity,
                           "action not succeeded by the release of resource '" + r + "'", {}});
    }

    // claim reaches release; release preceded by claim
    for (const auto& [r, ns] : claims)
        for (const NodeId& c : ns) {
            auto rl = releases.find(r);
            if (rl == releases.end() || !reaches_any(c, rl->second))
                out.push_back({Code::E_UNRELEASED_CLAIM, aid + "." + c,
                               "claim of resource '" + r + "' never released", {}});
        }
    for (const auto& [r, ns] : releases)
        for (const NodeId& rel : ns) {
            auto cl = claims.find(r);
            if (cl == claims.end() || !any_reaches(cl->second, rel))
                out.push_back({Code::E_RELEASE_BEFORE_CLAIM, aid + "." + rel,
                               "release of resource '" + r + "' not preceded by its claim", {}});
        }

    // nodes on one peripheral must be totally ordered
    for (const auto& [p, ns] : on_peripheral)
        for (size_t i = 0; i < ns.size(); ++i)
            for (size_t j = i + 1; j < ns.size(); ++j)
                if (!reach.reaches(ns[i], ns[j]) && !reach.reaches(ns[j], ns[i]))
                    out.push_back({Code::E_SELF_CONCURRENCY, aid,
                                   "nodes '" + ns[i] + "' and '" + ns[j] + "' on peripheral '" + p +
                                       "' are unordered", {}});
}

void check_dispatch(const Specification& spec, std::vector<Diagnostic>& out) {
    auto check_name = [&](const ActivityId& a) {
        if (!spec.activities.count(a))
            out.push_back({Code::E_UNKNOWN_REF, a, "dispatch references unknown activity '" + a + "'", {}});
    };
    if (auto* seq = std::get_if<DispatchingSequence>(&spec.dispatch)) {
        for (const auto& a : seq->transient.items) check_name(a);
        for (const auto& a : seq->periodic.items) check_name(a);
    } else {
        const auto& fsa = std::get<DispatchFSA>(spec.dispatch);
        for (const auto& [from, label, to] : fsa.transitions) {
            check_name(label);
            if (!fsa.states.count(from) || !fsa.states.count(to))
                out.push_back({Code::E_UNKNOWN_REF, label, "FSA edge references unknown state", {}});
        }
        for (const auto& s : fsa.initial)
            if (!fsa.states.count(s))
                out.push_back({Code::E_UNKNOWN_REF, s, "FSA initial state not declared", {}});
    }
}

}  // namespace

std::vector<Diagnostic> validate_spec(const Specification& spec) {
    std::vector<Diagnostic> out;
    for (const auto& [_, p] : spec.peripherals) check_peripheral(spec, p, out);
    for (const auto& [p, r] : spec.owner)
        if (!spec.resources.count(r))
            out.push_back({Code::E_UNKNOWN_REF, p, "peripheral owned by unknown resource '" + r + "'", {}});
    for (const auto& [_, act] : spec.activities) check_activity(spec, act, out);
    check_dispatch(spec, out);
    sort_diagnostics(out);
    return out;
}

UsedSets used_sets(const Specification& spec, const DispatchingSequence& seq) {
    UsedSets u;
    auto visit = [&](const ActivityId& a) {
        if (!spec.activities.count(a))
            throw Error(Code::E_UNKNOWN_REF, "dispatch references unknown activity '" + a + "'");
        u.activities.insert(a);
    };
    for (const auto& a : seq.transient.items) visit(a);
    for (const auto& a : seq.periodic.items) visit(a);

    for (const auto& a : u.activities) {
        const Activity& act = spec.activities.at(a);
        for (const auto& r : act.resources()) u.resources.insert(r);
        for (const auto& [_, kind] : act.nodes)
            if (auto* an = std::get_if<ActionNode>(&kind)) u.peripherals.insert(an->peripheral);
    }

    for (const auto& a : u.activities) {
        bool periodic = std::count(seq.periodic.items.begin(), seq.periodic.items.end(), a) > 0;
        if (periodic) {
            u.instance_bound[a] = std::nullopt;
        } else {
            u.instance_bound[a] =
                static_cast<int>(std::count(seq.transient.items.begin(), seq.transient.items.end(), a));
        }
    }
    return u;
}

double movement_duration(const Movement& m) {
    auto* p = std::get_if<SecondOrderProfile>(&m.profile);
    if (!p)
        throw Error(Code::E_UNSUPPORTED_PROFILE,
                    "third-order profiles are stored but not timed ('" + m.id + "')");
    const double d = m.distance;
    const double v = p->vmax, a = p->amax;
    // triangular profile if vmax is never reached, trapezoidal otherwise
    const double travel = (d <= v * v / a) ? 2.0 * std::sqrt(d / a) : v / a + d / v;
    return m.settling + travel;
}

double timing_mean(const TimingSpec& t) {
    if (auto* d = std::get_if<DeterministicTime>(&t)) return d->t;
    if (auto* n = std::get_if<NormalTime>(&t)) return n->mu;
    if (auto* tr = std::get_if<TriangularTime>(&t)) return (tr->a + tr->m + tr->b) / 3.0;
    const auto& p = std::get<PertTime>(t);
    return (p.a + 4.0 * p.m + p.b) / 6.0;
}

}  // namespace lsat
