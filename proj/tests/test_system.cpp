#include <deque>
#include <random>

#include "doctest.h"
#include "lsat/system.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace lsat;

namespace {

EventLabel ev(const std::string& text) {
    auto e = parse_event_text(text);
    REQUIRE(e.has_value());
    return *e;
}

// all event paths through an explored graph, depth-bounded
void walk_paths(const ExploredGraph& g, int from, std::vector<EventLabel>& path, int depth,
                const std::function<void(const std::vector<EventLabel>&)>& visit) {
    visit(path);
    if (static_cast<int>(path.size()) >= depth) return;
    for (const auto& [src, event, dst] : g.transitions) {
        if (src != from) continue;
        path.push_back(event);
        walk_paths(g, dst, path, depth, visit);
        path.pop_back();
    }
}

}  // namespace

TEST_CASE("lazy and explicit products agree on the reference model") {
    auto spec = fixtures::cross_activity_spec();
    DispatchingSequence seq{{{"Act"}}, {}};

    MseqOptions lazy;
    MseqOptions explicit_route;
    explicit_route.route = MseqOptions::Route::Explicit;
    auto m_lazy = build_mseq(spec, seq, lazy);
    auto m_expl = build_mseq(spec, seq, explicit_route);

    auto cmp = bounded_language_equal(*m_lazy, *m_expl, 12);
    if (!cmp.equal) {
        std::string t;
        for (const auto& e : cmp.counterexample) t += e.text() + " ";
        CAPTURE(t);
        CAPTURE(cmp.counterexample_in_first);
    }
    CHECK(cmp.equal);

    auto g_lazy = bounded_explore(*m_lazy, 10, 100000);
    auto g_expl = bounded_explore(*m_expl, 10, 100000);
    CHECK(g_lazy.states.size() == g_expl.states.size());
    CHECK(g_lazy.transitions.size() == g_expl.transitions.size());
    CHECK(g_lazy.frontier.empty());  // six events, depth 10 exhausts the system

    SUBCASE("the single terminal state has both resources released") {
        int terminals = 0;
        for (std::size_t i = 0; i < g_lazy.states.size(); ++i) {
            bool has_out = false;
            for (const auto& [from, _, to] : g_lazy.transitions)
                has_out |= from == static_cast<int>(i);
            if (!has_out) {
                terminals++;
                CHECK(g_lazy.states[i].find("A{R1=r,R2=r}") != std::string::npos);
                CHECK(g_lazy.states[i].find("F{Act=1}") != std::string::npos);
                CHECK(g_lazy.states[i].find("B{}") != std::string::npos);
            }
        }
        CHECK(terminals == 1);
    }
}

TEST_CASE("empty dispatch yields the empty language") {
    auto spec = fixtures::cross_activity_spec();
    auto m = build_mseq(spec, DispatchingSequence{});
    auto g = bounded_explore(*m, 5, 1000);
    CHECK(g.states.size() == 1);
    CHECK(g.transitions.empty());
    CHECK(accepts_trace(*m, {}));
}

TEST_CASE("unbounded dispatch overlaps instances") {
    auto spec = fixtures::cross_activity_spec();
    DispatchingSequence seq{{}, {{"Act"}}};
    auto m = build_mseq(spec, seq);

    // the second instance can run its action before the first one finishes
    std::vector<EventLabel> trace{
        ev("Act#1.claim(R1)"), ev("Act#1.do(p1.a)"),  ev("Act#1.release(R1)"),
        ev("Act#2.claim(R1)"), ev("Act#2.do(p1.a)"),
    };
    CHECK(accepts_trace(*m, trace));
    // ... and the first can still complete afterwards
    trace.push_back(ev("Act#1.claim(R2)"));
    trace.push_back(ev("Act#1.do(p2.b)"));
    trace.push_back(ev("Act#1.release(R2)"));
    CHECK(accepts_trace(*m, trace));
    // the claiming order per resource stays FIFO
    CHECK(!accepts_trace(*m, {ev("Act#2.claim(R1)")}));

    SUBCASE("two instances in flight") {
        auto g = bounded_explore(*m, 8, 200000);
        bool found = false;
        for (const auto& key : g.states)
            found |= key.find("Act#1=") != std::string::npos &&
                     key.find("Act#2=") != std::string::npos;
        CHECK(found);
    }
    SUBCASE("explicit route refuses unbounded instance sets") {
        MseqOptions opt;
        opt.route = MseqOptions::Route::Explicit;
        CHECK_THROWS_AS(build_mseq(spec, seq, opt), Error);
    }
}

TEST_CASE("peripheral initial states multiply and can be pinned") {
    auto spec = fixtures::peripheral_pair_spec();
    DispatchingSequence seq{{{"ActA", "ActB"}}, {}};
    auto m = build_mseq(spec, seq);
    CHECK(m->initial_states().size() == 6);  // 2 (pu) x 3 (pm)

    MseqOptions pinned;
    pinned.pinned_initials = {{"pu", "a"}, {"pm", "left"}};
    auto mp = build_mseq(spec, seq, pinned);
    CHECK(mp->initial_states().size() == 1);

    MseqOptions both;
    both.pinned_initials = pinned.pinned_initials;
    both.route = MseqOptions::Route::Explicit;
    auto me = build_mseq(spec, seq, both);
    CHECK(bounded_language_equal(*mp, *me, 10).equal);

    MseqOptions bad;
    bad.pinned_initials = {{"pu", "zap"}};
    CHECK_THROWS_AS(build_mseq(spec, seq, bad), Error);
}

TEST_CASE("explored traces respect alternation and the claim order") {
    auto spec = fixtures::usage_abc_spec();
    DispatchingSequence seq{{{"ActA"}}, {{"ActB", "ActC"}}};
    auto m = build_mseq(spec, seq);
    auto g = bounded_explore(*m, 8, 100000);

    std::map<ResourceId, PeriodicView> reduced;
    for (const ResourceId r : {"R1", "R2"})
        reduced.emplace(r, PeriodicView(reduce_for_resource(seq.transient, r, spec),
                                        reduce_for_resource(seq.periodic, r, spec)));

    int checked = 0;
    for (int init : g.initial) {
        std::vector<EventLabel> path;
        walk_paths(g, init, path, 8, [&](const std::vector<EventLabel>& p) {
            checked++;
            std::map<ResourceId, bool> claimed{{"R1", false}, {"R2", false}};
            std::map<ResourceId, std::size_t> count{{"R1", 0}, {"R2", 0}};
            for (const auto& e : p) {
                if (auto* c = std::get_if<ClaimEvent>(&e.payload)) {
                    REQUIRE(!claimed[c->resource]);
                    claimed[c->resource] = true;
                    // FIFO: the k-th claim of r is the k-th item of rho_r(seq)
                    const auto& view = reduced.at(c->resource);
                    auto expect = view.item(count[c->resource]);
                    REQUIRE(expect.has_value());
                    CHECK(e.instance.activity == *expect);
                    CHECK(e.instance.index ==
                          static_cast<int>(1 + view.count_prefix(count[c->resource], *expect)));
                    count[c->resource]++;
                } else if (auto* r = std::get_if<ReleaseEvent>(&e.payload)) {
                    REQUIRE(claimed[r->resource]);
                    claimed[r->resource] = false;
                }
            }
        });
    }
    CHECK(checked >= 30);  // the strict per-resource ordering keeps the path count small
}

TEST_CASE("explored traces respect the activities' internal node order") {
    auto spec = fixtures::cross_activity_spec();
    DispatchingSequence seq{{}, {{"Act"}}};
    auto m = build_mseq(spec, seq);
    auto g = bounded_explore(*m, 7, 100000);
    const Activity& act = spec.activities.at("Act");

    // payload -> node (payloads are unique in this activity)
    auto node_of = [&](const EventLabel& e) {
        for (const auto& [n, kind] : act.nodes) {
            if (auto* c = std::get_if<ClaimNode>(&kind);
                c && e.payload == decltype(e.payload){ClaimEvent{c->resource}})
                return n;
            if (auto* r = std::get_if<ReleaseNode>(&kind);
                r && e.payload == decltype(e.payload){ReleaseEvent{r->resource}})
                return n;
            if (auto* a = std::get_if<ActionNode>(&kind);
                a && e.payload == decltype(e.payload){DoEvent{a->action, a->peripheral}})
                return n;
        }
        REQUIRE(false);
        return NodeId{};
    };

    for (int init : g.initial) {
        std::vector<EventLabel> path;
        walk_paths(g, init, path, 7, [&](const std::vector<EventLabel>& p) {
            std::map<int, std::vector<NodeId>> per_instance;
            for (const auto& e : p) per_instance[e.instance.index].push_back(node_of(e));
            for (const auto& [_, nodes] : per_instance) {
                std::map<NodeId, std::size_t> pos;
                for (std::size_t i = 0; i < nodes.size(); ++i) pos[nodes[i]] = i;
                for (const auto& [from, to] : act.edges)
                    if (pos.count(from) && pos.count(to)) CHECK(pos[from] < pos[to]);
            }
        });
    }
}

TEST_CASE("random specs: lazy product equals explicit composition") {
    int compared = 0;
    for (int i = 0; i < 12; ++i) {
        std::mt19937 rng(4000 + i);
        auto spec = gen::random_spec(rng);
        auto seq = gen::spec_sequence(spec);
        auto lazy = build_mseq(spec, seq);
        MseqOptions opt;
        opt.route = MseqOptions::Route::Explicit;
        auto expl = build_mseq(spec, seq, opt);
        auto cmp = bounded_language_equal(*lazy, *expl, 10, 1u << 22);
        if (!cmp.equal) {
            std::string t;
            for (const auto& e : cmp.counterexample) t += e.text() + " ";
            CAPTURE(i);
            CAPTURE(t);
        }
        CHECK(cmp.equal);
        compared++;
    }
    CHECK(compared == 12);
}

TEST_CASE("union product") {
    auto spec = fixtures::usage_abc_spec();

    SUBCASE("a cycle FSA matches the equivalent fixed sequence") {
        DispatchFSA fsa;
        fsa.states = {"s0", "s1"};
        fsa.initial = {"s0"};
        fsa.transitions = {{"s0", "ActA", "s1"}, {"s1", "ActC", "s0"}};
        auto union_m = build_mSeq(spec, fsa);

        DispatchingSequence seq1{{{"ActA"}}, {{"ActC", "ActA"}}};
        DispatchingSequence seq2{{{"ActA", "ActC"}}, {{"ActA", "ActC"}}};
        auto m1 = build_mseq(spec, seq1);
        auto m2 = build_mseq(spec, seq2);
        CHECK(bounded_language_equal(*union_m, *m1, 10).equal);
        CHECK(bounded_language_equal(*union_m, *m2, 10).equal);
        CHECK(bounded_language_equal(*m1, *m2, 12).equal);
    }
    SUBCASE("no transitions: only the empty trace") {
        DispatchFSA fsa;
        fsa.states = {"s0"};
        fsa.initial = {"s0"};
        auto m = build_mSeq(spec, fsa);
        auto g = bounded_explore(*m, 5, 1000);
        CHECK(g.states.size() == 1);
        CHECK(g.transitions.empty());
    }
    SUBCASE("no initial states is an error") {
        DispatchFSA fsa;
        fsa.states = {"s0"};
        CHECK_THROWS_AS(build_mSeq(spec, fsa), Error);
    }
    SUBCASE("two initial branches produce the union of the trace sets") {
        DispatchFSA fsa;
        fsa.states = {"s0", "s1", "s2"};
        fsa.initial = {"s0"};
        fsa.transitions = {{"s0", "ActA", "s1"}, {"s0", "ActC", "s2"}};
        auto m = build_mSeq(spec, fsa);

        auto only_a = build_mseq(spec, DispatchingSequence{{{"ActA"}}, {}});
        auto only_c = build_mseq(spec, DispatchingSequence{{{"ActC"}}, {}});
        auto got = oracle::bounded_traces(*m, 10);
        auto expected = oracle::bounded_traces(*only_a, 10);
        for (const auto& t : oracle::bounded_traces(*only_c, 10)) expected.insert(t);
        CHECK(got == expected);
    }
}

TEST_CASE("completeness checking") {
    DispatchFSA cycle;
    cycle.states = {"s0", "s1"};
    cycle.initial = {"s0"};
    cycle.transitions = {{"s0", "A1", "s1"}, {"s1", "A2", "s0"}};

    SUBCASE("a matching lasso passes") {
        DispatchingSequence lasso{{{"A1"}}, {{"A2", "A1"}}};
        auto report = check_complete(cycle, {lasso}, 20);
        CHECK(report.complete());
    }
    SUBCASE("no candidates: the shortest word is missing") {
        auto report = check_complete(cycle, {}, 10);
        CHECK(!report.complete());
        REQUIRE(!report.missing_words.empty());
        CHECK(report.missing_words.front().empty());  // eps
    }
    SUBCASE("redundant candidate sets still pass") {
        DispatchingSequence l1{{{"A1"}}, {{"A2", "A1"}}};
        DispatchingSequence l2{{{"A1", "A2"}}, {{"A1", "A2"}}};
        auto report = check_complete(cycle, {l1, l2}, 20);
        CHECK(report.complete());
    }
    SUBCASE("prefixes outside the language are reported") {
        DispatchingSequence bad{{{"A2"}}, {}};
        auto report = check_complete(cycle, {bad}, 10);
        REQUIRE(!report.bad_prefixes.empty());
        CHECK(report.bad_prefixes.front().prefix.items == std::vector<ActivityId>{"A2"});
    }
}

TEST_CASE("suggesting complete sets") {
    SUBCASE("self-loop") {
        DispatchFSA fsa;
        fsa.states = {"s0"};
        fsa.initial = {"s0"};
        fsa.transitions = {{"s0", "A", "s0"}};
        auto suggested = suggest_complete_set(fsa, 1);
        DispatchingSequence want{{}, {{"A"}}};
        bool found = false;
        for (const auto& s : suggested) found |= s == want;
        CHECK(found);
        CHECK(check_complete(fsa, suggested, 10).complete());
    }
    SUBCASE("two-state cycle") {
        DispatchFSA fsa;
        fsa.states = {"s0", "s1"};
        fsa.initial = {"s0"};
        fsa.transitions = {{"s0", "A1", "s1"}, {"s1", "A2", "s0"}};
        auto suggested = suggest_complete_set(fsa, 2);
        DispatchingSequence want{{{"A1"}}, {{"A2", "A1"}}};
        bool found = false;
        for (const auto& s : suggested) found |= s == want;
        CHECK(found);
        CHECK(check_complete(fsa, suggested, 12).complete());
    }
    SUBCASE("acyclic FSA yields its maximal words") {
        DispatchFSA fsa;
        fsa.states = {"s0", "s1", "s2"};
        fsa.initial = {"s0"};
        fsa.transitions = {{"s0", "A1", "s1"}, {"s1", "A2", "s2"}, {"s0", "A2", "s2"}};
        auto suggested = suggest_complete_set(fsa, 3);
        DispatchingSequence w1{{{"A1", "A2"}}, {}};
        DispatchingSequence w2{{{"A2"}}, {}};
        bool f1 = false, f2 = false;
        for (const auto& s : suggested) {
            f1 |= s == w1;
            f2 |= s == w2;
        }
        CHECK(f1);
        CHECK(f2);
        CHECK(check_complete(fsa, suggested, 10).complete());
    }
    SUBCASE("budget") {
        DispatchFSA fsa;
        fsa.states = {"s0"};
        fsa.initial = {"s0"};
        fsa.transitions = {{"s0", "A", "s0"}, {"s0", "B", "s0"}, {"s0", "C", "s0"}};
        CHECK_THROWS_AS(suggest_complete_set(fsa, 12, 50), Error);
    }
}

TEST_CASE("invalid specifications are rejected by the builders") {
    auto spec = fixtures::single_resource_spec();
    spec.activities["Act"].edges.insert({"n2", "n1"});  // cycle
    CHECK_THROWS_AS(build_mseq(spec, DispatchingSequence{{{"Act"}}, {}}), Error);
}
