#include "doctest.h"
#include "lsat/automata.hpp"
#include "support/explicit_automaton.hpp"
#include "support/oracles.hpp"

using namespace lsat;
using testutil::action;
using testutil::claim;
using testutil::ExplicitAutomaton;
using testutil::release;

namespace {

// a two-state claim/release toggle
std::shared_ptr<ExplicitAutomaton> toggle(const std::string& r) {
    auto a = std::make_shared<ExplicitAutomaton>();
    a->add_state("released", true);
    a->add_transition("released", claim("Act", 1, r), "claimed");
    a->add_transition("claimed", release("Act", 1, r), "released");
    return a;
}

}  // namespace

TEST_CASE("bounded exploration of a toggle") {
    auto a = toggle("R1");
    auto g = bounded_explore(*a, 5, 1000);
    CHECK(g.states.size() == 2);
    CHECK(g.initial.size() == 1);
    CHECK(g.states[g.initial[0]] == "released");
    CHECK(g.transitions.size() == 2);
    CHECK(g.frontier.empty());
    CHECK(!g.truncated);

    SUBCASE("depth zero keeps only the initial states") {
        auto g0 = bounded_explore(*a, 0, 1000);
        CHECK(g0.states.size() == 1);
        CHECK(g0.transitions.empty());
        CHECK(g0.frontier.size() == 1);
    }
    SUBCASE("state sets grow monotonically with depth") {
        std::set<std::string> prev;
        for (int d = 0; d <= 4; ++d) {
            auto gd = bounded_explore(*a, d, 1000);
            std::set<std::string> cur(gd.states.begin(), gd.states.end());
            for (const auto& s : prev) CHECK(cur.count(s) == 1);
            prev = std::move(cur);
        }
    }
}

TEST_CASE("bounded exploration honors the state budget") {
    // an infinite counter chain
    class Counter : public Automaton {
    public:
        bool alphabet_contains(const EventLabel&) const override { return true; }
        std::vector<State> initial_states() const override { return {State::make("0", 0)}; }
        std::vector<Transition> successors(const State& s) const override {
            const int k = s.as<int>();
            return {{claim("Act", k + 1, "R"), State::make(std::to_string(k + 1), k + 1)}};
        }
    };
    Counter c;
    auto g = bounded_explore(c, 100, 10);
    CHECK(g.truncated);
    CHECK(g.states.size() <= 10);
    CHECK(!g.frontier.empty());
    CHECK_THROWS_AS(bounded_explore(c, 100, 10, true), Error);
}

TEST_CASE("trace membership") {
    auto a = toggle("R1");
    CHECK(accepts_trace(*a, {claim("Act", 1, "R1"), release("Act", 1, "R1")}));
    CHECK(!accepts_trace(*a, {release("Act", 1, "R1")}));
    CHECK(accepts_trace(*a, {}));
    auto rej = first_rejection(*a, {claim("Act", 1, "R1"), claim("Act", 1, "R1")});
    REQUIRE(rej.has_value());
    CHECK(*rej == 1);
}

TEST_CASE("synchronous composition") {
    SUBCASE("identity") {
        auto a = toggle("R1");
        auto prod = sync_compose({a});
        for (int d = 0; d <= 4; ++d) {
            CHECK(oracle::bounded_traces(*prod, d) == oracle::bounded_traces(*a, d));
        }
    }
    SUBCASE("commutative up to relabeling") {
        auto a = toggle("R1");
        auto b = toggle("R2");
        auto ab = sync_compose({a, b});
        auto ba = sync_compose({b, a});
        auto cmp = bounded_language_equal(*ab, *ba, 10);
        CHECK(cmp.equal);
    }
    SUBCASE("shared events synchronize, private events interleave") {
        // left: claim then ping; right: claim then pong — claim is shared
        auto left = std::make_shared<ExplicitAutomaton>();
        left->add_state("0", true);
        left->add_transition("0", claim("Act", 1, "R1"), "1");
        left->add_transition("1", action("Act", 1, "ping", "p1"), "2");

        auto right = std::make_shared<ExplicitAutomaton>();
        right->add_state("0", true);
        right->add_transition("0", claim("Act", 1, "R1"), "1");
        right->add_transition("1", action("Act", 1, "pong", "p2"), "2");

        auto prod = sync_compose({left, right});
        CHECK(accepts_trace(*prod, {claim("Act", 1, "R1"), action("Act", 1, "ping", "p1"),
                                    action("Act", 1, "pong", "p2")}));
        CHECK(accepts_trace(*prod, {claim("Act", 1, "R1"), action("Act", 1, "pong", "p2"),
                                    action("Act", 1, "ping", "p1")}));
        // the shared claim happens once, in lock-step
        CHECK(!accepts_trace(*prod, {claim("Act", 1, "R1"), claim("Act", 1, "R1")}));
        CHECK(!accepts_trace(*prod, {action("Act", 1, "ping", "p1")}));
    }
    SUBCASE("adding a component only restricts the projected language") {
        auto a = toggle("R1");
        auto b = toggle("R2");
        auto small = sync_compose({a});
        auto large = sync_compose({a, b});
        for (const auto& trace_text : oracle::bounded_traces(*large, 4)) {
            // erase events outside the smaller product's alphabet
            std::vector<EventLabel> projected;
            for (const auto& text : trace_text) {
                auto e = parse_event_text(text);
                REQUIRE(e.has_value());
                if (small->alphabet_contains(*e)) projected.push_back(*e);
            }
            CHECK(accepts_trace(*small, projected));
        }
    }
}

TEST_CASE("bounded language comparison") {
    auto a = toggle("R1");
    SUBCASE("reflexive") {
        CHECK(bounded_language_equal(*a, *a, 12).equal);
    }
    SUBCASE("claim self-loop is distinguished by a double claim") {
        auto loop = std::make_shared<ExplicitAutomaton>();
        loop->add_state("s", true);
        loop->add_transition("s", claim("Act", 1, "R1"), "s");
        auto cmp = bounded_language_equal(*a, *loop, 8);
        CHECK(!cmp.equal);
        REQUIRE(cmp.counterexample.size() == 2);
        CHECK(cmp.counterexample[0] == claim("Act", 1, "R1"));
        CHECK(cmp.counterexample[1] == claim("Act", 1, "R1"));
        CHECK(!cmp.counterexample_in_first);
    }
    SUBCASE("agrees with exhaustive trace enumeration") {
        auto b = toggle("R1");
        for (int d = 0; d <= 5; ++d) {
            bool equal = oracle::bounded_traces(*a, d) == oracle::bounded_traces(*b, d);
            CHECK(bounded_language_equal(*a, *b, d).equal == equal);
        }
    }
}

TEST_CASE("accepts_trace agrees with enumeration") {
    auto a = toggle("R1");
    auto all = oracle::bounded_traces(*a, 3);
    std::vector<std::vector<EventLabel>> probes = {
        {},
        {claim("Act", 1, "R1")},
        {claim("Act", 1, "R1"), release("Act", 1, "R1")},
        {claim("Act", 1, "R1"), claim("Act", 1, "R1")},
        {release("Act", 1, "R1")},
    };
    for (const auto& probe : probes) {
        std::vector<std::string> texts;
        for (const auto& e : probe) texts.push_back(e.text());
        CHECK(accepts_trace(*a, probe) == (all.count(texts) > 0));
    }
}

TEST_CASE("DOT export") {
    auto a = toggle("R1");
    auto g = bounded_explore(*a, 5, 1000);
    auto dot = export_dot(g);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("__init0 [shape=point") != std::string::npos);
    CHECK(dot.find("label=\"Act#1.claim(R1)\"") != std::string::npos);
    CHECK(dot.find("label=\"released\"") != std::string::npos);
    // determinism
    CHECK(export_dot(bounded_explore(*a, 5, 1000)) == dot);

    auto g0 = bounded_explore(*a, 0, 1000);
    auto dot0 = export_dot(g0);
    CHECK(dot0.find("style=dashed") != std::string::npos);  // frontier state
}
