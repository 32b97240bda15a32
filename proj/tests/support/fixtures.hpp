#pragma once

// Hand-built reference models used across the suites.

#include "lsat/model.hpp"

namespace fixtures {

// Two resources, one unmovable peripheral each; activity Act claims both,
// runs a on p1 and b on p2 with a cross dependency a -> b:
//   n1: claim R1  -> n3: p1.a -> n5: release R1
//   n2: claim R2  -> n4: p2.b -> n6: release R2
//   n3 -> n4
inline lsat::Specification cross_activity_spec() {
    lsat::Specification spec;
    spec.resources = {"R1", "R2"};

    lsat::Peripheral p1;
    p1.id = "p1";
    lsat::UnmovablePeripheral u1;
    u1.actions["a"] = lsat::DeterministicTime{1.0};
    p1.kind = std::move(u1);
    spec.peripherals["p1"] = std::move(p1);
    spec.owner["p1"] = "R1";

    lsat::Peripheral p2;
    p2.id = "p2";
    lsat::UnmovablePeripheral u2;
    u2.actions["b"] = lsat::DeterministicTime{1.0};
    p2.kind = std::move(u2);
    spec.peripherals["p2"] = std::move(p2);
    spec.owner["p2"] = "R2";

    lsat::Activity act;
    act.id = "Act";
    act.nodes["n1"] = lsat::ClaimNode{"R1"};
    act.nodes["n2"] = lsat::ClaimNode{"R2"};
    act.nodes["n3"] = lsat::ActionNode{"a", "p1"};
    act.nodes["n4"] = lsat::ActionNode{"b", "p2"};
    act.nodes["n5"] = lsat::ReleaseNode{"R1"};
    act.nodes["n6"] = lsat::ReleaseNode{"R2"};
    act.edges = {{"n1", "n3"}, {"n3", "n5"}, {"n2", "n4"}, {"n4", "n6"}, {"n3", "n4"}};
    spec.activities["Act"] = std::move(act);

    spec.dispatch = lsat::DispatchingSequence{{{"Act"}}, {}};
    return spec;
}

inline const char* cross_activity_text() {
    return R"(// reference model
resource R1 { peripheral p1 unmovable { action a time 1.0 } }
resource R2 { peripheral p2 unmovable { action b time 1.0 } }
activity Act {
  nodes { n1: claim R1   n2: claim R2   n3: p1.a
          n4: p2.b       n5: release R1 n6: release R2 }
  flow  { n1 -> n3 -> n5   n2 -> n4 -> n6   n3 -> n4 }
}
dispatch sequence { Act }
)";
}

// ActA uses R1; ActB uses R1 and R2; ActC uses R2.
inline lsat::Specification usage_abc_spec() {
    lsat::Specification spec;
    spec.resources = {"R1", "R2"};

    lsat::Peripheral p1;
    p1.id = "p1";
    lsat::UnmovablePeripheral u1;
    u1.actions["a"] = lsat::DeterministicTime{1.0};
    p1.kind = std::move(u1);
    spec.peripherals["p1"] = std::move(p1);
    spec.owner["p1"] = "R1";

    lsat::Peripheral p2;
    p2.id = "p2";
    lsat::UnmovablePeripheral u2;
    u2.actions["b"] = lsat::DeterministicTime{1.0};
    p2.kind = std::move(u2);
    spec.peripherals["p2"] = std::move(p2);
    spec.owner["p2"] = "R2";

    lsat::Activity a;
    a.id = "ActA";
    a.nodes["n1"] = lsat::ClaimNode{"R1"};
    a.nodes["n2"] = lsat::ActionNode{"a", "p1"};
    a.nodes["n3"] = lsat::ReleaseNode{"R1"};
    a.edges = {{"n1", "n2"}, {"n2", "n3"}};
    spec.activities["ActA"] = std::move(a);

    lsat::Activity b;
    b.id = "ActB";
    b.nodes["n1"] = lsat::ClaimNode{"R1"};
    b.nodes["n2"] = lsat::ClaimNode{"R2"};
    b.nodes["n3"] = lsat::ReleaseNode{"R1"};
    b.nodes["n4"] = lsat::ReleaseNode{"R2"};
    b.edges = {{"n1", "n3"}, {"n2", "n4"}, {"n1", "n2"}};
    spec.activities["ActB"] = std::move(b);

    lsat::Activity c;
    c.id = "ActC";
    c.nodes["n1"] = lsat::ClaimNode{"R2"};
    c.nodes["n2"] = lsat::ActionNode{"b", "p2"};
    c.nodes["n3"] = lsat::ReleaseNode{"R2"};
    c.edges = {{"n1", "n2"}, {"n2", "n3"}};
    spec.activities["ActC"] = std::move(c);

    spec.dispatch = lsat::DispatchingSequence{{{"ActA"}}, {{"ActB", "ActC"}}};
    return spec;
}

// Peripheral automata reference: unmovable pu (actions a, b used by ActA),
// movable pm (four moves between left/middle/right used by ActB).
inline lsat::Specification peripheral_pair_spec() {
    lsat::Specification spec;
    spec.resources = {"R1", "R2"};

    lsat::Peripheral pu;
    pu.id = "pu";
    lsat::UnmovablePeripheral u;
    u.actions["a"] = lsat::DeterministicTime{1.0};
    u.actions["b"] = lsat::DeterministicTime{1.0};
    pu.kind = std::move(u);
    spec.peripherals["pu"] = std::move(pu);
    spec.owner["pu"] = "R1";

    lsat::Peripheral pm;
    pm.id = "pm";
    lsat::MovablePeripheral m;
    m.positions = {"left", "middle", "right"};
    auto move = [](const char* id, const char* s, const char* t) {
        lsat::Movement mv;
        mv.id = id;
        mv.source = s;
        mv.target = t;
        mv.profile = lsat::SecondOrderProfile{1.0, 2.0};
        mv.distance = 1.0;
        return mv;
    };
    m.moves["l_to_m"] = move("l_to_m", "left", "middle");
    m.moves["m_to_l"] = move("m_to_l", "middle", "left");
    m.moves["m_to_r"] = move("m_to_r", "middle", "right");
    m.moves["r_to_m"] = move("r_to_m", "right", "middle");
    pm.kind = std::move(m);
    spec.peripherals["pm"] = std::move(pm);
    spec.owner["pm"] = "R2";

    lsat::Activity a;
    a.id = "ActA";
    a.nodes["n1"] = lsat::ClaimNode{"R1"};
    a.nodes["n2"] = lsat::ActionNode{"a", "pu"};
    a.nodes["n3"] = lsat::ActionNode{"b", "pu"};
    a.nodes["n4"] = lsat::ReleaseNode{"R1"};
    a.edges = {{"n1", "n2"}, {"n2", "n3"}, {"n3", "n4"}};
    spec.activities["ActA"] = std::move(a);

    lsat::Activity b;
    b.id = "ActB";
    b.nodes["n1"] = lsat::ClaimNode{"R2"};
    b.nodes["n2"] = lsat::ActionNode{"l_to_m", "pm"};
    b.nodes["n3"] = lsat::ActionNode{"m_to_l", "pm"};
    b.nodes["n4"] = lsat::ActionNode{"m_to_r", "pm"};
    b.nodes["n5"] = lsat::ActionNode{"r_to_m", "pm"};
    b.nodes["n6"] = lsat::ReleaseNode{"R2"};
    b.edges = {{"n1", "n2"}, {"n2", "n3"}, {"n3", "n4"}, {"n4", "n5"}, {"n5", "n6"}};
    spec.activities["ActB"] = std::move(b);

    spec.dispatch = lsat::DispatchingSequence{{{"ActA", "ActB"}}, {}};
    return spec;
}

// one-resource activity: claim R1 -> a on p1 -> release R1
inline lsat::Specification single_resource_spec() {
    lsat::Specification spec;
    spec.resources = {"R1"};
    lsat::Peripheral p1;
    p1.id = "p1";
    lsat::UnmovablePeripheral u;
    u.actions["a"] = lsat::DeterministicTime{1.0};
    p1.kind = std::move(u);
    spec.peripherals["p1"] = std::move(p1);
    spec.owner["p1"] = "R1";

    lsat::Activity act;
    act.id = "Act";
    act.nodes["n1"] = lsat::ClaimNode{"R1"};
    act.nodes["n2"] = lsat::ActionNode{"a", "p1"};
    act.nodes["n3"] = lsat::ReleaseNode{"R1"};
    act.edges = {{"n1", "n2"}, {"n2", "n3"}};
    spec.activities["Act"] = std::move(act);
    spec.dispatch = lsat::DispatchingSequence{{{"Act"}}, {}};
    return spec;
}

}  // namespace fixtures
