// Machines from the bundled corpus, constructed directly so the unit tests do
// not depend on the parser. tests/test_format.cpp ties these to machines/*.
#pragma once

#include <tfsm/core.hpp>

namespace corpus {

using namespace tfsm;

inline Tfsm s1() {
    Tfsm m;
    m.name = "S1";
    m.states = {"s0", "s1", "s2"};
    m.inputs = {"i1", "i2"};
    m.outputs = {"o1", "o2", "o3"};
    auto ho = [](long long lo, long long hi) { return TimedGuard::half_open(lo, hi); };
    m.transitions = {
        {0, 0, ho(1, 3), 0, 4, 1}, // s0 -i1,[1,3)/o1,4-> s1
        {0, 1, ho(1, 3), 2, 1, 0}, // s0 -i2,[1,3)/o3,1-> s0
        {0, 1, ho(3, 6), 0, 4, 0}, // s0 -i2,[3,6)/o1,4-> s0
        {1, 0, ho(1, 3), 1, 3, 2}, // s1 -i1,[1,3)/o2,3-> s2
        {1, 1, ho(1, 3), 1, 1, 0}, // s1 -i2,[1,3)/o2,1-> s0
        {1, 1, ho(3, 4), 1, 1, 1}, // s1 -i2,[3,4)/o2,1-> s1
        {1, 1, ho(4, 6), 1, 1, 0}, // s1 -i2,[4,6)/o2,1-> s0
        {2, 0, ho(1, 3), 2, 1, 2}, // s2 -i1,[1,3)/o3,1-> s2
        {2, 1, ho(1, 3), 0, 2, 1}, // s2 -i2,[1,3)/o1,2-> s1
        {2, 1, ho(3, 5), 2, 3, 2}, // s2 -i2,[3,5)/o3,3-> s2
        {2, 1, ho(5, 6), 0, 2, 1}, // s2 -i2,[5,6)/o1,2-> s1
    };
    return m;
}

inline Tfsm s2() {
    Tfsm m;
    m.name = "S2";
    m.states = {"s0", "s1", "s2"};
    m.inputs = {"i1", "i2"};
    m.outputs = {"o1", "o2"};
    auto ho = [](long long lo, long long hi) { return TimedGuard::half_open(lo, hi); };
    m.transitions = {
        {0, 0, ho(2, 3), 1, 1, 0}, {0, 1, ho(2, 4), 1, 1, 1}, {1, 0, ho(2, 3), 1, 1, 1},
        {1, 1, ho(2, 4), 1, 1, 2}, {2, 0, ho(2, 3), 0, 2, 1}, {2, 1, ho(2, 4), 1, 1, 0},
    };
    return m;
}

inline Tfsm s3() {
    Tfsm m;
    m.name = "S3";
    m.states = {"s0", "s1", "s2", "s3"};
    m.inputs = {"i1", "i2"};
    m.outputs = {"o1", "o2"};
    auto g = TimedGuard::half_open(1, 2);
    m.transitions = {
        {0, 0, g, 0, 5, 1}, {0, 1, g, 1, 1, 0}, {1, 0, g, 0, 1, 0}, {1, 1, g, 1, 1, 1},
        {2, 0, g, 0, 5, 3}, {2, 1, g, 1, 1, 0}, {3, 0, g, 0, 1, 2}, {3, 1, g, 1, 1, 1},
    };
    return m;
}

inline Tfsm s4() {
    Tfsm m;
    m.name = "S4";
    m.states = {"s0", "s1", "s2", "s3"};
    m.inputs = {"i1", "i2"};
    m.outputs = {"o1", "o2"};
    auto ho = [](long long lo, long long hi) { return TimedGuard::half_open(lo, hi); };
    m.transitions = {
        {0, 0, ho(0, 2), 0, 3, 2}, {0, 1, ho(1, 3), 0, 1, 0}, {1, 0, ho(0, 2), 0, 3, 3},
        {1, 1, ho(1, 3), 0, 1, 0}, {2, 0, ho(0, 1), 0, 3, 0}, {2, 0, ho(1, 2), 1, 4, 0},
        {2, 1, ho(1, 3), 1, 2, 3}, {3, 0, ho(0, 2), 1, 4, 1}, {3, 1, ho(1, 3), 1, 2, 3},
    };
    return m;
}

inline Tfsm b4() {
    Tfsm m;
    m.name = "B4";
    m.states = {"s0", "s1", "s2", "s3"};
    m.inputs = {"i1"};
    m.outputs = {"o1"};
    auto p = TimedGuard::point(1);
    m.transitions = {
        {0, 0, p, 0, 2, 1},
        {1, 0, p, 0, 2, 2},
        {2, 0, p, 0, 3, 3},
        {3, 0, p, 0, 1, 0},
    };
    return m;
}

inline Fsm m1() {
    Fsm m;
    m.name = "M1";
    m.states = {"s0", "s1", "s2"};
    m.inputs = {"i1", "i2"};
    m.outputs = {"o1", "o2", "o3"};
    m.transitions = {
        {0, 0, 0, 1}, {0, 1, 2, 0}, {0, 1, 0, 0}, {1, 0, 1, 2}, {1, 1, 1, 0},
        {1, 1, 1, 1}, {2, 0, 2, 2}, {2, 1, 0, 1}, {2, 1, 2, 2},
    };
    return m;
}

inline Fsm m3() {
    Fsm m;
    m.name = "M3";
    m.states = {"s0", "s1", "s2", "s3"};
    m.inputs = {"i1", "i2"};
    m.outputs = {"o1", "o2"};
    m.transitions = {
        {0, 0, 0, 1}, {0, 1, 1, 0}, {1, 0, 0, 0}, {1, 1, 1, 1},
        {2, 0, 0, 3}, {2, 1, 1, 0}, {3, 0, 0, 2}, {3, 1, 1, 1},
    };
    return m;
}

} // namespace corpus
