#include <doctest.h>

#include <tfsm/core.hpp>

#include "support/corpus.hpp"
#include "support/generators.hpp"

using namespace tfsm;

TEST_CASE("guard membership") {
    auto g = TimedGuard::half_open(1, 3);
    CHECK(guard_contains(g, Rational(2)));
    CHECK(guard_contains(g, Rational(1)));
    CHECK_FALSE(guard_contains(g, Rational(3))); // right-open boundary
    CHECK_FALSE(guard_contains(g, Rational(21, 10) + Rational(9, 10)));

    auto p = TimedGuard::point(1);
    CHECK(guard_contains(p, Rational(1)));
    CHECK_FALSE(guard_contains(p, Rational(21, 10)));
    CHECK_FALSE(guard_contains(p, Rational(11, 10)));
}

TEST_CASE("guard construction rules") {
    CHECK_THROWS_AS(TimedGuard::half_open(3, 1), structural_error);
    CHECK_THROWS_AS(TimedGuard::half_open(2, 2), structural_error);
    CHECK_THROWS_AS(TimedGuard::half_open(-1, 2), structural_error);
    CHECK_THROWS_AS(TimedGuard::point(0), structural_error);
}

TEST_CASE("guard overlap") {
    CHECK(TimedGuard::half_open(1, 3).overlaps(TimedGuard::half_open(2, 4)));
    CHECK_FALSE(TimedGuard::half_open(1, 3).overlaps(TimedGuard::half_open(3, 4)));
    CHECK(TimedGuard::point(2).overlaps(TimedGuard::half_open(1, 3)));
    CHECK_FALSE(TimedGuard::point(3).overlaps(TimedGuard::half_open(1, 3)));
    CHECK(TimedGuard::point(2).overlaps(TimedGuard::point(2)));
    CHECK_FALSE(TimedGuard::point(2).overlaps(TimedGuard::point(3)));
}

TEST_CASE("classify S1: deterministic, weakly-complete, half-open") {
    auto report = classify(corpus::s1());
    CHECK(report.deterministic);
    CHECK(report.weakly_complete);
    CHECK(report.half_open_only);
    CHECK_FALSE(report.point_interval);
    CHECK(report.per_input_bounds.at(0) == std::pair<long long, long long>{1, 3});
    CHECK(report.per_input_bounds.at(1) == std::pair<long long, long long>{1, 6});
}

TEST_CASE("classify B4: point-interval, weakly-complete") {
    auto report = classify(corpus::b4());
    CHECK(report.point_interval);
    CHECK(report.weakly_complete);
    CHECK(report.deterministic);
    CHECK_FALSE(report.half_open_only);
}

TEST_CASE("classify trivial machine") {
    Tfsm m;
    m.name = "T";
    m.states = {"s0"};
    m.inputs = {"i1"};
    m.outputs = {"o1"};
    auto report = classify(m);
    CHECK(report.deterministic);
    CHECK(report.weakly_complete);
}

TEST_CASE("classify flags overlapping guards as non-deterministic") {
    auto m = corpus::s2();
    m.transitions.push_back(TfsmTransition{0, 0, TimedGuard::half_open(2, 5), 0, 1, 2});
    CHECK_FALSE(classify(m).deterministic);
}

TEST_CASE("classify detects unequal guard unions") {
    auto m = corpus::s3();
    m.transitions.pop_back(); // s3 loses its i2 transition
    CHECK_FALSE(classify(m).weakly_complete);
}

TEST_CASE("interval union comparison merges adjacent intervals") {
    // One state covers [1,4) with a single guard, the other with [1,3)+[3,4).
    Tfsm m;
    m.name = "U";
    m.states = {"a", "b"};
    m.inputs = {"i1"};
    m.outputs = {"o1"};
    m.transitions = {
        {0, 0, TimedGuard::half_open(1, 4), 0, 1, 0},
        {1, 0, TimedGuard::half_open(1, 3), 0, 1, 1},
        {1, 0, TimedGuard::half_open(3, 4), 0, 1, 0},
    };
    CHECK(classify(m).weakly_complete);
}

TEST_CASE("classify rejects undeclared ids") {
    auto m = corpus::s2();
    m.transitions.push_back(TfsmTransition{7, 0, TimedGuard::half_open(2, 3), 0, 1, 0});
    CHECK_THROWS_AS(classify(m), structural_error);

    auto m2 = corpus::s2();
    m2.transitions[0].output = 9;
    CHECK_THROWS_WITH_AS(classify(m2), "S2: undeclared output id #9", structural_error);
}

TEST_CASE("classify is pure") {
    auto m = corpus::s1();
    CHECK(classify(m) == classify(m));
}

TEST_CASE("weakly-complete guard unions agree across states on random machines") {
    gen::Rng rng(11);
    for (int k = 0; k < 100; ++k) {
        auto m = gen::random_half_open(rng);
        auto report = classify(m);
        CHECK(report.weakly_complete);
        CHECK(report.deterministic);
        CHECK(report.half_open_only);
    }
}

TEST_CASE("fsm_classify M1: complete, non-deterministic, non-observable") {
    auto report = fsm_classify(corpus::m1());
    CHECK(report.complete);
    CHECK_FALSE(report.deterministic);
    CHECK_FALSE(report.observable);
}

TEST_CASE("fsm_classify M3: deterministic and complete") {
    auto report = fsm_classify(corpus::m3());
    CHECK(report.deterministic);
    CHECK(report.complete);
    CHECK(report.observable);
}

TEST_CASE("fsm_classify single-state machine with self-loops") {
    Fsm m;
    m.name = "One";
    m.states = {"s0"};
    m.inputs = {"i1", "i2"};
    m.outputs = {"o1"};
    m.transitions = {{0, 0, 0, 0}, {0, 1, 0, 0}};
    auto report = fsm_classify(m);
    CHECK(report.deterministic);
    CHECK(report.observable);
    CHECK(report.complete);
}

TEST_CASE("fsm_classify treats duplicate tuples as one relation element") {
    Fsm m;
    m.name = "Dup";
    m.states = {"s0"};
    m.inputs = {"i1"};
    m.outputs = {"o1"};
    m.transitions = {{0, 0, 0, 0}, {0, 0, 0, 0}};
    CHECK(fsm_classify(m).deterministic);
}
