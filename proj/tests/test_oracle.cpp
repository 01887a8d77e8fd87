#include <doctest.h>

#include <tfsm/oracle.hpp>
#include <tfsm/point_interval.hpp>
#include <tfsm/region.hpp>
#include <tfsm/successor_tree.hpp>

#include "support/corpus.hpp"
#include "support/seq.hpp"

using namespace tfsm;
using support::ts;

TEST_CASE("oracle finds the same input word as the tree search on S2") {
    auto m = corpus::s2();
    auto seq = brute_force_derive(m, Goal::homing, 3);
    REQUIRE(seq.has_value());
    REQUIRE(seq->size() == 3);
    CHECK((*seq)[0].input == *m.find_input("i1"));
    CHECK((*seq)[1].input == *m.find_input("i2"));
    CHECK((*seq)[2].input == *m.find_input("i1"));
    CHECK(is_homing(m, *seq));
}

TEST_CASE("oracle: B4 has no homing sequence within 8 steps") {
    CHECK_FALSE(brute_force_derive(corpus::b4(), Goal::homing, 8).has_value());
}

TEST_CASE("oracle: the empty sequence synchronizes a single-state machine") {
    Tfsm m;
    m.name = "One";
    m.states = {"s0"};
    m.inputs = {"i1"};
    m.outputs = {"o1"};
    m.transitions = {{0, 0, TimedGuard::half_open(0, 1), 0, 1, 0}};
    auto seq = brute_force_derive(m, Goal::synchronizing, 0);
    REQUIRE(seq.has_value());
    CHECK(seq->empty());
}

TEST_CASE("oracle agrees with every derivation pipeline on the corpus") {
    for (const auto& m : {corpus::s1(), corpus::s2(), corpus::s3(), corpus::s4()}) {
        for (Goal goal : {Goal::homing, Goal::synchronizing}) {
            auto derived = derive_shortest(m, goal);
            auto via_region = derive_via_region(m, goal);
            CHECK(derived.has_value() == via_region.has_value());
            const std::size_t cap = derived ? derived->size() : 4;
            auto brute = brute_force_derive(m, goal, cap);
            CHECK(brute.has_value() == derived.has_value());
            if (brute && derived) {
                CHECK(brute->size() == derived->size());
                CHECK(via_region->size() == derived->size());
            }
        }
    }

    auto b4 = corpus::b4();
    CHECK_FALSE(derive_hs_point(b4).has_value());
    CHECK_FALSE(brute_force_derive(b4, Goal::homing, 8).has_value());
}
