#include <doctest.h>

#include <tfsm/region.hpp>
#include <tfsm/successor_tree.hpp>

#include "support/corpus.hpp"
#include "support/generators.hpp"
#include "support/seq.hpp"

using namespace tfsm;
using support::st;
using support::ts;

namespace {

StateBlocks blocks(std::initializer_list<std::vector<StateId>> bs) {
    StateBlocks label(bs);
    detail::canonicalize_blocks(label);
    return label;
}

} // namespace

TEST_CASE("block_successor splits by the emitted timed output") {
    auto m = corpus::s2();
    auto next = block_successor(m, blocks({{0, 1, 2}}), *m.find_input("i1"), Rational(21, 10));
    REQUIRE(next.has_value());
    CHECK(*next == blocks({{1}, {0, 1}}));
}

TEST_CASE("block_successor keeps unsplit sets together") {
    auto m = corpus::s2();
    auto next = block_successor(m, blocks({{0, 1, 2}}), *m.find_input("i2"), Rational(21, 10));
    REQUIRE(next.has_value());
    CHECK(*next == blocks({{0, 1, 2}}));
}

TEST_CASE("block_successor maps singletons to singletons") {
    auto m = corpus::s2();
    auto next = block_successor(m, blocks({{2}}), *m.find_input("i1"), Rational(21, 10));
    REQUIRE(next.has_value());
    CHECK(*next == blocks({{1}}));
}

TEST_CASE("block_successor is undefined outside the common domain") {
    auto m = corpus::s2();
    CHECK_FALSE(block_successor(m, blocks({{0, 1, 2}}), *m.find_input("i1"), Rational(1, 2))
                    .has_value());
}

TEST_CASE("derive_shortest finds the worked homing sequence for S2") {
    auto m = corpus::s2();
    auto seq = derive_shortest(m, Goal::homing);
    REQUIRE(seq.has_value());
    CHECK(*seq == ts(m, {{"i1", "21/10"}, {"i2", "42/10"}, {"i1", "63/10"}}));
    CHECK(is_homing(m, *seq));
}

TEST_CASE("derive_shortest finds the same sequence as a synchronizing one for S2") {
    auto m = corpus::s2();
    auto seq = derive_shortest(m, Goal::synchronizing);
    REQUIRE(seq.has_value());
    CHECK(*seq == ts(m, {{"i1", "21/10"}, {"i2", "42/10"}, {"i1", "63/10"}}));
    CHECK(is_synchronizing(m, *seq));
}

TEST_CASE("derive_shortest on a single-state machine returns the empty sequence") {
    Tfsm m;
    m.name = "One";
    m.states = {"s0"};
    m.inputs = {"i1"};
    m.outputs = {"o1"};
    m.transitions = {{0, 0, TimedGuard::half_open(1, 2), 0, 1, 0}};
    auto hs = derive_shortest(m, Goal::homing);
    REQUIRE(hs.has_value());
    CHECK(hs->empty());
    auto ss = derive_shortest(m, Goal::synchronizing);
    REQUIRE(ss.has_value());
    CHECK(ss->empty());
}

TEST_CASE("derive_shortest enforces the machine class") {
    CHECK_THROWS_AS(derive_shortest(corpus::b4(), Goal::homing), unsupported_class_error);
    auto partial = corpus::s3();
    partial.transitions.pop_back();
    CHECK_THROWS_AS(derive_shortest(partial, Goal::homing), unsupported_class_error);
}

TEST_CASE("derive_shortest validates theta") {
    auto m = corpus::s2();
    auto cfg = TreeConfig::defaults(m, Goal::homing);
    cfg.theta = Rational(1, 2); // 1/2 > 1/9
    CHECK_THROWS_AS(derive_shortest(m, Goal::homing, cfg), contract_error);
}

TEST_CASE("the default theta keeps every tree path non-integer") {
    auto m = corpus::s1();
    auto seq = derive_shortest(m, Goal::synchronizing);
    REQUIRE(seq.has_value());
    CHECK(is_non_integer(*seq));
}

TEST_CASE("tree trace records rule-2 pruning") {
    auto m = corpus::s2();
    TreeTrace trace;
    auto seq = derive_shortest(m, Goal::homing, TreeConfig::defaults(m, Goal::homing), &trace);
    REQUIRE(seq.has_value());
    bool any_rule2 = false, any_rule1 = false;
    for (const auto& node : trace.nodes) {
        any_rule2 |= node.status == TreeTrace::Node::Status::rule2;
        any_rule1 |= node.status == TreeTrace::Node::Status::rule1;
    }
    CHECK(any_rule2);
    CHECK(any_rule1);
}

TEST_CASE("property: tree and region pipeline agree on existence and length") {
    gen::Rng rng(79);
    int some = 0, none = 0;
    for (int k = 0; k < 150; ++k) {
        auto m = gen::random_half_open(rng);
        auto via_tree = derive_shortest(m, Goal::homing);
        auto via_region = derive_via_region(m, Goal::homing);
        CHECK(via_tree.has_value() == via_region.has_value());
        if (via_tree && via_region) {
            CHECK(via_tree->size() == via_region->size());
            ++some;
        } else {
            ++none;
        }
    }
    CHECK(some > 0);
}

TEST_CASE("property: tree sequences pass the semantic predicates") {
    gen::Rng rng(83);
    for (int k = 0; k < 100; ++k) {
        auto m = gen::random_half_open(rng);
        for (Goal goal : {Goal::homing, Goal::synchronizing}) {
            auto seq = derive_shortest(m, goal);
            if (!seq) continue;
            CHECK((goal == Goal::homing ? is_homing(m, *seq) : is_synchronizing(m, *seq)));
            CHECK(is_non_integer(*seq));
        }
    }
}
