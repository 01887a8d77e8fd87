#include <doctest.h>

#include <tfsm/format.hpp>

#include "support/corpus.hpp"
#include "support/generators.hpp"

#include <filesystem>
#include <fstream>

using namespace tfsm;

namespace {

std::string read_file(const std::string& name) {
    std::ifstream in(std::string(TFSM_MACHINES_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("parse the bundled S1 description") {
    auto doc = parse_machine(read_file("S1.tfsm"));
    REQUIRE(doc.kind == MachineDocument::Kind::tfsm);
    const auto& m = std::get<Tfsm>(doc.machine);
    CHECK(m.transitions.size() == 11);
    CHECK(m == corpus::s1());
}

TEST_CASE("bundled machines match the in-code corpus") {
    CHECK(std::get<Tfsm>(parse_machine(read_file("S2.tfsm")).machine) == corpus::s2());
    CHECK(std::get<Tfsm>(parse_machine(read_file("S3.tfsm")).machine) == corpus::s3());
    CHECK(std::get<Tfsm>(parse_machine(read_file("S4.tfsm")).machine) == corpus::s4());
    CHECK(std::get<Tfsm>(parse_machine(read_file("B4.tfsm")).machine) == corpus::b4());
    CHECK(std::get<Fsm>(parse_machine(read_file("M1.fsm")).machine) == corpus::m1());
    CHECK(std::get<Fsm>(parse_machine(read_file("M3.fsm")).machine) == corpus::m3());
}

TEST_CASE("parse -> serialize -> parse is the identity on the corpus") {
    for (const char* name :
         {"S1.tfsm", "S2.tfsm", "S3.tfsm", "S4.tfsm", "B4.tfsm", "M1.fsm", "M3.fsm", "A1.pfa"}) {
        auto doc = parse_machine(read_file(name));
        auto again = parse_machine(serialize(doc));
        CHECK(doc == again);
        CHECK(serialize(doc) == serialize(again));
    }
}

TEST_CASE("point guards and comments parse") {
    auto doc = parse_machine("tfsm T\n"
                             "states s0\n"
                             "inputs i1 i2\n"
                             "outputs o1\n"
                             "trans s0 i1 [1,3) o1 4 s0\n"
                             "trans s0 i2 [1,1] o1 2 s0   # point guard\n");
    const auto& m = std::get<Tfsm>(doc.machine);
    REQUIRE(m.transitions.size() == 2);
    CHECK(m.transitions[0].guard == TimedGuard::half_open(1, 3));
    CHECK(m.transitions[1].guard == TimedGuard::point(1));
}

TEST_CASE("a header-only tfsm is valid and vacuously weakly-complete") {
    auto doc = parse_machine("tfsm Empty\nstates s0\ninputs i1\noutputs o1\n");
    const auto& m = std::get<Tfsm>(doc.machine);
    CHECK(m.transitions.empty());
    auto report = classify(m);
    CHECK(report.deterministic);
    CHECK(report.weakly_complete);
}

TEST_CASE("guard bound errors carry positions") {
    try {
        parse_machine("tfsm T\nstates s0\ninputs i1\noutputs o1\ntrans s0 i1 [3,1) o1 4 s0\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line == 5);
        CHECK(e.column == 13);
        CHECK(std::string(e.what()).find("lo < hi") != std::string::npos);
    }
}

TEST_CASE("undeclared ids are named") {
    try {
        parse_machine("tfsm T\nstates s0\ninputs i1\noutputs o1\ntrans s0 i9 [1,2) o1 1 s0\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("undeclared input 'i9'") != std::string::npos);
    }
}

TEST_CASE("malformed documents fail with positioned errors") {
    CHECK_THROWS_AS(parse_machine(""), parse_error);
    CHECK_THROWS_AS(parse_machine("widget W\n"), parse_error);
    CHECK_THROWS_AS(parse_machine("tfsm T\nstates s0\ninputs i1\n"), parse_error); // no outputs
    CHECK_THROWS_AS(parse_machine("tfsm T\nstates s0 s0\ninputs i1\noutputs o1\n"), parse_error);
    CHECK_THROWS_AS(
        parse_machine("tfsm T\nstates s0\ninputs i1\noutputs o1\ntrans s0 i1 [1,2) o1 s0\n"),
        parse_error); // missing delay column
    CHECK_THROWS_AS(
        parse_machine("tfsm T\nstates s0\ninputs i1\noutputs o1\ntrans s0 i1 [1,2] o1 1 s0\n"),
        parse_error); // closed non-point guard
    CHECK_THROWS_AS(
        parse_machine("tfsm T\nstates s0\ninputs i1\noutputs o1\ntrans s0 i1 [1,2) o1 0 s0\n"),
        parse_error); // zero delay
    CHECK_THROWS_AS(parse_machine("pfa P\nstates q0\ninputs a\noutputs o1\n"), parse_error);
    CHECK_THROWS_AS(parse_machine("pfa P\nstates q0\ninputs a\ntrans q0 a q0\ntrans q0 a q0\n"),
                    parse_error); // non-deterministic pfa
}

TEST_CASE("property: serialize/parse round-trips random machines") {
    gen::Rng rng(107);
    for (int k = 0; k < 60; ++k) {
        MachineDocument doc;
        doc.kind = MachineDocument::Kind::tfsm;
        doc.machine = (k % 2 == 0) ? gen::random_half_open(rng) : gen::random_point(rng, false);
        auto again = parse_machine(serialize(doc));
        CHECK(doc == again);
        CHECK(serialize(again) == serialize(doc));
    }
}

TEST_CASE("timed sequence arguments") {
    auto m = corpus::s2();
    auto seq = parse_timed_seq(m, "i1@21/10,i2@4.2,i1@63/10");
    REQUIRE(seq.size() == 3);
    CHECK(seq[0].at == Rational(21, 10));
    CHECK(seq[1].at == Rational(21, 5));
    CHECK(seq[2].at == Rational(63, 10));

    CHECK_THROWS_AS(parse_timed_seq(m, "i9@1"), contract_error);
    CHECK_THROWS_AS(parse_timed_seq(m, "i1-1"), contract_error);
    CHECK_THROWS_AS(parse_timed_seq(m, "i1@2,i2@1"), contract_error);  // decreasing
    CHECK_THROWS_AS(parse_timed_seq(m, "i1@-1"), contract_error);      // negative
}
