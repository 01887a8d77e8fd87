// Terse timed-sequence literals for tests: ts(m, {{"i1", "2"}, {"i2", "4"}}).
#pragma once

#include <tfsm/core.hpp>
#include <tfsm/semantics.hpp>

#include <initializer_list>
#include <string>
#include <utility>

namespace support {

inline tfsm::TimedInputSeq ts(const tfsm::Tfsm& m,
                              std::initializer_list<std::pair<const char*, const char*>> items) {
    tfsm::TimedInputSeq seq;
    for (const auto& [input, at] : items) {
        auto id = m.find_input(input);
        REQUIRE(id.has_value());
        seq.push_back(tfsm::TimedInput{*id, tfsm::Rational::parse(at)});
    }
    return seq;
}

inline tfsm::StateId st(const tfsm::Tfsm& m, const char* name) {
    auto id = m.find_state(name);
    REQUIRE(id.has_value());
    return *id;
}

} // namespace support
