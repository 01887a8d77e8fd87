/* core.hpp -- machine data model and structural classification
 *
 * A TFSM with output delays is (S, I, O, G, D, h_S): every transition carries
 * a timed guard constraining the relative arrival time of its input and an
 * integer delay after which its output is emitted. Plain FSMs and partial
 * finite automata (PFAs) share the id scheme: states/inputs/outputs are
 * indices into the declaration-ordered name tables, and all iteration and
 * tie-breaking follows declaration order.
 */
#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tfsm {

using StateId = std::size_t;
using InputId = std::size_t;
using OutputId = std::size_t;

struct tfsm_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Machine references an id that was never declared, or violates a basic
// well-formedness rule (guard bounds, delay range, ...).
struct structural_error : tfsm_error {
    using tfsm_error::tfsm_error;
};

// Operation applied to a machine outside the class it is defined for.
struct unsupported_class_error : tfsm_error {
    using tfsm_error::tfsm_error;
};

// Caller violated an operation precondition.
struct contract_error : tfsm_error {
    using tfsm_error::tfsm_error;
};

// A result contradicts an invariant the algorithms guarantee.
struct internal_error : tfsm_error {
    using tfsm_error::tfsm_error;
};

// Configurable search budget ran out before the search concluded.
struct budget_error : tfsm_error {
    using tfsm_error::tfsm_error;
};

// Node/depth counters reported by the search algorithms.
struct SearchStats {
    std::size_t nodes = 0;
    std::size_t depth = 0;
};

enum class GuardKind { half_open, point };

// [lo,hi) with 0 <= lo < hi, or the point interval [u,u] with u >= 1.
struct TimedGuard {
    long long lo = 0;
    long long hi = 0;
    GuardKind kind = GuardKind::half_open;

    static TimedGuard half_open(long long lo, long long hi) {
        if (lo < 0 || lo >= hi)
            throw structural_error("guard [" + std::to_string(lo) + "," + std::to_string(hi) +
                                   ") requires 0 <= lo < hi");
        return TimedGuard{lo, hi, GuardKind::half_open};
    }

    static TimedGuard point(long long u) {
        if (u < 1)
            throw structural_error("point guard [" + std::to_string(u) + "," + std::to_string(u) +
                                   "] requires u >= 1");
        return TimedGuard{u, u, GuardKind::point};
    }

    bool contains(const Rational& t) const {
        if (kind == GuardKind::point) return t == Rational(lo);
        return Rational(lo) <= t && t < Rational(hi);
    }

    bool overlaps(const TimedGuard& other) const {
        if (kind == GuardKind::point && other.kind == GuardKind::point) return lo == other.lo;
        if (kind == GuardKind::point) return other.contains(Rational(lo));
        if (other.kind == GuardKind::point) return contains(Rational(other.lo));
        return lo < other.hi && other.lo < hi;
    }

    std::string str() const {
        if (kind == GuardKind::point)
            return "[" + std::to_string(lo) + "," + std::to_string(lo) + "]";
        return "[" + std::to_string(lo) + "," + std::to_string(hi) + ")";
    }

    friend bool operator==(const TimedGuard&, const TimedGuard&) = default;
    friend auto operator<=>(const TimedGuard&, const TimedGuard&) = default;
};

inline bool guard_contains(const TimedGuard& g, const Rational& t) { return g.contains(t); }

struct TfsmTransition {
    StateId src = 0;
    InputId input = 0;
    TimedGuard guard;
    OutputId output = 0;
    long long delay = 1;
    StateId dst = 0;

    friend bool operator==(const TfsmTransition&, const TfsmTransition&) = default;
};

namespace detail {

inline std::optional<std::size_t> find_name(const std::vector<std::string>& names,
                                            std::string_view name) {
    for (std::size_t k = 0; k < names.size(); ++k)
        if (names[k] == name) return k;
    return std::nullopt;
}

inline void check_id(std::size_t id, std::size_t limit, const char* what,
                     const std::string& machine) {
    if (id >= limit)
        throw structural_error(machine + ": undeclared " + what + " id #" + std::to_string(id));
}

} // namespace detail

struct Tfsm {
    std::string name;
    std::vector<std::string> states;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<TfsmTransition> transitions;

    std::size_t state_count() const { return states.size(); }
    std::optional<StateId> find_state(std::string_view n) const { return detail::find_name(states, n); }
    std::optional<InputId> find_input(std::string_view n) const { return detail::find_name(inputs, n); }
    std::optional<OutputId> find_output(std::string_view n) const { return detail::find_name(outputs, n); }

    void validate() const {
        for (const auto& t : transitions) {
            detail::check_id(t.src, states.size(), "state", name);
            detail::check_id(t.dst, states.size(), "state", name);
            detail::check_id(t.input, inputs.size(), "input", name);
            detail::check_id(t.output, outputs.size(), "output", name);
            if (t.delay < 1)
                throw structural_error(name + ": delay must be a positive integer");
        }
    }

    friend bool operator==(const Tfsm&, const Tfsm&) = default;
};

struct FsmTransition {
    StateId src = 0;
    InputId input = 0;
    OutputId output = 0;
    StateId dst = 0;

    friend bool operator==(const FsmTransition&, const FsmTransition&) = default;
    friend auto operator<=>(const FsmTransition&, const FsmTransition&) = default;
};

struct Fsm {
    std::string name;
    std::vector<std::string> states;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<FsmTransition> transitions;

    std::size_t state_count() const { return states.size(); }
    std::optional<StateId> find_state(std::string_view n) const { return detail::find_name(states, n); }
    std::optional<InputId> find_input(std::string_view n) const { return detail::find_name(inputs, n); }
    std::optional<OutputId> find_output(std::string_view n) const { return detail::find_name(outputs, n); }

    void validate() const {
        for (const auto& t : transitions) {
            detail::check_id(t.src, states.size(), "state", name);
            detail::check_id(t.dst, states.size(), "state", name);
            detail::check_id(t.input, inputs.size(), "input", name);
            detail::check_id(t.output, outputs.size(), "output", name);
        }
    }

    friend bool operator==(const Fsm&, const Fsm&) = default;
};

struct PfaTransition {
    StateId src = 0;
    InputId letter = 0;
    StateId dst = 0;

    friend bool operator==(const PfaTransition&, const PfaTransition&) = default;
};

// Deterministic, possibly partial finite automaton.
struct Pfa {
    std::string name;
    std::vector<std::string> states;
    std::vector<std::string> letters;
    std::vector<PfaTransition> transitions;

    std::size_t state_count() const { return states.size(); }
    std::optional<StateId> find_state(std::string_view n) const { return detail::find_name(states, n); }
    std::optional<InputId> find_letter(std::string_view n) const { return detail::find_name(letters, n); }

    void validate() const {
        std::set<std::pair<StateId, InputId>> seen;
        for (const auto& t : transitions) {
            detail::check_id(t.src, states.size(), "state", name);
            detail::check_id(t.dst, states.size(), "state", name);
            detail::check_id(t.letter, letters.size(), "letter", name);
            if (!seen.emplace(t.src, t.letter).second)
                throw structural_error(name + ": duplicate transition on (" + states[t.src] + ", " +
                                       letters[t.letter] + ")");
        }
    }

    std::optional<StateId> target(StateId s, InputId a) const {
        for (const auto& t : transitions)
            if (t.src == s && t.letter == a) return t.dst;
        return std::nullopt;
    }

    friend bool operator==(const Pfa&, const Pfa&) = default;
};

struct ClassReport {
    bool deterministic = true;
    bool weakly_complete = true;
    bool point_interval = true;
    bool half_open_only = true;
    // Minimal left / maximal right guard boundary per input with transitions.
    std::map<InputId, std::pair<long long, long long>> per_input_bounds;

    friend bool operator==(const ClassReport&, const ClassReport&) = default;
};

namespace detail {

// Canonical form of a union of integer-endpoint guards, viewed as a point
// set: [u,v) decomposes into unit cells [k,k+1); a point guard contributes an
// isolated point unless a cell already covers it. Two guard unions are equal
// as point sets iff their canonical forms are equal, which also makes merged
// adjacent intervals ([1,3) u [3,4) = [1,4)) compare equal.
struct GuardUnion {
    std::set<long long> cells;
    std::set<long long> points;

    void add(const TimedGuard& g) {
        if (g.kind == GuardKind::point) {
            points.insert(g.lo);
        } else {
            for (long long k = g.lo; k < g.hi; ++k) cells.insert(k);
        }
    }

    void canonicalize() {
        for (auto it = points.begin(); it != points.end();)
            it = cells.count(*it) ? points.erase(it) : std::next(it);
    }

    friend bool operator==(const GuardUnion&, const GuardUnion&) = default;
};

} // namespace detail

inline ClassReport classify(const Tfsm& m) {
    m.validate();
    ClassReport report;

    for (const auto& t : m.transitions) {
        if (t.guard.kind == GuardKind::point)
            report.half_open_only = false;
        else
            report.point_interval = false;

        auto [it, inserted] = report.per_input_bounds.try_emplace(
            t.input, std::pair<long long, long long>{t.guard.lo, t.guard.hi});
        if (!inserted) {
            it->second.first = std::min(it->second.first, t.guard.lo);
            it->second.second = std::max(it->second.second, t.guard.hi);
        }
    }

    // Deterministic: guards of any two transitions sharing (src, input) are disjoint.
    for (std::size_t a = 0; a < m.transitions.size() && report.deterministic; ++a) {
        for (std::size_t b = a + 1; b < m.transitions.size(); ++b) {
            const auto& ta = m.transitions[a];
            const auto& tb = m.transitions[b];
            if (ta.src == tb.src && ta.input == tb.input && ta.guard.overlaps(tb.guard)) {
                report.deterministic = false;
                break;
            }
        }
    }

    // Weakly-complete: for every input, the guard union at every state is the
    // same point set.
    for (InputId i = 0; i < m.inputs.size() && report.weakly_complete; ++i) {
        std::vector<detail::GuardUnion> unions(m.state_count());
        for (const auto& t : m.transitions)
            if (t.input == i) unions[t.src].add(t.guard);
        for (auto& u : unions) u.canonicalize();
        for (StateId s = 1; s < m.state_count(); ++s) {
            if (!(unions[s] == unions[0])) {
                report.weakly_complete = false;
                break;
            }
        }
    }

    return report;
}

struct FsmClassReport {
    bool deterministic = true;
    bool observable = true;
    bool complete = true;

    friend bool operator==(const FsmClassReport&, const FsmClassReport&) = default;
};

inline FsmClassReport fsm_classify(const Fsm& m) {
    m.validate();
    FsmClassReport report;

    // The transition relation is a set of tuples; duplicates do not count.
    std::set<FsmTransition> relation(m.transitions.begin(), m.transitions.end());

    std::set<std::pair<StateId, InputId>> defined;
    for (const auto& t : relation) {
        defined.emplace(t.src, t.input);
        for (const auto& u : relation) {
            if (&t == &u || t.src != u.src || t.input != u.input) continue;
            if (t.output != u.output || t.dst != u.dst) report.deterministic = false;
            if (t.output == u.output && t.dst != u.dst) report.observable = false;
        }
    }
    report.complete = defined.size() == m.state_count() * m.inputs.size();
    return report;
}

} // namespace tfsm
