/* semantics.hpp -- exact execution semantics for TFSMs with output delays
 *
 * Guards constrain the offset of each input relative to the previous one
 * (t0 = 0); the output of step k is emitted at t_k + d_k, so outputs of
 * consecutive inputs may overlap or collide in time. A timed output response
 * is the set of time-ordered interleavings of those outputs; it is
 * represented canonically as groups of simultaneous outputs sorted by
 * timestamp, a complete invariant for the whole permutation set.
 *
 * Undefined behaviour (an input with no enabled transition) is the value
 * nullopt, never an error: it is absorbing along a sequence.
 */
#pragma once

#include "core.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace tfsm {

struct TimedInput {
    InputId input = 0;
    Rational at;

    friend bool operator==(const TimedInput&, const TimedInput&) = default;
};

// Timestamps are non-decreasing.
using TimedInputSeq = std::vector<TimedInput>;

inline void validate_sequence(const Tfsm& m, const TimedInputSeq& seq) {
    Rational prev(0);
    for (const auto& ti : seq) {
        detail::check_id(ti.input, m.inputs.size(), "input", m.name);
        if (ti.at.is_negative())
            throw contract_error(m.name + ": negative timestamp in timed input sequence");
        if (ti.at < prev)
            throw contract_error(m.name + ": timestamps must be non-decreasing");
        prev = ti.at;
    }
}

struct RunStep {
    InputId input = 0;
    Rational input_time;
    OutputId output = 0;
    Rational output_time; // input_time + delay, exactly
    StateId next = 0;
    std::size_t transition = 0; // index into Tfsm::transitions

    friend bool operator==(const RunStep&, const RunStep&) = default;
};

struct Run {
    StateId start = 0;
    std::vector<RunStep> steps;

    StateId final_state() const { return steps.empty() ? start : steps.back().next; }

    friend bool operator==(const Run&, const Run&) = default;
};

struct TimedOutputWord {
    struct Group {
        Rational at;
        std::vector<OutputId> outputs; // sorted multiset

        friend bool operator==(const Group&, const Group&) = default;
    };

    std::vector<Group> groups; // strictly increasing timestamps

    std::size_t total_outputs() const {
        std::size_t n = 0;
        for (const auto& g : groups) n += g.outputs.size();
        return n;
    }

    friend bool operator==(const TimedOutputWord&, const TimedOutputWord&) = default;
};

// The transition enabled at state s for input i applied `offset` after the
// previous input. Deterministic machines have at most one; ties (which only
// non-deterministic machines can produce) resolve to declaration order.
inline std::optional<std::size_t> find_transition(const Tfsm& m, StateId s, InputId i,
                                                  const Rational& offset) {
    for (std::size_t k = 0; k < m.transitions.size(); ++k) {
        const auto& t = m.transitions[k];
        if (t.src == s && t.input == i && t.guard.contains(offset)) return k;
    }
    return std::nullopt;
}

inline std::optional<Run> induce_run(const Tfsm& m, StateId start, const TimedInputSeq& seq) {
    Run run{start, {}};
    StateId current = start;
    Rational previous(0);
    for (const auto& ti : seq) {
        auto tr = find_transition(m, current, ti.input, ti.at - previous);
        if (!tr) return std::nullopt;
        const auto& t = m.transitions[*tr];
        run.steps.push_back(RunStep{ti.input, ti.at, t.output, ti.at + Rational(t.delay), t.dst, *tr});
        current = t.dst;
        previous = ti.at;
    }
    return run;
}

inline std::optional<StateId> next_state_seq(const Tfsm& m, StateId start, const TimedInputSeq& seq) {
    StateId current = start;
    Rational previous(0);
    for (const auto& ti : seq) {
        auto tr = find_transition(m, current, ti.input, ti.at - previous);
        if (!tr) return std::nullopt;
        current = m.transitions[*tr].dst;
        previous = ti.at;
    }
    return current;
}

inline TimedOutputWord group_outputs(const Run& run) {
    std::vector<std::pair<Rational, OutputId>> emitted;
    emitted.reserve(run.steps.size());
    for (const auto& step : run.steps) emitted.emplace_back(step.output_time, step.output);
    std::sort(emitted.begin(), emitted.end(), [](const auto& a, const auto& b) {
        return a.first < b.first || (a.first == b.first && a.second < b.second);
    });
    TimedOutputWord word;
    for (const auto& [at, output] : emitted) {
        if (word.groups.empty() || word.groups.back().at != at)
            word.groups.push_back(TimedOutputWord::Group{at, {}});
        word.groups.back().outputs.push_back(output);
    }
    return word;
}

inline std::optional<TimedOutputWord> timed_out(const Tfsm& m, StateId start,
                                                const TimedInputSeq& seq) {
    auto run = induce_run(m, start, seq);
    if (!run) return std::nullopt;
    return group_outputs(*run);
}

// True iff no two timestamps differ by a natural number; difference 0 (equal
// timestamps) counts as integer, so repeated timestamps are excluded too.
inline bool is_non_integer(const TimedInputSeq& seq) {
    for (std::size_t a = 0; a < seq.size(); ++a)
        for (std::size_t b = a + 1; b < seq.size(); ++b)
            if ((seq[b].at - seq[a].at).is_integer()) return false;
    return true;
}

inline bool is_merging(const Tfsm& m, StateId s1, StateId s2, const TimedInputSeq& seq) {
    auto a = next_state_seq(m, s1, seq);
    auto b = next_state_seq(m, s2, seq);
    return a && b && *a == *b;
}

inline bool is_synchronizing(const Tfsm& m, const TimedInputSeq& seq) {
    if (m.state_count() == 0) return true;
    auto target = next_state_seq(m, 0, seq);
    if (!target) return false;
    for (StateId s = 1; s < m.state_count(); ++s) {
        auto r = next_state_seq(m, s, seq);
        if (!r || *r != *target) return false;
    }
    return true;
}

// Homing: equal timed output responses imply an equal, defined final state.
// Candidacy is strict: the sequence must be enabled at every state, so a
// single undefined run makes the sequence non-homing (not an error).
inline bool is_homing(const Tfsm& m, const TimedInputSeq& seq) {
    std::vector<TimedOutputWord> words;
    std::vector<StateId> finals;
    words.reserve(m.state_count());
    for (StateId s = 0; s < m.state_count(); ++s) {
        auto run = induce_run(m, s, seq);
        if (!run) return false;
        words.push_back(group_outputs(*run));
        finals.push_back(run->final_state());
    }
    for (StateId a = 0; a < m.state_count(); ++a)
        for (StateId b = a + 1; b < m.state_count(); ++b)
            if (words[a] == words[b] && finals[a] != finals[b]) return false;
    return true;
}

// Equivalence ~_S: both sequences select the identical transition sequence
// from every state (or both leave the domain at the same step after an
// identical prefix).
inline bool sequences_equivalent(const Tfsm& m, const TimedInputSeq& a, const TimedInputSeq& b) {
    if (a.size() != b.size())
        throw contract_error(m.name + ": sequences_equivalent requires equal lengths");
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k].input != b[k].input)
            throw contract_error(m.name + ": sequences_equivalent requires equal input projections");

    for (StateId s = 0; s < m.state_count(); ++s) {
        StateId sa = s, sb = s;
        Rational prev_a(0), prev_b(0);
        for (std::size_t k = 0; k < a.size(); ++k) {
            auto ta = find_transition(m, sa, a[k].input, a[k].at - prev_a);
            auto tb = find_transition(m, sb, b[k].input, b[k].at - prev_b);
            if (ta.has_value() != tb.has_value()) return false;
            if (!ta) break; // both undefined at step k with identical prefix
            if (*ta != *tb) return false;
            sa = m.transitions[*ta].dst;
            sb = m.transitions[*tb].dst;
            prev_a = a[k].at;
            prev_b = b[k].at;
        }
    }
    return true;
}

} // namespace tfsm
