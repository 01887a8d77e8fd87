/* region.hpp -- region FSM abstraction and the derivation pipeline built on it
 *
 * The region FSM R(S) refines each input's guard set into the intervals
 * between consecutive guard boundary points and relabels transitions with
 * abstract inputs (i, g) and outputs (o, d). For weakly-complete
 * deterministic machines R(S) is deterministic and complete and of
 * polynomial size, next states are preserved under the untimed projection,
 * and SS status transfers exactly; HS status transfers exactly along
 * non-integer timed sequences, which is what `lift` produces.
 */
#pragma once

#include "core.hpp"
#include "fsm_analysis.hpp"
#include "semantics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tfsm {

struct AbstractInput {
    InputId input = 0;
    TimedGuard guard;

    friend bool operator==(const AbstractInput&, const AbstractInput&) = default;
};

struct AbstractOutput {
    OutputId output = 0;
    long long delay = 1;

    friend bool operator==(const AbstractOutput&, const AbstractOutput&) = default;
};

// A word over abstract inputs; each entry's guard belongs to the refined
// guard set of its input.
using AbstractWord = std::vector<AbstractInput>;

struct RegionFsm {
    Fsm fsm; // states shared with the source; inputs/outputs carry the abstract labels
    std::vector<AbstractInput> abstract_inputs;   // index-aligned with fsm.inputs
    std::vector<AbstractOutput> abstract_outputs; // index-aligned with fsm.outputs
    std::vector<std::vector<TimedGuard>> refined_guards; // per source input

    std::optional<std::size_t> find_abstract_input(InputId input, const TimedGuard& guard) const {
        for (std::size_t k = 0; k < abstract_inputs.size(); ++k)
            if (abstract_inputs[k].input == input && abstract_inputs[k].guard == guard) return k;
        return std::nullopt;
    }

    std::vector<InputId> to_fsm_word(const AbstractWord& word) const {
        std::vector<InputId> out;
        out.reserve(word.size());
        for (const auto& ai : word) {
            auto idx = find_abstract_input(ai.input, ai.guard);
            if (!idx)
                throw contract_error(fsm.name + ": abstract input (" + std::to_string(ai.input) +
                                     ", " + ai.guard.str() + ") not in the refinement");
            out.push_back(*idx);
        }
        return out;
    }
};

// Boundary-point refinement of input i's guards: sorted distinct endpoints
// p1 < ... < px yield [p1,p2), ..., [p_{x-1},px), minus any interval no
// source guard covers (a hole in the union would otherwise make the region
// FSM incomplete and break the domain correspondence). Point-interval inputs
// keep their point guards. Inputs without transitions yield the empty list.
namespace detail {

inline bool guard_subset(const TimedGuard& inner, const TimedGuard& outer) {
    if (inner.kind == GuardKind::point)
        return outer.contains(Rational(inner.lo));
    if (outer.kind == GuardKind::point) return false;
    return outer.lo <= inner.lo && inner.hi <= outer.hi;
}

} // namespace detail

inline std::vector<TimedGuard> refine_guards(const Tfsm& m, InputId i) {
    std::vector<TimedGuard> guards;
    for (const auto& t : m.transitions)
        if (t.input == i) guards.push_back(t.guard);
    if (guards.empty()) return {};

    bool all_points = std::all_of(guards.begin(), guards.end(), [](const TimedGuard& g) {
        return g.kind == GuardKind::point;
    });
    if (all_points) {
        std::set<long long> points;
        for (const auto& g : guards) points.insert(g.lo);
        std::vector<TimedGuard> out;
        for (long long u : points) out.push_back(TimedGuard::point(u));
        return out;
    }
    bool all_half_open = std::all_of(guards.begin(), guards.end(), [](const TimedGuard& g) {
        return g.kind == GuardKind::half_open;
    });
    if (!all_half_open)
        throw unsupported_class_error(m.name + ": input " + m.inputs[i] +
                                      " mixes point and half-open guards");

    std::set<long long> boundaries;
    for (const auto& g : guards) {
        boundaries.insert(g.lo);
        boundaries.insert(g.hi);
    }
    std::vector<TimedGuard> out;
    auto it = boundaries.begin();
    long long prev = *it++;
    for (; it != boundaries.end(); ++it) {
        auto interval = TimedGuard::half_open(prev, *it);
        prev = *it;
        const bool covered = std::any_of(guards.begin(), guards.end(), [&](const TimedGuard& g) {
            return detail::guard_subset(interval, g);
        });
        if (covered) out.push_back(interval);
    }
    return out;
}

inline RegionFsm build_region_fsm(const Tfsm& m) {
    m.validate();
    RegionFsm region;
    region.fsm.name = "R(" + m.name + ")";
    region.fsm.states = m.states;
    region.refined_guards.resize(m.inputs.size());

    for (InputId i = 0; i < m.inputs.size(); ++i) {
        region.refined_guards[i] = refine_guards(m, i);
        for (const auto& g : region.refined_guards[i]) {
            region.abstract_inputs.push_back(AbstractInput{i, g});
            region.fsm.inputs.push_back("(" + m.inputs[i] + "," + g.str() + ")");
        }
    }

    // O_D keeps exactly the (o, d) pairs occurring in h_S, in (output, delay) order.
    std::set<std::pair<OutputId, long long>> out_pairs;
    for (const auto& t : m.transitions) out_pairs.emplace(t.output, t.delay);
    for (const auto& [o, d] : out_pairs) {
        region.abstract_outputs.push_back(AbstractOutput{o, d});
        region.fsm.outputs.push_back("(" + m.outputs[o] + "," + std::to_string(d) + ")");
    }

    for (std::size_t ai = 0; ai < region.abstract_inputs.size(); ++ai) {
        const auto& [input, guard] = region.abstract_inputs[ai];
        for (const auto& t : m.transitions) {
            if (t.input != input || !detail::guard_subset(guard, t.guard)) continue;
            auto od = std::find(region.abstract_outputs.begin(), region.abstract_outputs.end(),
                                AbstractOutput{t.output, t.delay});
            region.fsm.transitions.push_back(FsmTransition{
                t.src, ai, static_cast<OutputId>(od - region.abstract_outputs.begin()), t.dst});
        }
    }
    return region;
}

// Untimed projection [alpha]: componentwise classification of the relative
// offsets into the refined guard sets; nullopt when some offset falls outside
// every refined interval.
inline std::optional<AbstractWord> project(const Tfsm& m, const TimedInputSeq& seq) {
    std::vector<std::vector<TimedGuard>> refined(m.inputs.size());
    for (InputId i = 0; i < m.inputs.size(); ++i) refined[i] = refine_guards(m, i);

    AbstractWord word;
    Rational previous(0);
    for (const auto& ti : seq) {
        const Rational offset = ti.at - previous;
        const TimedGuard* found = nullptr;
        for (const auto& g : refined[ti.input]) {
            if (g.contains(offset)) {
                found = &g;
                break;
            }
        }
        if (!found) return std::nullopt;
        word.push_back(AbstractInput{ti.input, *found});
        previous = ti.at;
    }
    return word;
}

// Non-integer timed representative of an abstract word: relative offsets
// p_k + theta with theta = 1/(n+1) and p_k the interval's left endpoint, so
// every pairwise timestamp difference has fractional part in (0,1) and the
// projection round-trips. Point-interval machines have no non-integer
// representative at all, hence the class error.
inline TimedInputSeq lift(const Tfsm& m, const AbstractWord& word) {
    auto report = classify(m);
    if (!report.half_open_only)
        throw unsupported_class_error(m.name + ": lift requires half-open guards only");
    const Rational theta(1, static_cast<long long>(word.size()) + 1);
    TimedInputSeq seq;
    Rational now(0);
    for (const auto& ai : word) {
        now += Rational(ai.guard.lo) + theta;
        seq.push_back(TimedInput{ai.input, now});
    }
    return seq;
}

namespace detail {

// Exact integer representative for point-interval machines (SS only).
inline TimedInputSeq lift_points(const AbstractWord& word) {
    TimedInputSeq seq;
    Rational now(0);
    for (const auto& ai : word) {
        now += Rational(ai.guard.lo);
        seq.push_back(TimedInput{ai.input, now});
    }
    return seq;
}

} // namespace detail

inline std::optional<TimedInputSeq> derive_via_region(const Tfsm& m, Goal goal,
                                                      SearchStats* stats = nullptr) {
    auto report = classify(m);
    if (!report.deterministic)
        throw unsupported_class_error(m.name + ": derive_via_region requires a deterministic TFSM");
    if (!report.weakly_complete)
        throw unsupported_class_error(m.name + ": derive_via_region requires a weakly-complete TFSM");
    if (goal == Goal::homing && !report.half_open_only)
        throw unsupported_class_error(m.name +
                                      ": region-based homing requires half-open guards only");
    if (goal == Goal::synchronizing && !report.half_open_only && !report.point_interval)
        throw unsupported_class_error(m.name + ": mixed-guard machines are not supported");

    RegionFsm region = build_region_fsm(m);
    auto word = fsm_derive(region.fsm, goal, stats);
    if (!word) return std::nullopt;

    AbstractWord abstract;
    for (InputId k : *word) abstract.push_back(region.abstract_inputs[k]);
    TimedInputSeq seq = report.half_open_only ? lift(m, abstract) : detail::lift_points(abstract);

    const bool ok = goal == Goal::homing ? is_homing(m, seq) : is_synchronizing(m, seq);
    if (!ok)
        throw internal_error(m.name + ": region-derived sequence failed semantic re-verification");
    return seq;
}

} // namespace tfsm
