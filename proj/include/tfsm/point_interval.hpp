/* point_interval.hpp -- homing analysis for TFSMs with point guards only
 *
 * Point-interval machines admit only integer-timestamped sequences, so the
 * region correspondence for homing breaks down: output permutations can glue
 * states back together after they were told apart. Analysis therefore tracks
 * timed output tails, the multiset of still-pending outputs relative to
 * "now". A step by (i, g) shifts the tail by -g, emits what fell strictly
 * below 0, and adds the new output at its delay. Tail size never exceeds
 * ceil(max(D)/min(G)).
 *
 * HS existence is decided on the pairwise abstraction: states are sets of
 * unordered (state, tail) pairs, a pair resolving to the absorbing "empty"
 * value when its states merge or their emitted-now outputs differ. A set
 * whose surviving pairs all carry distinct tails is accepting: each pair is
 * then either merged or distinguished by the response observed after the
 * sequence ends.
 *
 * Careful synchronization of a PFA reduces to exactly this homing question
 * on a one-output machine with unit guards and delays.
 */
#pragma once

#include "core.hpp"
#include "semantics.hpp"

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tfsm {

// Multiset of pending outputs with integer offsets relative to "now".
struct Tail {
    std::vector<std::pair<OutputId, long long>> items; // sorted

    static Tail empty() { return Tail{}; }
    std::size_t size() const { return items.size(); }

    void insert(OutputId o, long long offset) {
        items.emplace_back(o, offset);
        std::sort(items.begin(), items.end());
    }

    friend bool operator==(const Tail&, const Tail&) = default;
    friend auto operator<=>(const Tail&, const Tail&) = default;
};

using EmittedOutputs = std::vector<std::pair<OutputId, long long>>; // sorted, offsets < 0

struct TailStepResult {
    StateId next = 0;
    Tail tail;
    EmittedOutputs emitted;
};

namespace detail {

inline void require_point_interval(const Tfsm& m, const char* op) {
    for (const auto& t : m.transitions)
        if (t.guard.kind != GuardKind::point)
            throw unsupported_class_error(m.name + ": " + op +
                                          " requires a point-interval machine");
}

inline std::optional<std::size_t> find_point_transition(const Tfsm& m, StateId s, InputId i,
                                                        long long g) {
    for (std::size_t k = 0; k < m.transitions.size(); ++k) {
        const auto& t = m.transitions[k];
        if (t.src == s && t.input == i && t.guard.kind == GuardKind::point && t.guard.lo == g)
            return k;
    }
    return std::nullopt;
}

} // namespace detail

// shift by -g, emit offsets < 0, keep offsets >= 0, add the new (o, d).
inline std::optional<TailStepResult> tail_step(const Tfsm& m, StateId s, const Tail& tail,
                                               InputId input, long long g) {
    auto tr = detail::find_point_transition(m, s, input, g);
    if (!tr) return std::nullopt;
    const auto& t = m.transitions[*tr];
    TailStepResult result;
    result.next = t.dst;
    for (const auto& [o, offset] : tail.items) {
        const long long shifted = offset - g;
        if (shifted < 0)
            result.emitted.emplace_back(o, shifted);
        else
            result.tail.items.emplace_back(o, shifted);
    }
    result.tail.insert(t.output, t.delay);
    std::sort(result.emitted.begin(), result.emitted.end());
    return result;
}

// Pending outputs of alpha at s, offsets rebased to t(alpha); equals folding
// tail_step over alpha's relative offsets.
inline std::optional<Tail> tail_of(const Tfsm& m, StateId s, const TimedInputSeq& seq) {
    detail::require_point_interval(m, "tail_of");
    Tail tail;
    StateId current = s;
    Rational previous(0);
    for (const auto& ti : seq) {
        const Rational offset = ti.at - previous;
        if (!offset.is_integer()) return std::nullopt;
        auto step = tail_step(m, current, tail, ti.input, offset.floor_value());
        if (!step) return std::nullopt;
        current = step->next;
        tail = std::move(step->tail);
        previous = ti.at;
    }
    return tail;
}

// Unordered pair of (state, tail) configurations, or the absorbing resolved
// value (the pair merged or was distinguished by observed outputs).
struct PairState {
    bool resolved = false;
    StateId s1 = 0, s2 = 0;
    Tail t1, t2;

    static PairState make_resolved() { return PairState{true, 0, 0, {}, {}}; }

    static PairState live(StateId a, const Tail& ta, StateId b, const Tail& tb) {
        if (a == b)
            throw contract_error("pair state requires distinct states");
        if (std::tie(a, ta) < std::tie(b, tb)) return PairState{false, a, b, ta, tb};
        return PairState{false, b, a, tb, ta};
    }

    friend bool operator==(const PairState&, const PairState&) = default;
    friend auto operator<=>(const PairState&, const PairState&) = default;
};

// Pairwise step function. nullopt: some side leaves the domain. The
// resolved value: states merge (case 2), emitted-now multisets differ
// (case 3a), or the input is applied to an already resolved pair (case 4).
inline std::optional<PairState> delta(const Tfsm& m, const PairState& pair, InputId input,
                                      long long g) {
    if (pair.resolved) return PairState::make_resolved();
    auto a = tail_step(m, pair.s1, pair.t1, input, g);
    auto b = tail_step(m, pair.s2, pair.t2, input, g);
    if (!a || !b) return std::nullopt;
    if (a->next == b->next) return PairState::make_resolved();
    if (a->emitted != b->emitted) return PairState::make_resolved();
    return PairState::live(a->next, a->tail, b->next, b->tail);
}

enum class SearchOutcome { found, none, budget_exhausted };

struct PointHsResult {
    SearchOutcome outcome = SearchOutcome::none;
    std::optional<TimedInputSeq> witness;
    std::size_t nodes = 0;
    std::size_t depth = 0;

    bool exists() const { return outcome == SearchOutcome::found; }
};

inline constexpr std::size_t default_node_budget = 1'000'000;

namespace detail {

// Point values per input, declaration order then ascending.
inline std::vector<std::vector<long long>> point_letters(const Tfsm& m) {
    std::vector<std::set<long long>> sets(m.inputs.size());
    for (const auto& t : m.transitions) sets[t.input].insert(t.guard.lo);
    std::vector<std::vector<long long>> out(m.inputs.size());
    for (InputId i = 0; i < m.inputs.size(); ++i) out[i].assign(sets[i].begin(), sets[i].end());
    return out;
}

inline TimedInputSeq cumulative_from_letters(const std::vector<std::pair<InputId, long long>>& rel) {
    TimedInputSeq seq;
    Rational now(0);
    for (const auto& [input, g] : rel) {
        now += Rational(g);
        seq.push_back(TimedInput{input, now});
    }
    return seq;
}

} // namespace detail

// BFS over sets of live pairs from the all-pairs initial state. A move is
// defined only when delta is defined for every member; resolved results are
// dropped (they are absorbing and carry no further constraint).
inline PointHsResult hs_exists_point(const Tfsm& m, std::size_t node_budget = default_node_budget) {
    m.validate();
    detail::require_point_interval(m, "hs_exists_point");
    auto letters = detail::point_letters(m);

    using AbstractState = std::vector<PairState>; // sorted, unique, live pairs only

    AbstractState init;
    for (StateId a = 0; a < m.state_count(); ++a)
        for (StateId b = a + 1; b < m.state_count(); ++b)
            init.push_back(PairState::live(a, Tail::empty(), b, Tail::empty()));
    std::sort(init.begin(), init.end());

    auto accepting = [](const AbstractState& w) {
        for (const auto& p : w)
            if (p.t1 == p.t2) return false;
        return true;
    };

    struct Node {
        AbstractState state;
        std::size_t parent = 0;
        InputId input = 0;
        long long g = 0;
        std::size_t level = 0;
    };

    PointHsResult result;
    std::vector<Node> nodes{Node{init, 0, 0, 0, 0}};
    std::set<AbstractState> visited{init};
    result.nodes = 1;

    auto reconstruct = [&](std::size_t idx) {
        std::vector<std::pair<InputId, long long>> rel;
        while (nodes[idx].level > 0) {
            rel.emplace_back(nodes[idx].input, nodes[idx].g);
            idx = nodes[idx].parent;
        }
        std::reverse(rel.begin(), rel.end());
        return detail::cumulative_from_letters(rel);
    };

    if (accepting(init)) {
        result.outcome = SearchOutcome::found;
        result.witness = reconstruct(0);
        return result;
    }

    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        const std::size_t idx = frontier.front();
        frontier.pop_front();
        for (InputId i = 0; i < m.inputs.size(); ++i) {
            for (long long g : letters[i]) {
                AbstractState next;
                bool defined = true;
                for (const auto& p : nodes[idx].state) {
                    auto d = delta(m, p, i, g);
                    if (!d) {
                        defined = false;
                        break;
                    }
                    if (!d->resolved) next.push_back(*d);
                }
                if (!defined) continue;
                std::sort(next.begin(), next.end());
                next.erase(std::unique(next.begin(), next.end()), next.end());
                if (!visited.insert(next).second) continue;

                ++result.nodes;
                if (result.nodes > node_budget) {
                    result.outcome = SearchOutcome::budget_exhausted;
                    return result;
                }
                const std::size_t level = nodes[idx].level + 1;
                result.depth = std::max(result.depth, level);
                nodes.push_back(Node{std::move(next), idx, i, g, level});
                if (accepting(nodes.back().state)) {
                    result.outcome = SearchOutcome::found;
                    result.witness = reconstruct(nodes.size() - 1);
                    return result;
                }
                frontier.push_back(nodes.size() - 1);
            }
        }
    }
    result.outcome = SearchOutcome::none;
    return result;
}

namespace detail {

// Modified truncated successor tree over (state, tail) configurations for
// weakly-complete point-interval machines: blocks split by the emitted-now
// multiset. A block is settled for homing once no two of its members with
// distinct states share a tail: equal full responses then force equal final
// states. Rule 2 prunes against the non-singleton blocks of generated nodes;
// only singleton blocks stay settled forever, so larger resolved blocks
// cannot be discounted.
inline std::optional<TimedInputSeq> derive_hs_point_tree(const Tfsm& m, std::size_t node_budget,
                                                         SearchStats* stats) {
    auto letters = point_letters(m);

    using Config = std::pair<StateId, Tail>;
    using Block = std::vector<Config>;   // sorted, unique
    using Label = std::vector<Block>;    // sorted, unique

    auto canonicalize = [](Label& label) {
        for (auto& b : label) {
            std::sort(b.begin(), b.end());
            b.erase(std::unique(b.begin(), b.end()), b.end());
        }
        std::sort(label.begin(), label.end());
        label.erase(std::unique(label.begin(), label.end()), label.end());
    };

    auto settled = [](const Label& label) {
        for (const auto& b : label)
            for (std::size_t x = 0; x < b.size(); ++x)
                for (std::size_t y = x + 1; y < b.size(); ++y)
                    if (b[x].second == b[y].second && b[x].first != b[y].first) return false;
        return true;
    };

    auto non_singletons = [](const Label& label) {
        Label out;
        for (const auto& b : label)
            if (b.size() > 1) out.push_back(b);
        return out;
    };

    struct Node {
        Label label;
        std::size_t parent = 0;
        InputId input = 0;
        long long g = 0;
        std::size_t level = 0;
    };

    Block root_block;
    for (StateId s = 0; s < m.state_count(); ++s) root_block.emplace_back(s, Tail::empty());
    std::vector<Node> nodes{Node{Label{root_block}, 0, 0, 0, 0}};

    auto reconstruct = [&](std::size_t idx) {
        std::vector<std::pair<InputId, long long>> rel;
        while (nodes[idx].level > 0) {
            rel.emplace_back(nodes[idx].input, nodes[idx].g);
            idx = nodes[idx].parent;
        }
        std::reverse(rel.begin(), rel.end());
        return cumulative_from_letters(rel);
    };

    if (settled(nodes[0].label) || m.state_count() == 0) return reconstruct(0);

    std::vector<Label> kept_keys{non_singletons(nodes[0].label)};
    std::size_t generated = 1;
    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        const std::size_t idx = frontier.front();
        frontier.pop_front();
        const std::size_t level = nodes[idx].level + 1;
        for (InputId i = 0; i < m.inputs.size(); ++i) {
            for (long long g : letters[i]) {
                Label next;
                bool defined = true;
                for (const auto& block : nodes[idx].label) {
                    std::map<EmittedOutputs, Block> split;
                    for (const auto& [s, tail] : block) {
                        auto step = tail_step(m, s, tail, i, g);
                        if (!step) {
                            defined = false;
                            break;
                        }
                        split[step->emitted].emplace_back(step->next, step->tail);
                    }
                    if (!defined) break;
                    for (auto& [key, blk] : split) next.push_back(std::move(blk));
                }
                if (!defined) continue;
                canonicalize(next);

                if (++generated > node_budget)
                    throw budget_error(m.name + ": point successor tree exceeded the node budget");
                if (stats) {
                    ++stats->nodes;
                    stats->depth = std::max(stats->depth, level);
                }

                if (settled(next)) {
                    nodes.push_back(Node{std::move(next), idx, i, g, level});
                    return reconstruct(nodes.size() - 1);
                }
                bool pruned = false;
                for (const auto& earlier : kept_keys) {
                    if (std::includes(next.begin(), next.end(), earlier.begin(), earlier.end())) {
                        pruned = true;
                        break;
                    }
                }
                if (pruned) continue;
                kept_keys.push_back(non_singletons(next));
                nodes.push_back(Node{std::move(next), idx, i, g, level});
                frontier.push_back(nodes.size() - 1);
            }
        }
    }
    return std::nullopt;
}

} // namespace detail

// Shortest HS for point-interval machines via the (state, tail) successor
// tree when the machine is weakly-complete; otherwise the pairwise-automaton
// witness. Either way the result is re-verified through the semantics.
inline std::optional<TimedInputSeq> derive_hs_point(const Tfsm& m,
                                                    std::size_t node_budget = default_node_budget,
                                                    SearchStats* stats = nullptr) {
    m.validate();
    detail::require_point_interval(m, "derive_hs_point");
    auto report = classify(m);
    if (!report.deterministic)
        throw unsupported_class_error(m.name + ": derive_hs_point requires a deterministic TFSM");

    std::optional<TimedInputSeq> witness;
    if (report.weakly_complete) {
        witness = detail::derive_hs_point_tree(m, node_budget, stats);
    } else {
        auto result = hs_exists_point(m, node_budget);
        if (result.outcome == SearchOutcome::budget_exhausted)
            throw budget_error(m.name + ": pairwise search exceeded the node budget");
        witness = result.witness;
        if (stats) {
            stats->nodes = result.nodes;
            stats->depth = result.depth;
        }
    }
    if (witness && !is_homing(m, *witness))
        throw internal_error(m.name + ": point-derived sequence failed semantic re-verification");
    return witness;
}

// The cyclic one-input family B_n: i1 permutes the states; delays are 2
// everywhere except 3 entering the last state and 1 back to the start.
// R(B_n) can be homed while B_n cannot (n >= 4).
inline Tfsm gen_bn(long long n) {
    if (n < 4) throw contract_error("gen_bn requires n >= 4");
    Tfsm m;
    m.name = "B" + std::to_string(n);
    for (long long s = 0; s < n; ++s) m.states.push_back("s" + std::to_string(s));
    m.inputs = {"i1"};
    m.outputs = {"o1"};
    for (long long s = 0; s + 2 < n; ++s)
        m.transitions.push_back(TfsmTransition{static_cast<StateId>(s), 0, TimedGuard::point(1), 0,
                                               2, static_cast<StateId>(s + 1)});
    m.transitions.push_back(TfsmTransition{static_cast<StateId>(n - 2), 0, TimedGuard::point(1), 0,
                                           3, static_cast<StateId>(n - 1)});
    m.transitions.push_back(
        TfsmTransition{static_cast<StateId>(n - 1), 0, TimedGuard::point(1), 0, 1, 0});
    return m;
}

// Careful-synchronization reduction: w carefully synchronizes the PFA iff
// (a_1,1)...(a_k,k) homes the image machine (single output, unit guards and
// delays).
inline Tfsm pfa_to_tfsm(const Pfa& a) {
    a.validate();
    Tfsm m;
    m.name = a.name.empty() ? "S_A" : "S_" + a.name;
    m.states = a.states;
    m.inputs = a.letters;
    m.outputs = {"o"};
    for (const auto& t : a.transitions)
        m.transitions.push_back(TfsmTransition{t.src, t.letter, TimedGuard::point(1), 0, 1, t.dst});
    return m;
}

struct CarefulSyncResult {
    std::optional<std::vector<InputId>> word;
    bool conclusive = false; // frontier exhausted before the length cap
    std::size_t nodes = 0;
};

// Subset BFS for careful synchronization: a letter applies to a subset only
// when it is defined at each of its states; the goal is the singleton image
// of the full state set.
inline CarefulSyncResult careful_sync_search(const Pfa& a, std::size_t max_len) {
    a.validate();
    using Subset = std::vector<StateId>;

    struct Node {
        Subset set;
        std::size_t parent = 0;
        InputId via = 0;
        std::size_t level = 0;
    };

    Subset all(a.state_count());
    for (StateId s = 0; s < a.state_count(); ++s) all[s] = s;

    CarefulSyncResult result;
    std::vector<Node> nodes{Node{all, 0, 0, 0}};
    std::set<Subset> visited{all};
    result.nodes = 1;

    auto reconstruct = [&](std::size_t idx) {
        std::vector<InputId> word;
        while (nodes[idx].level > 0) {
            word.push_back(nodes[idx].via);
            idx = nodes[idx].parent;
        }
        std::reverse(word.begin(), word.end());
        return word;
    };

    if (all.size() <= 1) {
        result.word = reconstruct(0);
        result.conclusive = true;
        return result;
    }

    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        const std::size_t idx = frontier.front();
        frontier.pop_front();
        const std::size_t level = nodes[idx].level + 1;
        if (level > max_len) {
            result.conclusive = false;
            return result;
        }
        for (InputId letter = 0; letter < a.letters.size(); ++letter) {
            Subset image;
            bool defined = true;
            for (StateId s : nodes[idx].set) {
                auto next = a.target(s, letter);
                if (!next) {
                    defined = false;
                    break;
                }
                image.push_back(*next);
            }
            if (!defined) continue;
            std::sort(image.begin(), image.end());
            image.erase(std::unique(image.begin(), image.end()), image.end());
            if (image.size() == 1) {
                nodes.push_back(Node{std::move(image), idx, letter, level});
                result.word = reconstruct(nodes.size() - 1);
                result.conclusive = true;
                return result;
            }
            if (!visited.insert(image).second) continue;
            ++result.nodes;
            nodes.push_back(Node{std::move(image), idx, letter, level});
            frontier.push_back(nodes.size() - 1);
        }
    }
    result.conclusive = true;
    return result;
}

inline std::optional<std::vector<InputId>> careful_sync_brute(const Pfa& a, std::size_t max_len) {
    return careful_sync_search(a, max_len).word;
}

// The reduction's timed word (a_1,1)(a_2,2)...(a_k,k).
inline TimedInputSeq pfa_word_to_seq(const std::vector<InputId>& word) {
    TimedInputSeq seq;
    for (std::size_t k = 0; k < word.size(); ++k)
        seq.push_back(TimedInput{word[k], Rational(static_cast<long long>(k) + 1)});
    return seq;
}

} // namespace tfsm
