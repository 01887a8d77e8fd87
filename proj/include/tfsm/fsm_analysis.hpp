/* fsm_analysis.hpp -- shortest HS/SS derivation for deterministic complete FSMs
 *
 * The homing search is a truncated successor tree over labels that are sets
 * of state subsets: an input splits each block by produced output, states
 * mapping to one state fuse, and a node is pruned when an already generated
 * node's non-singleton blocks all appear among its own (any sequence that
 * resolves the new node then resolves the earlier, no longer, one). The
 * synchronizing search is a power-set BFS over state subsets with a visited
 * set. Both report the lexicographically first shortest word: inputs expand
 * in declaration order, nodes in BFS order.
 */
#pragma once

#include "core.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <vector>

namespace tfsm {

enum class Goal { homing, synchronizing };

inline const char* goal_name(Goal g) { return g == Goal::homing ? "hs" : "ss"; }

namespace detail {

using StateSet = std::vector<StateId>;     // sorted, unique
using BlockLabel = std::vector<StateSet>;  // sorted, unique blocks

inline void canonicalize_blocks(BlockLabel& label) {
    for (auto& b : label) {
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
    }
    std::sort(label.begin(), label.end());
    label.erase(std::unique(label.begin(), label.end()), label.end());
}

inline bool all_singletons(const BlockLabel& label) {
    return std::all_of(label.begin(), label.end(), [](const StateSet& b) { return b.size() == 1; });
}

inline BlockLabel non_singleton_blocks(const BlockLabel& label) {
    BlockLabel out;
    for (const auto& b : label)
        if (b.size() > 1) out.push_back(b);
    return out;
}

// Rule 2 test: every block of `earlier` appears among `label`'s blocks.
inline bool blocks_contain(const BlockLabel& label, const BlockLabel& earlier) {
    return std::includes(label.begin(), label.end(), earlier.begin(), earlier.end());
}

// Total single-step map of a deterministic complete FSM.
struct FsmStepTable {
    std::vector<std::vector<std::pair<OutputId, StateId>>> step; // [state][input]

    FsmStepTable(const Fsm& m) : step(m.state_count(), std::vector<std::pair<OutputId, StateId>>(m.inputs.size())) {
        for (const auto& t : m.transitions) step[t.src][t.input] = {t.output, t.dst};
    }
};

inline void require_deterministic_complete(const Fsm& m, const char* op) {
    auto report = fsm_classify(m);
    if (!report.deterministic)
        throw unsupported_class_error(m.name + ": " + op + " requires a deterministic FSM");
    if (!report.complete)
        throw unsupported_class_error(m.name + ": " + op + " requires a complete FSM");
}

} // namespace detail

inline bool fsm_check(const Fsm& m, Goal goal, const std::vector<InputId>& word) {
    detail::require_deterministic_complete(m, "fsm_check");
    for (InputId i : word)
        detail::check_id(i, m.inputs.size(), "input", m.name);

    detail::FsmStepTable table(m);
    std::vector<StateId> finals(m.state_count());
    std::vector<std::vector<OutputId>> words(m.state_count());
    for (StateId s = 0; s < m.state_count(); ++s) {
        StateId cur = s;
        for (InputId i : word) {
            auto [o, next] = table.step[cur][i];
            words[s].push_back(o);
            cur = next;
        }
        finals[s] = cur;
    }

    if (goal == Goal::synchronizing) {
        for (StateId s = 1; s < m.state_count(); ++s)
            if (finals[s] != finals[0]) return false;
        return true;
    }
    for (StateId a = 0; a < m.state_count(); ++a)
        for (StateId b = a + 1; b < m.state_count(); ++b)
            if (words[a] == words[b] && finals[a] != finals[b]) return false;
    return true;
}

namespace detail {

inline std::optional<std::vector<InputId>> fsm_derive_homing(const Fsm& m, SearchStats* stats) {
    const std::size_t n = m.state_count();
    if (n == 0) return std::vector<InputId>{};
    const std::size_t max_depth = n * n;
    FsmStepTable table(m);

    struct Node {
        BlockLabel label;
        std::size_t parent;
        InputId via;
        std::size_t level;
    };

    StateSet all(n);
    for (StateId s = 0; s < n; ++s) all[s] = s;

    std::vector<Node> nodes;
    nodes.push_back(Node{BlockLabel{all}, 0, 0, 0});
    std::vector<BlockLabel> kept_nonsingleton{detail::non_singleton_blocks(nodes[0].label)};

    auto reconstruct = [&](std::size_t idx) {
        std::vector<InputId> word;
        while (nodes[idx].level > 0) {
            word.push_back(nodes[idx].via);
            idx = nodes[idx].parent;
        }
        std::reverse(word.begin(), word.end());
        return word;
    };

    if (detail::all_singletons(nodes[0].label)) return reconstruct(0);

    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        std::size_t idx = frontier.front();
        frontier.pop_front();
        const std::size_t level = nodes[idx].level + 1;
        if (level > max_depth)
            throw internal_error(m.name + ": homing tree exceeded the depth bound " +
                                 std::to_string(max_depth));
        for (InputId i = 0; i < m.inputs.size(); ++i) {
            BlockLabel next;
            for (const auto& block : nodes[idx].label) {
                std::map<OutputId, StateSet> split;
                for (StateId s : block) {
                    auto [o, dst] = table.step[s][i];
                    split[o].push_back(dst);
                }
                for (auto& [o, states] : split) next.push_back(std::move(states));
            }
            detail::canonicalize_blocks(next);

            if (stats) ++stats->nodes;
            if (stats) stats->depth = std::max(stats->depth, level);

            if (detail::all_singletons(next)) {
                nodes.push_back(Node{std::move(next), idx, i, level});
                return reconstruct(nodes.size() - 1);
            }
            bool pruned = false;
            for (const auto& earlier : kept_nonsingleton) {
                if (detail::blocks_contain(next, earlier)) {
                    pruned = true;
                    break;
                }
            }
            if (pruned) continue;
            kept_nonsingleton.push_back(detail::non_singleton_blocks(next));
            nodes.push_back(Node{std::move(next), idx, i, level});
            frontier.push_back(nodes.size() - 1);
        }
    }
    return std::nullopt;
}

inline std::optional<std::vector<InputId>> fsm_derive_synchronizing(const Fsm& m,
                                                                    SearchStats* stats) {
    const std::size_t n = m.state_count();
    const std::size_t max_depth = n * n * n;
    FsmStepTable table(m);

    struct Node {
        StateSet set;
        std::size_t parent;
        InputId via;
        std::size_t level;
    };

    StateSet all(n);
    for (StateId s = 0; s < n; ++s) all[s] = s;

    std::vector<Node> nodes{Node{all, 0, 0, 0}};
    std::set<StateSet> visited{all};

    auto reconstruct = [&](std::size_t idx) {
        std::vector<InputId> word;
        while (nodes[idx].level > 0) {
            word.push_back(nodes[idx].via);
            idx = nodes[idx].parent;
        }
        std::reverse(word.begin(), word.end());
        return word;
    };

    if (all.size() <= 1) return reconstruct(0);

    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        std::size_t idx = frontier.front();
        frontier.pop_front();
        const std::size_t level = nodes[idx].level + 1;
        if (level > max_depth)
            throw internal_error(m.name + ": synchronizing search exceeded the depth bound " +
                                 std::to_string(max_depth));
        for (InputId i = 0; i < m.inputs.size(); ++i) {
            StateSet image;
            for (StateId s : nodes[idx].set) image.push_back(table.step[s][i].second);
            std::sort(image.begin(), image.end());
            image.erase(std::unique(image.begin(), image.end()), image.end());

            if (stats) ++stats->nodes;
            if (stats) stats->depth = std::max(stats->depth, level);

            if (image.size() == 1) {
                nodes.push_back(Node{std::move(image), idx, i, level});
                return reconstruct(nodes.size() - 1);
            }
            if (!visited.insert(image).second) continue;
            nodes.push_back(Node{std::move(image), idx, i, level});
            frontier.push_back(nodes.size() - 1);
        }
    }
    return std::nullopt;
}

} // namespace detail

inline std::optional<std::vector<InputId>> fsm_derive(const Fsm& m, Goal goal,
                                                      SearchStats* stats = nullptr) {
    detail::require_deterministic_complete(m, "fsm_derive");
    if (goal == Goal::homing) return detail::fsm_derive_homing(m, stats);
    return detail::fsm_derive_synchronizing(m, stats);
}

} // namespace tfsm
