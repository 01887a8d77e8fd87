/* successor_tree.hpp -- truncated successor tree for shortest timed HS/SS
 *
 * For weakly-complete deterministic TFSMs with half-open guards only. Nodes
 * are labeled with sets of state subsets; level-j edges carry timed inputs
 * (i, k+theta) for every integer k in [U_i, V_i), with theta <= 1/|S|^2 so
 * that every root-to-node path is a non-integer timed sequence. A block's
 * successor splits by the emitted timed output (o, t+d); states agreeing on
 * it fuse. Truncation:
 *   Rule 1: every block is a singleton (homing); exactly one singleton block
 *           (synchronizing).
 *   Rule 2: homing prunes a node whose blocks contain all non-singleton
 *           blocks of an already generated node; synchronizing compares the
 *           union of blocks instead, since only the image of the full state
 *           set matters for that goal.
 * A Rule-1 hit at level l converts the path's relative offsets into
 * cumulative timestamps (i_1, d_1)(i_2, d_1+d_2)...
 */
#pragma once

#include "core.hpp"
#include "fsm_analysis.hpp"
#include "semantics.hpp"

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tfsm {

using StateBlocks = detail::BlockLabel;

struct TreeConfig {
    Rational theta;
    Goal goal = Goal::homing;
    std::size_t max_depth = 0;

    static TreeConfig defaults(const Tfsm& m, Goal goal) {
        const long long n = static_cast<long long>(m.state_count());
        TreeConfig cfg;
        cfg.theta = Rational(1, n * n + 1);
        cfg.goal = goal;
        cfg.max_depth = goal == Goal::homing ? static_cast<std::size_t>(n * n)
                                             : static_cast<std::size_t>(n * n * n);
        return cfg;
    }
};

// One (i,t)-successor step on a set of subsets: nullopt when some state in
// some block has no enabled transition (never happens on weakly-complete
// machines once any state is enabled). Singleton blocks are carried along
// unchanged in shape: they can still matter for Rule 2 equality.
inline std::optional<StateBlocks> block_successor(const Tfsm& m, const StateBlocks& blocks,
                                                  InputId input, const Rational& t) {
    StateBlocks next;
    for (const auto& block : blocks) {
        std::map<std::pair<OutputId, Rational>, detail::StateSet> split;
        for (StateId s : block) {
            auto tr = find_transition(m, s, input, t);
            if (!tr) return std::nullopt;
            const auto& trans = m.transitions[*tr];
            split[{trans.output, t + Rational(trans.delay)}].push_back(trans.dst);
        }
        for (auto& [key, states] : split) next.push_back(std::move(states));
    }
    detail::canonicalize_blocks(next);
    return next;
}

// Optional record of the generated tree, for DOT dumps.
struct TreeTrace {
    struct Node {
        StateBlocks label;
        std::size_t level = 0;
        std::optional<std::size_t> parent;
        std::string via; // edge label "(i1, 21/10)"
        enum class Status { expanded, rule1, rule2 } status = Status::expanded;
    };
    std::vector<Node> nodes;
};

namespace detail {

inline StateSet blocks_union(const BlockLabel& label) {
    StateSet u;
    for (const auto& b : label) u.insert(u.end(), b.begin(), b.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

inline bool tree_rule1(const BlockLabel& label, Goal goal) {
    if (goal == Goal::homing) return all_singletons(label);
    return label.size() == 1 && label[0].size() == 1;
}

} // namespace detail

inline std::optional<TimedInputSeq> derive_shortest(const Tfsm& m, Goal goal,
                                                    const TreeConfig& cfg,
                                                    TreeTrace* trace = nullptr,
                                                    SearchStats* stats = nullptr) {
    auto report = classify(m);
    if (!report.deterministic)
        throw unsupported_class_error(m.name + ": derive_shortest requires a deterministic TFSM");
    if (!report.weakly_complete)
        throw unsupported_class_error(m.name + ": derive_shortest requires a weakly-complete TFSM");
    if (!report.half_open_only)
        throw unsupported_class_error(m.name + ": derive_shortest requires half-open guards only");
    if (m.state_count() > 0 &&
        (cfg.theta.is_negative() || cfg.theta.is_zero() ||
         Rational(1, static_cast<long long>(m.state_count() * m.state_count())) < cfg.theta))
        throw contract_error(m.name + ": theta must satisfy 0 < theta <= 1/|S|^2");

    struct Node {
        StateBlocks label;
        std::size_t parent = 0;
        InputId input = 0;
        long long offset = 0; // relative integer part k; edge time is k + theta
        std::size_t level = 0;
        std::size_t trace_id = 0;
    };

    detail::StateSet all(m.state_count());
    for (StateId s = 0; s < m.state_count(); ++s) all[s] = s;

    std::vector<Node> nodes{Node{StateBlocks{all}, 0, 0, 0, 0, 0}};
    if (trace)
        trace->nodes.push_back(
            TreeTrace::Node{nodes[0].label, 0, std::nullopt, "", TreeTrace::Node::Status::expanded});

    auto reconstruct = [&](std::size_t idx) {
        std::vector<std::pair<InputId, long long>> rel;
        while (nodes[idx].level > 0) {
            rel.emplace_back(nodes[idx].input, nodes[idx].offset);
            idx = nodes[idx].parent;
        }
        std::reverse(rel.begin(), rel.end());
        TimedInputSeq seq;
        Rational now(0);
        for (const auto& [input, k] : rel) {
            now += Rational(k) + cfg.theta;
            seq.push_back(TimedInput{input, now});
        }
        return seq;
    };

    auto verify = [&](const TimedInputSeq& seq) {
        const bool ok = goal == Goal::homing ? is_homing(m, seq) : is_synchronizing(m, seq);
        if (!ok)
            throw internal_error(m.name + ": successor-tree sequence failed semantic re-verification");
        return seq;
    };

    if (detail::tree_rule1(nodes[0].label, goal) || m.state_count() == 0)
        return verify(reconstruct(0));

    // Rule 2 compares against every kept node, in generation order.
    std::vector<StateBlocks> kept_keys;
    kept_keys.push_back(goal == Goal::homing ? detail::non_singleton_blocks(nodes[0].label)
                                             : StateBlocks{detail::blocks_union(nodes[0].label)});

    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        const std::size_t idx = frontier.front();
        frontier.pop_front();
        const std::size_t level = nodes[idx].level + 1;
        if (level > cfg.max_depth)
            throw internal_error(m.name + ": successor tree exceeded the depth bound " +
                                 std::to_string(cfg.max_depth));
        for (InputId i = 0; i < m.inputs.size(); ++i) {
            auto bounds = report.per_input_bounds.find(i);
            if (bounds == report.per_input_bounds.end()) continue;
            for (long long k = bounds->second.first; k < bounds->second.second; ++k) {
                const Rational t = Rational(k) + cfg.theta;
                auto next = block_successor(m, nodes[idx].label, i, t);
                if (!next) continue; // hole between guards: no edge
                if (stats) ++stats->nodes;
                if (stats) stats->depth = std::max(stats->depth, level);

                const std::string via = "(" + m.inputs[i] + "," + t.str() + ")";
                nodes.push_back(Node{*next, idx, i, k, level, 0});
                const std::size_t child = nodes.size() - 1;
                if (trace) {
                    trace->nodes.push_back(TreeTrace::Node{nodes[child].label, level,
                                                           nodes[idx].trace_id, via,
                                                           TreeTrace::Node::Status::expanded});
                    nodes[child].trace_id = trace->nodes.size() - 1;
                }

                if (detail::tree_rule1(*next, goal)) {
                    if (trace)
                        trace->nodes[nodes[child].trace_id].status = TreeTrace::Node::Status::rule1;
                    return verify(reconstruct(child));
                }

                StateBlocks key = goal == Goal::homing
                                      ? detail::non_singleton_blocks(*next)
                                      : StateBlocks{detail::blocks_union(*next)};
                bool pruned = false;
                if (goal == Goal::homing) {
                    for (const auto& earlier : kept_keys)
                        if (detail::blocks_contain(*next, earlier)) {
                            pruned = true;
                            break;
                        }
                } else {
                    for (const auto& earlier : kept_keys)
                        if (std::includes(key[0].begin(), key[0].end(), earlier[0].begin(),
                                          earlier[0].end())) {
                            pruned = true;
                            break;
                        }
                }
                if (pruned) {
                    if (trace)
                        trace->nodes[nodes[child].trace_id].status = TreeTrace::Node::Status::rule2;
                    nodes.pop_back();
                    continue;
                }
                kept_keys.push_back(std::move(key));
                frontier.push_back(child);
            }
        }
    }
    return std::nullopt;
}

inline std::optional<TimedInputSeq> derive_shortest(const Tfsm& m, Goal goal,
                                                    TreeTrace* trace = nullptr,
                                                    SearchStats* stats = nullptr) {
    return derive_shortest(m, goal, TreeConfig::defaults(m, goal), trace, stats);
}

} // namespace tfsm
