/* oracle.hpp -- exhaustive brute-force HS/SS search
 *
 * Validation instrument: explores every timed input sequence over the
 * non-equivalent grid, judging candidates only through the semantics
 * predicates. Half-open machines use relative offsets k + theta with
 * theta = 1/(max_len+1) (one representative per equivalence class, always
 * non-integer within the cap); point-interval machines use the exact point
 * guards. Deliberately shares nothing with the derivation modules.
 */
#pragma once

#include "core.hpp"
#include "fsm_analysis.hpp"
#include "semantics.hpp"

#include <optional>
#include <vector>

namespace tfsm {

struct OracleStats {
    std::size_t sequences = 0;
};

inline std::optional<TimedInputSeq> brute_force_derive(const Tfsm& m, Goal goal,
                                                       std::size_t max_len,
                                                       OracleStats* stats = nullptr) {
    auto report = classify(m);
    if (!report.deterministic)
        throw unsupported_class_error(m.name + ": brute_force_derive requires a deterministic TFSM");

    // The per-step alphabet of relative offsets.
    struct GridStep {
        InputId input;
        Rational offset;
    };
    std::vector<GridStep> grid;
    if (report.point_interval) {
        std::vector<std::set<long long>> points(m.inputs.size());
        for (const auto& t : m.transitions) points[t.input].insert(t.guard.lo);
        for (InputId i = 0; i < m.inputs.size(); ++i)
            for (long long u : points[i]) grid.push_back(GridStep{i, Rational(u)});
    } else if (report.half_open_only) {
        const Rational theta(1, static_cast<long long>(max_len) + 1);
        for (InputId i = 0; i < m.inputs.size(); ++i) {
            auto bounds = report.per_input_bounds.find(i);
            if (bounds == report.per_input_bounds.end()) continue;
            for (long long k = bounds->second.first; k < bounds->second.second; ++k)
                grid.push_back(GridStep{i, Rational(k) + theta});
        }
    } else {
        throw unsupported_class_error(m.name + ": mixed-guard machines are not supported");
    }

    auto achieves = [&](const TimedInputSeq& seq) {
        return goal == Goal::homing ? is_homing(m, seq) : is_synchronizing(m, seq);
    };

    // Iterative deepening in lexicographic grid order: the first hit is a
    // canonical shortest sequence.
    std::vector<std::size_t> pick;
    for (std::size_t len = 0; len <= max_len; ++len) {
        pick.assign(len, 0);
        if (len > 0 && grid.empty()) break;
        while (true) {
            TimedInputSeq seq;
            Rational now(0);
            for (std::size_t k = 0; k < len; ++k) {
                const auto& step = grid[pick[k]];
                now += step.offset;
                seq.push_back(TimedInput{step.input, now});
            }
            if (stats) ++stats->sequences;
            if (achieves(seq)) return seq;
            // odometer increment
            std::size_t pos = len;
            while (pos > 0) {
                if (++pick[pos - 1] < grid.size()) break;
                pick[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
    }
    return std::nullopt;
}

} // namespace tfsm
