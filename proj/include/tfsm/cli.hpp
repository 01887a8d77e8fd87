/* cli.hpp -- command-line entry points
 *
 * Subcommands: analyze, derive, check, simulate, region, gen-bn, oracle.
 * Results are JSON on stdout (DOT for region --dot and gen-bn's machine
 * text); rationals are serialized as exact "p/q" strings, never floats.
 * Exit codes: 0 success, 1 goal does not exist / does not hold, 2 usage or
 * parse error, 3 unsupported machine class, 4 internal failure or exhausted
 * search budget. TFSM_NODE_BUDGET caps the point-interval searches.
 */
#pragma once

#include "core.hpp"
#include "dot.hpp"
#include "format.hpp"
#include "oracle.hpp"
#include "point_interval.hpp"
#include "region.hpp"
#include "semantics.hpp"
#include "successor_tree.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace tfsm::cli {

using json = nlohmann::ordered_json;

namespace detail {

inline MachineDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(0, 0, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_machine(buffer.str());
}

inline const Tfsm& require_tfsm(const MachineDocument& doc) {
    if (doc.kind != MachineDocument::Kind::tfsm)
        throw unsupported_class_error("'" + doc.name() + "' is not a timed machine");
    return std::get<Tfsm>(doc.machine);
}

inline json sequence_json(const Tfsm& m, const TimedInputSeq& seq) {
    json out = json::array();
    for (const auto& ti : seq)
        out.push_back(json{{"input", m.inputs[ti.input]}, {"t", ti.at.str_fraction()}});
    return out;
}

inline std::size_t node_budget_from_env() {
    if (const char* raw = std::getenv("TFSM_NODE_BUDGET")) {
        char* end = nullptr;
        const unsigned long long value = std::strtoull(raw, &end, 10);
        if (end && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
    }
    return default_node_budget;
}

inline json classify_json(const Tfsm& m) {
    auto report = classify(m);
    json bounds = json::object();
    for (const auto& [input, uv] : report.per_input_bounds)
        bounds[m.inputs[input]] = json{{"U", uv.first}, {"V", uv.second}};
    return json{{"deterministic", report.deterministic},
                {"weakly_complete", report.weakly_complete},
                {"point_interval", report.point_interval},
                {"half_open_only", report.half_open_only},
                {"per_input_bounds", bounds}};
}

} // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"homing and synchronizing sequences for timed FSMs with output delays", "tfsm"};
    app.require_subcommand(1);

    std::string file, goal = "hs", method = "tree", seq_text, from_state, tree_dot_path;
    std::size_t max_len = 8;
    long long bn = 0;
    bool dot = false;

    auto* analyze = app.add_subcommand("analyze", "classify a machine description");
    analyze->add_flag("--dot", dot, "emit the machine as DOT instead of a report");
    analyze->add_option("file", file)->required();

    auto* derive = app.add_subcommand("derive", "derive a shortest HS/SS");
    derive->add_option("--goal", goal)->check(CLI::IsMember({"hs", "ss"}));
    derive->add_option("--method", method)->check(CLI::IsMember({"tree", "region", "point"}));
    derive->add_option("--tree-dot", tree_dot_path, "dump the successor tree as DOT");
    derive->add_option("file", file)->required();

    auto* check = app.add_subcommand("check", "check a timed sequence against a goal");
    check->add_option("--goal", goal)->check(CLI::IsMember({"hs", "ss"}));
    check->add_option("--seq", seq_text)->required();
    check->add_option("file", file)->required();

    auto* simulate = app.add_subcommand("simulate", "run a timed sequence from a state");
    simulate->add_option("--from", from_state)->required();
    simulate->add_option("--seq", seq_text)->required();
    simulate->add_option("file", file)->required();

    auto* region_cmd = app.add_subcommand("region", "build the region FSM");
    region_cmd->add_flag("--dot", dot, "emit DOT instead of JSON");
    region_cmd->add_option("file", file)->required();

    auto* gen = app.add_subcommand("gen-bn", "emit the B_n machine");
    gen->add_option("n", bn)->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive brute-force search");
    oracle_cmd->add_option("--goal", goal)->check(CLI::IsMember({"hs", "ss"}));
    oracle_cmd->add_option("--max-len", max_len);
    oracle_cmd->add_option("file", file)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends print through CLI11's machinery.
            std::ostringstream help;
            help << app.help();
            out << help.str();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const Goal goal_value = goal == "hs" ? Goal::homing : Goal::synchronizing;

    try {
        if (*analyze) {
            auto doc = detail::load_document(file);
            if (dot) {
                switch (doc.kind) {
                case MachineDocument::Kind::tfsm: out << to_dot(std::get<Tfsm>(doc.machine)); break;
                case MachineDocument::Kind::fsm: out << to_dot(std::get<Fsm>(doc.machine)); break;
                case MachineDocument::Kind::pfa:
                    throw unsupported_class_error("'" + doc.name() + "': no DOT view for pfa blocks");
                }
                return 0;
            }
            json result{{"query", json{{"command", "analyze"}}}, {"machine", doc.name()}};
            switch (doc.kind) {
            case MachineDocument::Kind::tfsm: {
                result["kind"] = "tfsm";
                result["report"] = detail::classify_json(std::get<Tfsm>(doc.machine));
                break;
            }
            case MachineDocument::Kind::fsm: {
                auto report = fsm_classify(std::get<Fsm>(doc.machine));
                result["kind"] = "fsm";
                result["report"] = json{{"deterministic", report.deterministic},
                                        {"observable", report.observable},
                                        {"complete", report.complete}};
                break;
            }
            case MachineDocument::Kind::pfa: {
                const auto& pfa = std::get<Pfa>(doc.machine);
                pfa.validate();
                bool total = true;
                for (StateId s = 0; s < pfa.state_count() && total; ++s)
                    for (InputId a = 0; a < pfa.letters.size() && total; ++a)
                        total = pfa.target(s, a).has_value();
                result["kind"] = "pfa";
                result["report"] = json{{"deterministic", true}, {"total", total}};
                break;
            }
            }
            out << result.dump(2) << "\n";
            return 0;
        }

        if (*derive) {
            auto doc = detail::load_document(file);
            const Tfsm& m = detail::require_tfsm(doc);
            SearchStats stats;
            std::optional<TimedInputSeq> seq;
            if (method == "tree") {
                TreeTrace trace;
                seq = derive_shortest(m, goal_value, TreeConfig::defaults(m, goal_value),
                                      tree_dot_path.empty() ? nullptr : &trace, &stats);
                if (!tree_dot_path.empty()) {
                    std::ofstream tree_out(tree_dot_path);
                    tree_out << to_dot(m, trace);
                }
            } else if (method == "region") {
                seq = derive_via_region(m, goal_value, &stats);
            } else {
                if (goal_value != Goal::homing)
                    throw unsupported_class_error(
                        m.name + ": the point method derives homing sequences only");
                seq = derive_hs_point(m, detail::node_budget_from_env(), &stats);
            }
            json result{{"query", json{{"command", "derive"}, {"goal", goal}, {"method", method}}},
                        {"machine", m.name},
                        {"exists", seq.has_value()}};
            if (seq) {
                result["sequence"] = detail::sequence_json(m, *seq);
                result["verified"] =
                    goal_value == Goal::homing ? is_homing(m, *seq) : is_synchronizing(m, *seq);
            }
            result["stats"] = json{{"nodes", stats.nodes}, {"depth", stats.depth}};
            out << result.dump(2) << "\n";
            return seq ? 0 : 1;
        }

        if (*check) {
            auto doc = detail::load_document(file);
            const Tfsm& m = detail::require_tfsm(doc);
            auto report = classify(m);
            if (!report.deterministic)
                throw unsupported_class_error(m.name + ": check requires a deterministic TFSM");
            TimedInputSeq seq = parse_timed_seq(m, seq_text);
            const bool verified =
                goal_value == Goal::homing ? is_homing(m, seq) : is_synchronizing(m, seq);
            json result{{"query", json{{"command", "check"}, {"goal", goal}}},
                        {"machine", m.name},
                        {"sequence", detail::sequence_json(m, seq)},
                        {"verified", verified}};
            out << result.dump(2) << "\n";
            return verified ? 0 : 1;
        }

        if (*simulate) {
            auto doc = detail::load_document(file);
            const Tfsm& m = detail::require_tfsm(doc);
            auto state = m.find_state(from_state);
            if (!state) throw contract_error(m.name + ": undeclared state '" + from_state + "'");
            TimedInputSeq seq = parse_timed_seq(m, seq_text);
            auto run = induce_run(m, *state, seq);
            json result{{"query", json{{"command", "simulate"}, {"from", from_state}}},
                        {"machine", m.name},
                        {"defined", run.has_value()}};
            if (run) {
                json steps = json::array();
                for (const auto& step : run->steps)
                    steps.push_back(json{{"input", m.inputs[step.input]},
                                         {"t", step.input_time.str_fraction()},
                                         {"state", m.states[step.next]},
                                         {"output", m.outputs[step.output]},
                                         {"tau", step.output_time.str_fraction()}});
                result["run"] = steps;
                result["final"] = m.states[run->final_state()];
                json response = json::array();
                for (const auto& group : group_outputs(*run).groups) {
                    json outputs = json::array();
                    for (OutputId o : group.outputs) outputs.push_back(m.outputs[o]);
                    response.push_back(json{{"t", group.at.str_fraction()}, {"outputs", outputs}});
                }
                result["response"] = response;
            }
            out << result.dump(2) << "\n";
            return run ? 0 : 1;
        }

        if (*region_cmd) {
            auto doc = detail::load_document(file);
            const Tfsm& m = detail::require_tfsm(doc);
            RegionFsm region = build_region_fsm(m);
            if (dot) {
                out << to_dot(region);
                return 0;
            }
            json inputs = json::array();
            for (const auto& ai : region.abstract_inputs)
                inputs.push_back(json{{"input", m.inputs[ai.input]}, {"guard", ai.guard.str()}});
            json outputs = json::array();
            for (const auto& ao : region.abstract_outputs)
                outputs.push_back(json{{"output", m.outputs[ao.output]}, {"delay", ao.delay}});
            json transitions = json::array();
            for (const auto& t : region.fsm.transitions)
                transitions.push_back(json{{"src", region.fsm.states[t.src]},
                                           {"input", region.fsm.inputs[t.input]},
                                           {"output", region.fsm.outputs[t.output]},
                                           {"dst", region.fsm.states[t.dst]}});
            json result{{"query", json{{"command", "region"}}},
                        {"machine", m.name},
                        {"states", region.fsm.states},
                        {"abstract_inputs", inputs},
                        {"abstract_outputs", outputs},
                        {"transitions", transitions}};
            out << result.dump(2) << "\n";
            return 0;
        }

        if (*gen) {
            out << serialize(MachineDocument{MachineDocument::Kind::tfsm, gen_bn(bn)});
            return 0;
        }

        if (*oracle_cmd) {
            auto doc = detail::load_document(file);
            const Tfsm& m = detail::require_tfsm(doc);
            OracleStats stats;
            auto seq = brute_force_derive(m, goal_value, max_len, &stats);
            json result{
                {"query",
                 json{{"command", "oracle"}, {"goal", goal}, {"max_len", max_len}}},
                {"machine", m.name},
                {"exists", seq.has_value()}};
            if (seq) {
                result["sequence"] = detail::sequence_json(m, *seq);
                result["verified"] =
                    goal_value == Goal::homing ? is_homing(m, *seq) : is_synchronizing(m, *seq);
            }
            result["stats"] = json{{"nodes", stats.sequences},
                                   {"depth", seq ? seq->size() : max_len}};
            out << result.dump(2) << "\n";
            return seq ? 0 : 1;
        }
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const contract_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const unsupported_class_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const budget_error& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}

} // namespace tfsm::cli
