/* dot.hpp -- Graphviz export
 *
 * Timed transitions are labeled "i,[u,v)/o,+d" so a rendered machine can be
 * eyeballed against the usual diagram notation; region FSMs carry their
 * abstract "(i,g)/(o,d)" labels.
 */
#pragma once

#include "core.hpp"
#include "region.hpp"
#include "successor_tree.hpp"

#include <sstream>
#include <string>

namespace tfsm {

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace detail

inline std::string to_dot(const Tfsm& m) {
    std::ostringstream os;
    os << "digraph \"" << detail::dot_escape(m.name) << "\" {\n  rankdir=LR;\n";
    for (const auto& s : m.states) os << "  \"" << detail::dot_escape(s) << "\";\n";
    for (const auto& t : m.transitions)
        os << "  \"" << detail::dot_escape(m.states[t.src]) << "\" -> \""
           << detail::dot_escape(m.states[t.dst]) << "\" [label=\""
           << detail::dot_escape(m.inputs[t.input] + "," + t.guard.str() + "/" +
                                 m.outputs[t.output] + ",+" + std::to_string(t.delay))
           << "\"];\n";
    os << "}\n";
    return os.str();
}

inline std::string to_dot(const Fsm& m) {
    std::ostringstream os;
    os << "digraph \"" << detail::dot_escape(m.name) << "\" {\n  rankdir=LR;\n";
    for (const auto& s : m.states) os << "  \"" << detail::dot_escape(s) << "\";\n";
    for (const auto& t : m.transitions)
        os << "  \"" << detail::dot_escape(m.states[t.src]) << "\" -> \""
           << detail::dot_escape(m.states[t.dst]) << "\" [label=\""
           << detail::dot_escape(m.inputs[t.input] + "/" + m.outputs[t.output]) << "\"];\n";
    os << "}\n";
    return os.str();
}

inline std::string to_dot(const RegionFsm& region) { return to_dot(region.fsm); }

inline std::string to_dot(const Tfsm& m, const TreeTrace& trace) {
    auto label_of = [&](const StateBlocks& label) {
        std::string out;
        for (const auto& block : label) {
            if (!out.empty()) out += " ";
            out += "{";
            for (std::size_t k = 0; k < block.size(); ++k) {
                if (k) out += ",";
                out += m.states[block[k]];
            }
            out += "}";
        }
        return out;
    };
    std::ostringstream os;
    os << "digraph \"successor-tree " << detail::dot_escape(m.name) << "\" {\n  rankdir=TB;\n";
    for (std::size_t k = 0; k < trace.nodes.size(); ++k) {
        const auto& node = trace.nodes[k];
        os << "  n" << k << " [label=\"" << detail::dot_escape(label_of(node.label)) << "\"";
        if (node.status == TreeTrace::Node::Status::rule1)
            os << ", peripheries=2";
        else if (node.status == TreeTrace::Node::Status::rule2)
            os << ", style=dashed";
        os << "];\n";
        if (node.parent)
            os << "  n" << *node.parent << " -> n" << k << " [label=\""
               << detail::dot_escape(node.via) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace tfsm
