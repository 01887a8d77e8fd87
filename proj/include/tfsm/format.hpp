/* format.hpp -- line-oriented machine description format
 *
 *   tfsm S1                         fsm M1            pfa A
 *   states s0 s1 s2                 states ...        states ...
 *   inputs i1 i2                    inputs ...        inputs ...
 *   outputs o1 o2 o3                outputs ...       trans q0 a q1
 *   trans s0 i1 [1,3) o1 4 s1       trans s0 i1 o1 s1
 *   trans s0 i2 [1,1] o1 2 s0       # comment
 *
 * `fsm` transitions omit guard and delay; `pfa` blocks omit the outputs
 * header and the output/guard/delay columns. Parse errors carry position
 * (line, column) and the expected token; semantic errors name the offending
 * id. parse(serialize(parse(text))) == parse(text).
 */
#pragma once

#include "core.hpp"
#include "semantics.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tfsm {

struct parse_error : tfsm_error {
    std::size_t line;
    std::size_t column;

    parse_error(std::size_t line_, std::size_t column_, const std::string& message)
        : tfsm_error("line " + std::to_string(line_) + ", column " + std::to_string(column_) +
                     ": " + message),
          line(line_),
          column(column_) {}
};

struct MachineDocument {
    enum class Kind { tfsm, fsm, pfa };

    Kind kind = Kind::tfsm;
    std::variant<Tfsm, Fsm, Pfa> machine;

    const std::string& name() const {
        switch (kind) {
        case Kind::tfsm: return std::get<Tfsm>(machine).name;
        case Kind::fsm: return std::get<Fsm>(machine).name;
        default: return std::get<Pfa>(machine).name;
        }
    }

    friend bool operator==(const MachineDocument&, const MachineDocument&) = default;
};

namespace detail {

struct Token {
    std::string text;
    std::size_t column; // 1-based
};

// '#' starts a comment; tokens are whitespace-separated.
inline std::vector<Token> tokenize_line(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        if (line[pos] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[pos]))) {
            ++pos;
            continue;
        }
        std::size_t start = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])) &&
               line[pos] != '#')
            ++pos;
        tokens.push_back(Token{std::string(line.substr(start, pos - start)), start + 1});
    }
    return tokens;
}

inline long long parse_guard_integer(std::string_view text, std::size_t line, std::size_t column) {
    if (text.empty()) throw parse_error(line, column, "expected integer guard bound");
    long long value = 0;
    for (char c : text) {
        if (c < '0' || c > '9')
            throw parse_error(line, column, "expected integer guard bound, got '" +
                                                std::string(text) + "'");
        const long long d = c - '0';
        if (value > (std::numeric_limits<long long>::max() - d) / 10)
            throw parse_error(line, column, "guard bound out of range");
        value = value * 10 + d;
    }
    return value;
}

inline TimedGuard parse_guard(const Token& token, std::size_t line) {
    const std::string& text = token.text;
    if (text.size() < 5 || text.front() != '[')
        throw parse_error(line, token.column, "expected guard like [1,3) or [1,1], got '" + text + "'");
    const char closing = text.back();
    if (closing != ')' && closing != ']')
        throw parse_error(line, token.column, "guard must end with ')' or ']'");
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw parse_error(line, token.column, "guard is missing ','");
    const long long lo = parse_guard_integer(std::string_view(text).substr(1, comma - 1), line,
                                             token.column + 1);
    const long long hi = parse_guard_integer(
        std::string_view(text).substr(comma + 1, text.size() - comma - 2), line,
        token.column + comma + 1);
    try {
        if (closing == ']') {
            if (lo != hi)
                throw structural_error("closed guard [" + std::to_string(lo) + "," +
                                       std::to_string(hi) + "] must be a point interval");
            return TimedGuard::point(lo);
        }
        return TimedGuard::half_open(lo, hi);
    } catch (const structural_error& e) {
        throw parse_error(line, token.column, e.what());
    }
}

} // namespace detail

inline MachineDocument parse_machine(std::string_view text) {
    std::istringstream stream{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;

    std::optional<MachineDocument::Kind> kind;
    std::string name;
    std::vector<std::string> states, inputs, outputs;
    bool have_states = false, have_inputs = false, have_outputs = false;
    std::vector<std::vector<detail::Token>> trans_lines;
    std::vector<std::size_t> trans_line_numbers;

    auto expect_unique_names = [&](const std::vector<detail::Token>& tokens, std::size_t ln) {
        std::vector<std::string> names;
        for (std::size_t k = 1; k < tokens.size(); ++k) {
            for (const auto& existing : names)
                if (existing == tokens[k].text)
                    throw parse_error(ln, tokens[k].column, "duplicate id '" + tokens[k].text + "'");
            names.push_back(tokens[k].text);
        }
        if (names.empty())
            throw parse_error(ln, tokens[0].column, "expected at least one id after '" +
                                                        tokens[0].text + "'");
        return names;
    };

    while (std::getline(stream, raw)) {
        ++line_no;
        auto tokens = detail::tokenize_line(raw);
        if (tokens.empty()) continue;
        const auto& head = tokens[0];

        if (!kind) {
            if (head.text == "tfsm")
                kind = MachineDocument::Kind::tfsm;
            else if (head.text == "fsm")
                kind = MachineDocument::Kind::fsm;
            else if (head.text == "pfa")
                kind = MachineDocument::Kind::pfa;
            else
                throw parse_error(line_no, head.column,
                                  "expected machine kind 'tfsm', 'fsm' or 'pfa', got '" +
                                      head.text + "'");
            if (tokens.size() != 2)
                throw parse_error(line_no, head.column, "expected '" + head.text + " NAME'");
            name = tokens[1].text;
            continue;
        }

        if (head.text == "states") {
            if (have_states) throw parse_error(line_no, head.column, "duplicate 'states' line");
            states = expect_unique_names(tokens, line_no);
            have_states = true;
        } else if (head.text == "inputs") {
            if (have_inputs) throw parse_error(line_no, head.column, "duplicate 'inputs' line");
            inputs = expect_unique_names(tokens, line_no);
            have_inputs = true;
        } else if (head.text == "outputs") {
            if (kind == MachineDocument::Kind::pfa)
                throw parse_error(line_no, head.column, "pfa blocks have no 'outputs' line");
            if (have_outputs) throw parse_error(line_no, head.column, "duplicate 'outputs' line");
            outputs = expect_unique_names(tokens, line_no);
            have_outputs = true;
        } else if (head.text == "trans") {
            trans_lines.push_back(tokens);
            trans_line_numbers.push_back(line_no);
        } else {
            throw parse_error(line_no, head.column,
                              "expected 'states', 'inputs', 'outputs' or 'trans', got '" +
                                  head.text + "'");
        }
    }

    if (!kind) throw parse_error(1, 1, "empty document: expected a machine header");
    if (!have_states) throw parse_error(line_no + 1, 1, "missing 'states' line");
    if (!have_inputs) throw parse_error(line_no + 1, 1, "missing 'inputs' line");
    if (kind != MachineDocument::Kind::pfa && !have_outputs)
        throw parse_error(line_no + 1, 1, "missing 'outputs' line");

    auto resolve = [&](const std::vector<std::string>& names, const detail::Token& token,
                       std::size_t ln, const char* what) -> std::size_t {
        for (std::size_t k = 0; k < names.size(); ++k)
            if (names[k] == token.text) return k;
        throw parse_error(ln, token.column,
                          std::string("undeclared ") + what + " '" + token.text + "'");
    };

    MachineDocument doc;
    doc.kind = *kind;
    switch (*kind) {
    case MachineDocument::Kind::tfsm: {
        Tfsm m;
        m.name = name;
        m.states = states;
        m.inputs = inputs;
        m.outputs = outputs;
        for (std::size_t k = 0; k < trans_lines.size(); ++k) {
            const auto& tokens = trans_lines[k];
            const std::size_t ln = trans_line_numbers[k];
            if (tokens.size() != 7)
                throw parse_error(ln, tokens[0].column,
                                  "expected 'trans SRC INPUT GUARD OUTPUT DELAY DST'");
            TfsmTransition t;
            t.src = resolve(states, tokens[1], ln, "state");
            t.input = resolve(inputs, tokens[2], ln, "input");
            t.guard = detail::parse_guard(tokens[3], ln);
            t.output = resolve(outputs, tokens[4], ln, "output");
            Rational d;
            try {
                d = Rational::parse(tokens[5].text);
            } catch (const std::exception&) {
                throw parse_error(ln, tokens[5].column,
                                  "expected positive integer delay, got '" + tokens[5].text + "'");
            }
            if (!d.is_integer() || d < Rational(1))
                throw parse_error(ln, tokens[5].column, "delay must be a positive integer");
            t.delay = d.numerator();
            t.dst = resolve(states, tokens[6], ln, "state");
            m.transitions.push_back(t);
        }
        doc.machine = std::move(m);
        break;
    }
    case MachineDocument::Kind::fsm: {
        Fsm m;
        m.name = name;
        m.states = states;
        m.inputs = inputs;
        m.outputs = outputs;
        for (std::size_t k = 0; k < trans_lines.size(); ++k) {
            const auto& tokens = trans_lines[k];
            const std::size_t ln = trans_line_numbers[k];
            if (tokens.size() != 5)
                throw parse_error(ln, tokens[0].column, "expected 'trans SRC INPUT OUTPUT DST'");
            FsmTransition t;
            t.src = resolve(states, tokens[1], ln, "state");
            t.input = resolve(inputs, tokens[2], ln, "input");
            t.output = resolve(outputs, tokens[3], ln, "output");
            t.dst = resolve(states, tokens[4], ln, "state");
            m.transitions.push_back(t);
        }
        doc.machine = std::move(m);
        break;
    }
    case MachineDocument::Kind::pfa: {
        Pfa m;
        m.name = name;
        m.states = states;
        m.letters = inputs;
        for (std::size_t k = 0; k < trans_lines.size(); ++k) {
            const auto& tokens = trans_lines[k];
            const std::size_t ln = trans_line_numbers[k];
            if (tokens.size() != 4)
                throw parse_error(ln, tokens[0].column, "expected 'trans SRC LETTER DST'");
            PfaTransition t;
            t.src = resolve(states, tokens[1], ln, "state");
            t.letter = resolve(inputs, tokens[2], ln, "letter");
            t.dst = resolve(states, tokens[3], ln, "state");
            m.transitions.push_back(t);
        }
        try {
            m.validate();
        } catch (const structural_error& e) {
            throw parse_error(line_no, 1, e.what());
        }
        doc.machine = std::move(m);
        break;
    }
    }
    return doc;
}

namespace detail {

inline void write_names(std::ostream& os, const char* label, const std::vector<std::string>& names) {
    os << label;
    for (const auto& n : names) os << ' ' << n;
    os << '\n';
}

} // namespace detail

inline std::string serialize(const MachineDocument& doc) {
    std::ostringstream os;
    switch (doc.kind) {
    case MachineDocument::Kind::tfsm: {
        const auto& m = std::get<Tfsm>(doc.machine);
        os << "tfsm " << m.name << '\n';
        detail::write_names(os, "states", m.states);
        detail::write_names(os, "inputs", m.inputs);
        detail::write_names(os, "outputs", m.outputs);
        for (const auto& t : m.transitions)
            os << "trans " << m.states[t.src] << ' ' << m.inputs[t.input] << ' ' << t.guard.str()
               << ' ' << m.outputs[t.output] << ' ' << t.delay << ' ' << m.states[t.dst] << '\n';
        break;
    }
    case MachineDocument::Kind::fsm: {
        const auto& m = std::get<Fsm>(doc.machine);
        os << "fsm " << m.name << '\n';
        detail::write_names(os, "states", m.states);
        detail::write_names(os, "inputs", m.inputs);
        detail::write_names(os, "outputs", m.outputs);
        for (const auto& t : m.transitions)
            os << "trans " << m.states[t.src] << ' ' << m.inputs[t.input] << ' '
               << m.outputs[t.output] << ' ' << m.states[t.dst] << '\n';
        break;
    }
    case MachineDocument::Kind::pfa: {
        const auto& m = std::get<Pfa>(doc.machine);
        os << "pfa " << m.name << '\n';
        detail::write_names(os, "states", m.states);
        detail::write_names(os, "inputs", m.letters);
        for (const auto& t : m.transitions)
            os << "trans " << m.states[t.src] << ' ' << m.letters[t.letter] << ' '
               << m.states[t.dst] << '\n';
        break;
    }
    }
    return os.str();
}

// Timed sequence arguments: "i1@21/10,i2@42/10" (rationals or exact decimals).
inline TimedInputSeq parse_timed_seq(const Tfsm& m, std::string_view text) {
    TimedInputSeq seq;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view item = text.substr(pos, end - pos);
        const std::size_t at = item.find('@');
        if (at == std::string_view::npos)
            throw contract_error("timed input '" + std::string(item) + "' is missing '@'");
        auto input = m.find_input(item.substr(0, at));
        if (!input)
            throw contract_error("undeclared input '" + std::string(item.substr(0, at)) + "'");
        Rational t;
        try {
            t = Rational::parse(item.substr(at + 1));
        } catch (const std::exception& e) {
            throw contract_error("bad timestamp in '" + std::string(item) + "': " + e.what());
        }
        seq.push_back(TimedInput{*input, t});
        pos = end + 1;
    }
    validate_sequence(m, seq);
    return seq;
}

} // namespace tfsm
