#include "polyinv/loop_model.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace polyinv {

std::string to_string(InvariantMode mode) {
    switch (mode) {
        case InvariantMode::plain: return "plain";
        case InvariantMode::inductive: return "inductive";
        case InvariantMode::absolute: return "absolute";
    }
    return "?";
}

InvariantMode invariant_mode_from_string(const std::string& text) {
    if (text == "plain") return InvariantMode::plain;
    if (text == "inductive") return InvariantMode::inductive;
    if (text == "absolute") return InvariantMode::absolute;
    throw std::invalid_argument("unknown invariant mode '" + text + "'");
}

bool ConstraintSet::satisfied_at(const Point& point) const {
    for (const Polynomial& p : equations)
        if (p.evaluate(point) != 0) return false;
    for (const Polynomial& p : inequations)
        if (p.evaluate(point) == 0) return false;
    return true;
}

std::vector<std::string> LoopSystem::ring_names() const {
    std::vector<std::string> names = variables;
    names.insert(names.end(), parameters.begin(), parameters.end());
    return names;
}

std::size_t LoopSystem::variable_index(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i] == name) return i;
    throw std::invalid_argument("unknown loop variable '" + name + "'");
}

std::vector<Polynomial> LoopSystem::branch_images(std::size_t branch_index) const {
    const Branch& b = branches.at(branch_index);
    std::vector<Polynomial> images = b.assignment;
    for (std::size_t i = 0; i < parameters.size(); ++i)
        images.push_back(Polynomial::variable(arity(), variables.size() + i));
    return images;
}

bool LoopSystem::supports(InvariantMode mode) const {
    bool conditions_algebraic = true;
    for (const Branch& b : branches) conditions_algebraic &= b.condition.algebraic();
    switch (mode) {
        case InvariantMode::plain:
            return guard.algebraic() && conditions_algebraic;
        case InvariantMode::inductive:
            return conditions_algebraic;
        case InvariantMode::absolute:
            return true;
    }
    return false;
}

LoopParseError::LoopParseError(std::size_t line_, std::size_t col_, const std::string& msg)
    : std::runtime_error("loop syntax error at " + std::to_string(line_) + ":" +
                         std::to_string(col_) + ": " + msg),
      line(line_),
      col(col_) {}

namespace {

struct Lexer {
    const std::string& text;
    std::size_t pos = 0, line = 1, col = 1;

    [[noreturn]] void fail(const std::string& msg) const { throw LoopParseError(line, col, msg); }

    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws() {
        while (pos < text.size()) {
            char c = text[pos];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '#') {
                while (pos < text.size() && text[pos] != '\n') advance();
            } else {
                break;
            }
        }
    }

    bool done() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool try_eat(const std::string& token) {
        skip_ws();
        if (text.compare(pos, token.size(), token) == 0) {
            for (std::size_t i = 0; i < token.size(); ++i) advance();
            return true;
        }
        return false;
    }

    void expect(const std::string& token) {
        if (!try_eat(token)) fail("expected '" + token + "'");
    }

    std::string identifier() {
        skip_ws();
        if (pos >= text.size() ||
            !(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            fail("expected identifier");
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            advance();
        return text.substr(start, pos - start);
    }

    /// Raw text until one of the stop characters at nesting depth 0.
    std::string until(const std::string& stops) {
        skip_ws();
        std::size_t start = pos;
        int depth = 0;
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (depth == 0 && stops.find(c) != std::string::npos) break;
            advance();
        }
        std::string out = text.substr(start, pos - start);
        while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
        return out;
    }
};

// One constraint atom: lhs (= | != | < | <= | > | >=) rhs, or `true`.
void parse_constraint_list(Lexer& lx, const std::vector<std::string>& names, ConstraintSet& out,
                           char terminator, bool allow_order_atoms) {
    if (lx.try_eat("true")) return;
    while (true) {
        std::size_t at_line = lx.line, at_col = lx.col;
        std::string lhs = lx.until("=!<>" + std::string(1, terminator));
        char c = lx.peek();
        std::string op;
        if (c == '=') {
            lx.advance();
            op = "=";
        } else if (c == '!') {
            lx.advance();
            if (lx.peek() != '=') lx.fail("expected '=' after '!'");
            lx.advance();
            op = "!=";
        } else if (c == '<' || c == '>') {
            lx.advance();
            op = std::string(1, c);
            if (lx.peek() == '=') {
                lx.advance();
                op += "=";
            }
        } else {
            lx.fail("expected a relation in constraint");
        }
        std::string rhs = lx.until("," + std::string(1, terminator));
        if (lhs.empty() || rhs.empty()) throw LoopParseError(at_line, at_col, "empty constraint side");
        if (op == "=" || op == "!=") {
            Polynomial p(names.size());
            try {
                p = parse_polynomial(lhs, names) - parse_polynomial(rhs, names);
            } catch (const std::invalid_argument& e) {
                throw LoopParseError(at_line, at_col, e.what());
            }
            if (op == "=")
                out.equations.push_back(std::move(p));
            else
                out.inequations.push_back(std::move(p));
        } else {
            if (!allow_order_atoms)
                throw LoopParseError(at_line, at_col, "order relation '" + op +
                                                          "' is not an algebraic condition here");
            out.unsupported_atoms.push_back(lhs + " " + op + " " + rhs);
        }
        if (lx.peek() == ',') {
            lx.advance();
            continue;
        }
        break;
    }
}

void extract_initial_values(LoopSystem& loop) {
    const std::size_t nv = loop.variables.size();
    loop.initial_values.assign(nv, {});
    std::vector<bool> have(nv, false);
    for (const Polynomial& eq : loop.init.equations) {
        // Shape x_i - c or x_i - a_j, up to scaling.
        if (eq.is_zero() || eq.total_degree() != 1) continue;
        std::size_t var_idx = nv;
        Rational var_coeff;
        bool single_var = true;
        for (const auto& [m, c] : eq.terms()) {
            if (m.is_constant()) continue;
            for (std::size_t i = 0; i < nv; ++i) {
                if (m[i] > 0) {
                    if (m.degree() != 1) single_var = false;
                    if (var_idx != nv) single_var = false;
                    var_idx = i;
                    var_coeff = c;
                }
            }
        }
        if (!single_var || var_idx == nv || have[var_idx]) continue;
        Polynomial rest = eq - Polynomial::variable(loop.arity(), var_idx) * var_coeff;
        // x = -rest / coeff
        Polynomial value = rest * (Rational(-1) / var_coeff);
        if (value.is_constant()) {
            loop.initial_values[var_idx].constant =
                value.is_zero() ? Rational(0) : value.terms().begin()->second;
            have[var_idx] = true;
        } else if (value.term_count() == 1) {
            const auto& [m, c] = *value.terms().begin();
            if (c == 1 && m.degree() == 1) {
                for (std::size_t j = 0; j < loop.parameters.size(); ++j) {
                    if (m[nv + j] == 1) {
                        loop.initial_values[var_idx].parameter = j;
                        have[var_idx] = true;
                    }
                }
            }
        }
    }
    for (std::size_t i = 0; i < nv; ++i)
        if (!have[i])
            throw LoopParseError(0, 0,
                                 "init must give variable '" + loop.variables[i] +
                                     "' an explicit rational or parameter value");
}

}  // namespace

LoopSystem parse_loop(const std::string& text) {
    Lexer lx{text};
    LoopSystem loop;

    lx.expect("vars");
    while (lx.peek() != ';') {
        loop.variables.push_back(lx.identifier());
    }
    lx.expect(";");
    if (loop.variables.empty()) lx.fail("at least one loop variable is required");

    if (lx.try_eat("params")) {
        while (lx.peek() != ';') loop.parameters.push_back(lx.identifier());
        lx.expect(";");
    }

    {
        std::set<std::string> seen;
        for (const std::string& n : loop.variables)
            if (!seen.insert(n).second) lx.fail("duplicate variable '" + n + "'");
        for (const std::string& n : loop.parameters)
            if (!seen.insert(n).second) lx.fail("duplicate name '" + n + "'");
    }

    const std::vector<std::string> names = loop.ring_names();

    lx.expect("init");
    parse_constraint_list(lx, names, loop.init, ';', false);
    lx.expect(";");

    lx.expect("guard");
    parse_constraint_list(lx, names, loop.guard, ';', true);
    lx.expect(";");

    while (lx.try_eat("branch")) {
        Branch branch;
        lx.expect("when");
        parse_constraint_list(lx, names, branch.condition, '{', true);
        lx.expect("{");
        branch.assignment.assign(loop.variables.size(), Polynomial(loop.arity()));
        std::vector<bool> assigned(loop.variables.size(), false);
        while (lx.peek() != '}') {
            std::size_t at_line = lx.line, at_col = lx.col;
            std::string name = lx.identifier();
            std::size_t idx;
            try {
                idx = loop.variable_index(name);
            } catch (const std::invalid_argument&) {
                throw LoopParseError(at_line, at_col, "unknown loop variable '" + name + "'");
            }
            lx.expect(":=");
            std::string rhs = lx.until(";");
            lx.expect(";");
            try {
                branch.assignment[idx] = parse_polynomial(rhs, names);
            } catch (const std::invalid_argument& e) {
                throw LoopParseError(at_line, at_col, e.what());
            }
            if (assigned[idx]) throw LoopParseError(at_line, at_col, "variable assigned twice");
            assigned[idx] = true;
        }
        lx.expect("}");
        for (std::size_t i = 0; i < loop.variables.size(); ++i)
            if (!assigned[i])
                lx.fail("branch does not assign variable '" + loop.variables[i] + "'");
        loop.branches.push_back(std::move(branch));
    }
    if (!lx.done()) lx.fail("trailing input after last branch");
    if (loop.branches.empty()) lx.fail("at least one branch is required");

    extract_initial_values(loop);
    return loop;
}

namespace {

std::string constraints_to_string(const ConstraintSet& cs, const std::vector<std::string>& names) {
    if (cs.trivially_true()) return "true";
    std::vector<std::string> atoms;
    for (const Polynomial& p : cs.equations) atoms.push_back(p.to_string(names) + " = 0");
    for (const Polynomial& p : cs.inequations) atoms.push_back(p.to_string(names) + " != 0");
    for (const std::string& raw : cs.unsupported_atoms) atoms.push_back(raw);
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += ", ";
        out += atoms[i];
    }
    return out;
}

}  // namespace

std::string pretty_print(const LoopSystem& loop) {
    std::ostringstream os;
    const std::vector<std::string> names = loop.ring_names();
    os << "vars";
    for (const std::string& v : loop.variables) os << " " << v;
    os << ";\n";
    if (!loop.parameters.empty()) {
        os << "params";
        for (const std::string& p : loop.parameters) os << " " << p;
        os << ";\n";
    }
    os << "init " << constraints_to_string(loop.init, names) << ";\n";
    os << "guard " << constraints_to_string(loop.guard, names) << ";\n";
    for (const Branch& b : loop.branches) {
        os << "branch when " << constraints_to_string(b.condition, names) << " {\n";
        for (std::size_t i = 0; i < loop.variables.size(); ++i)
            os << "  " << loop.variables[i] << " := " << b.assignment[i].to_string(names) << ";\n";
        os << "}\n";
    }
    return os.str();
}

std::vector<ExclusivityRefutation> validate_exclusivity(const LoopSystem& loop,
                                                        const std::vector<Point>& witnesses) {
    std::vector<ExclusivityRefutation> out;
    for (std::size_t w = 0; w < witnesses.size(); ++w) {
        for (std::size_t i = 0; i < loop.branches.size(); ++i) {
            if (!loop.branches[i].condition.algebraic()) continue;
            if (!loop.branches[i].condition.satisfied_at(witnesses[w])) continue;
            for (std::size_t j = i + 1; j < loop.branches.size(); ++j) {
                if (!loop.branches[j].condition.algebraic()) continue;
                if (loop.branches[j].condition.satisfied_at(witnesses[w]))
                    out.push_back({w, i, j});
            }
        }
    }
    return out;
}

}  // namespace polyinv
