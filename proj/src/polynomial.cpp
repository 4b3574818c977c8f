#include "polyinv/polynomial.hpp"

#include <cassert>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace polyinv {

Polynomial Polynomial::constant(std::size_t arity, const Rational& c, MonomialOrder order) {
    Polynomial p(arity, order);
    if (c != 0) p.terms_.emplace(Monomial(arity), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t index, MonomialOrder order) {
    assert(index < arity);
    Monomial m(arity);
    m[index] = 1;
    return from_monomial(m, Rational(1), order);
}

Polynomial Polynomial::from_monomial(const Monomial& m, const Rational& c, MonomialOrder order) {
    Polynomial p(m.arity(), order);
    if (c != 0) p.terms_.emplace(m, c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::set_coefficient(const Monomial& m, const Rational& c) {
    assert(m.arity() == arity_);
    if (c == 0)
        terms_.erase(m);
    else
        terms_[m] = c;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    assert(m.arity() == arity_);
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

const Monomial& Polynomial::leading_monomial() const {
    if (terms_.empty()) throw std::logic_error("leading monomial of zero polynomial");
    return terms_.rbegin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
    if (terms_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return terms_.rbegin()->second;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    assert(arity_ == rhs.arity_);
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    assert(arity_ == rhs.arity_);
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    Polynomial r(*this);
    r += rhs;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    Polynomial r(*this);
    r -= rhs;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    assert(arity_ == rhs.arity_);
    Polynomial r(arity_, order_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : rhs.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(arity_, order_);
    if (c == 0) return r;
    for (const auto& [m, coeff] : terms_) r.terms_.emplace(m, coeff * c);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = constant(arity_, Rational(1), order_);
    Polynomial base(*this);
    while (e) {
        if (e & 1) r = r * base;
        if (e >>= 1) base = base * base;
    }
    return r;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
    if (arity_ != rhs.arity_ || terms_.size() != rhs.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = rhs.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (!(it->first == jt->first) || it->second != jt->second) return false;
    }
    return true;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    Rational lc = leading_coefficient();
    return *this * (Rational(1) / lc);
}

Polynomial Polynomial::primitive_integer() const {
    if (is_zero()) return *this;
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& [m, c] : terms_) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    Polynomial r = *this * scale;
    if (r.leading_coefficient() < 0) r = -r;
    return r;
}

Polynomial Polynomial::with_order(MonomialOrder order) const {
    Polynomial r(arity_, order);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c);
    return r;
}

Polynomial Polynomial::extended(std::size_t new_arity) const {
    assert(new_arity >= arity_);
    Polynomial r(new_arity, order_);
    for (const auto& [m, c] : terms_) {
        std::vector<unsigned> e = m.exponents();
        e.resize(new_arity, 0);
        r.terms_.emplace(Monomial(std::move(e)), c);
    }
    return r;
}

Rational Polynomial::evaluate(const Point& point) const {
    if (point.size() != arity_) throw std::invalid_argument("evaluation point arity mismatch");
    // Power table per variable up to the maximal exponent in use.
    std::vector<std::vector<Rational>> powers(arity_);
    for (std::size_t i = 0; i < arity_; ++i) powers[i].push_back(Rational(1));
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
        Rational v = c;
        for (std::size_t i = 0; i < arity_; ++i) {
            unsigned e = m[i];
            if (e == 0) continue;
            auto& tab = powers[i];
            while (tab.size() <= e) tab.push_back(tab.back() * point[i]);
            v *= tab[e];
        }
        acc += v;
    }
    return acc;
}

std::uint64_t Polynomial::evaluate_mod(const std::vector<std::uint64_t>& residues, const PrimeField& field) const {
    if (residues.size() != arity_) throw std::invalid_argument("evaluation point arity mismatch");
    std::uint64_t acc = 0;
    for (const auto& [m, c] : terms_) {
        std::uint64_t v = field.reduce(c);
        for (std::size_t i = 0; i < arity_; ++i)
            if (m[i]) v = field.mul(v, field.pow(residues[i], m[i]));
        acc = field.add(acc, v);
    }
    return acc;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
    if (images.size() != arity_) throw std::invalid_argument("substitution image count mismatch");
    const std::size_t out_arity = images.empty() ? arity_ : images[0].arity();
    Polynomial acc(out_arity, order_);
    for (const auto& [m, c] : terms_) {
        Polynomial term = Polynomial::constant(out_arity, c, order_);
        for (std::size_t i = 0; i < arity_; ++i)
            if (m[i]) term = term * images[i].pow(m[i]);
        acc += term;
    }
    return acc;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
    if (names.size() != arity_) throw std::invalid_argument("name list arity mismatch");
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Leading term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool printed_coeff = false;
        if (a != 1 || m.is_constant()) {
            os << polyinv::to_string(a);
            printed_coeff = true;
        }
        bool first_factor = !printed_coeff;
        for (std::size_t i = 0; i < arity_; ++i) {
            if (m[i] == 0) continue;
            if (!first_factor) os << "*";
            first_factor = false;
            os << names[i];
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Infix parser

namespace {

struct PolyParser {
    const std::string& text;
    const std::vector<std::string>& names;
    MonomialOrder order;
    std::size_t pos = 0;
    std::size_t line = 1, col = 1;

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << "polynomial syntax error at " << line << ":" << col << ": " << msg;
        throw std::invalid_argument(os.str());
    }

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
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) advance();
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            advance();
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    Polynomial parse_expr() {
        Polynomial acc = parse_term_signed();
        while (true) {
            char c = peek();
            if (c == '+') {
                advance();
                acc += parse_term();
            } else if (c == '-') {
                advance();
                acc -= parse_term();
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial parse_term_signed() {
        if (peek() == '-') {
            advance();
            return -parse_term();
        }
        if (peek() == '+') advance();
        return parse_term();
    }

    Polynomial parse_term() {
        Polynomial acc = parse_power();
        while (true) {
            char c = peek();
            if (c == '*') {
                advance();
                acc = acc * parse_power();
            } else if (c == '/') {
                advance();
                Polynomial d = parse_power();
                if (!d.is_constant()) fail("division by a non-constant is not polynomial");
                Rational dc = d.is_zero() ? Rational(0) : d.terms().begin()->second;
                if (dc == 0) fail("division by zero");
                acc = acc * (Rational(1) / dc);
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial parse_power() {
        Polynomial base = parse_atom();
        if (peek() == '^') {
            advance();
            skip_ws();
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) advance();
            if (start == pos) fail("expected nonnegative integer exponent after '^'");
            if (pos - start > 4) fail("exponent too large");
            unsigned long e = std::stoul(text.substr(start, pos - start));
            if (e > 1000) fail("exponent too large");
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Polynomial parse_atom() {
        char c = peek();
        if (c == '(') {
            advance();
            Polynomial inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == '-') {
            advance();
            return -parse_atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) advance();
            Integer num(text.substr(start, pos - start));
            return Polynomial::constant(names.size(), Rational(num), order);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                advance();
            std::string name = text.substr(start, pos - start);
            for (std::size_t i = 0; i < names.size(); ++i)
                if (names[i] == name) return Polynomial::variable(names.size(), i, order);
            fail("unknown variable '" + name + "'");
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names,
                            MonomialOrder order) {
    PolyParser parser{text, names, order};
    Polynomial p = parser.parse_expr();
    parser.skip_ws();
    if (parser.pos != text.size()) parser.fail("trailing input");
    return p;
}

}  // namespace polyinv
