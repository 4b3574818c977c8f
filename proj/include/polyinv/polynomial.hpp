#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "polyinv/monomial.hpp"
#include "polyinv/primefield.hpp"
#include "polyinv/rational.hpp"

namespace polyinv {

struct MonomialCompare {
    MonomialOrder order;
    bool operator()(const Monomial& a, const Monomial& b) const { return monomial_less(a, b, order); }
};

/// Sparse multivariate polynomial with exact rational coefficients over a
/// fixed ambient arity. Terms are kept ascending under the active monomial
/// order; no zero coefficient is ever stored.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, MonomialCompare>;

    explicit Polynomial(std::size_t arity, MonomialOrder order = MonomialOrder::degrevlex())
        : arity_(arity), order_(order), terms_(MonomialCompare{order}) {}

    static Polynomial zero(std::size_t arity, MonomialOrder order = MonomialOrder::degrevlex()) {
        return Polynomial(arity, order);
    }
    static Polynomial constant(std::size_t arity, const Rational& c,
                               MonomialOrder order = MonomialOrder::degrevlex());
    static Polynomial variable(std::size_t arity, std::size_t index,
                               MonomialOrder order = MonomialOrder::degrevlex());
    static Polynomial from_monomial(const Monomial& m, const Rational& c,
                                    MonomialOrder order = MonomialOrder::degrevlex());

    std::size_t arity() const { return arity_; }
    const MonomialOrder& order() const { return order_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::size_t term_count() const { return terms_.size(); }
    unsigned total_degree() const;

    /// Coefficient of a monomial (zero when absent).
    Rational coefficient(const Monomial& m) const;
    void set_coefficient(const Monomial& m, const Rational& c);
    void add_term(const Monomial& m, const Rational& c);

    const Monomial& leading_monomial() const;
    const Rational& leading_coefficient() const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial operator*(const Rational& c) const;
    Polynomial pow(unsigned e) const;
    bool operator==(const Polynomial& rhs) const;
    bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }

    /// Monic rescale (leading coefficient 1); zero stays zero.
    Polynomial monic() const;
    /// Scales by the lcm of denominators over the gcd of numerators and
    /// normalizes the sign: primitive integer content, canonical up to nothing.
    Polynomial primitive_integer() const;

    Polynomial with_order(MonomialOrder order) const;
    /// Same polynomial viewed in a wider ring (new variables appended).
    Polynomial extended(std::size_t new_arity) const;

    Rational evaluate(const Point& point) const;
    /// Evaluation with every coefficient and coordinate reduced into F_p.
    /// Throws UnluckyPrimeError when a denominator vanishes mod p.
    std::uint64_t evaluate_mod(const std::vector<std::uint64_t>& residues, const PrimeField& field) const;

    /// Simultaneous substitution x_i -> images[i], expanded and normalized.
    Polynomial substitute(const std::vector<Polynomial>& images) const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    std::size_t arity_;
    MonomialOrder order_;
    TermMap terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

/// Full infix parser for the plain-text polynomial syntax
/// (`x^2*y - 3/2*x + 1`); names fixes the ambient variables. Reports
/// line/column on error via std::invalid_argument.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names,
                            MonomialOrder order = MonomialOrder::degrevlex());

}  // namespace polyinv
