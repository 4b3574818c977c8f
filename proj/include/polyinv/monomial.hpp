#pragma once

#include <cstddef>
#include <vector>

namespace polyinv {

/// Exponent vector over a fixed ambient variable list.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t arity) : exps_(arity, 0) {}
    explicit Monomial(std::vector<unsigned> exps) : exps_(std::move(exps)) {}

    std::size_t arity() const { return exps_.size(); }
    unsigned operator[](std::size_t i) const { return exps_[i]; }
    unsigned& operator[](std::size_t i) { return exps_[i]; }
    const std::vector<unsigned>& exponents() const { return exps_; }

    unsigned degree() const {
        unsigned d = 0;
        for (unsigned e : exps_) d += e;
        return d;
    }
    bool is_constant() const { return degree() == 0; }

    bool divides(const Monomial& other) const;
    Monomial operator*(const Monomial& other) const;
    /// Exact quotient; caller guarantees divisibility.
    Monomial operator/(const Monomial& other) const;
    friend Monomial lcm(const Monomial& a, const Monomial& b);
    /// True when the supports are disjoint (gcd is 1).
    friend bool coprime(const Monomial& a, const Monomial& b);

    bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
    bool operator!=(const Monomial& other) const { return exps_ != other.exps_; }
    // Plain container order, independent of any monomial order.
    bool operator<(const Monomial& other) const { return exps_ < other.exps_; }

private:
    std::vector<unsigned> exps_;
};

struct MonomialOrder {
    enum class Kind { degrevlex, lex, block_elim };
    Kind kind = Kind::degrevlex;
    // block_elim: variables at index >= split dominate (compared degrevlex),
    // ties fall back to degrevlex on the leading block. Used to eliminate
    // auxiliary variables appended at the end of the ring.
    std::size_t split = 0;

    static MonomialOrder degrevlex() { return {Kind::degrevlex, 0}; }
    static MonomialOrder lex() { return {Kind::lex, 0}; }
    static MonomialOrder block_elim(std::size_t split) { return {Kind::block_elim, split}; }

    bool operator==(const MonomialOrder&) const = default;
};

/// Strict a < b under the given order.
bool monomial_less(const Monomial& a, const Monomial& b, const MonomialOrder& order);

/// All monomials of total degree <= d in var_count variables, sorted
/// ascending under the order; the count is C(var_count + d, d).
std::vector<Monomial> monomials_up_to_degree(std::size_t var_count, unsigned d, const MonomialOrder& order);

}  // namespace polyinv
