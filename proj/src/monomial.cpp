#include "polyinv/monomial.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace polyinv {

bool Monomial::divides(const Monomial& other) const {
    assert(arity() == other.arity());
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
    assert(arity() == other.arity());
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
    return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
    assert(other.divides(*this));
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
    return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
    assert(a.arity() == b.arity());
    Monomial r(a);
    for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
    assert(a.arity() == b.arity());
    for (std::size_t i = 0; i < a.exps_.size(); ++i)
        if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
    return true;
}

namespace {

// a < b in degrevlex restricted to indices [lo, hi).
bool degrevlex_less_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    unsigned da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db) return da < db;
    // Equal degree: a > b iff the rightmost nonzero entry of a-b is negative,
    // so a < b iff that entry is positive.
    for (std::size_t i = hi; i-- > lo;) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

bool lex_less_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

}  // namespace

bool monomial_less(const Monomial& a, const Monomial& b, const MonomialOrder& order) {
    assert(a.arity() == b.arity());
    const std::size_t n = a.arity();
    switch (order.kind) {
        case MonomialOrder::Kind::degrevlex:
            return degrevlex_less_range(a, b, 0, n);
        case MonomialOrder::Kind::lex:
            return lex_less_range(a, b, 0, n);
        case MonomialOrder::Kind::block_elim: {
            const std::size_t s = std::min(order.split, n);
            if (degrevlex_less_range(a, b, s, n)) return true;
            if (degrevlex_less_range(b, a, s, n)) return false;
            return degrevlex_less_range(a, b, 0, s);
        }
    }
    return false;
}

std::vector<Monomial> monomials_up_to_degree(std::size_t var_count, unsigned d, const MonomialOrder& order) {
    if (var_count < 1) throw std::invalid_argument("monomials_up_to_degree: need at least one variable");
    std::vector<Monomial> out;
    Monomial current(var_count);
    // Depth-first enumeration of all exponent vectors with total degree <= d.
    auto rec = [&](auto&& self, std::size_t idx, unsigned remaining) -> void {
        if (idx == var_count) {
            out.push_back(current);
            return;
        }
        for (unsigned e = 0; e <= remaining; ++e) {
            current[idx] = e;
            self(self, idx + 1, remaining - e);
        }
        current[idx] = 0;
    };
    rec(rec, 0, d);
    std::sort(out.begin(), out.end(),
              [&order](const Monomial& a, const Monomial& b) { return monomial_less(a, b, order); });
    return out;
}

}  // namespace polyinv
