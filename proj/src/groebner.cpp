#include "polyinv/groebner.hpp"

#include <algorithm>
#include <cassert>
#include <list>
#include <map>
#include <set>

namespace polyinv {

bool GroebnerBasis::is_unit_ideal() const {
    return gens_.size() == 1 && gens_[0].is_constant() && !gens_[0].is_zero();
}

namespace {

Polynomial spoly(const Polynomial& f, const Polynomial& g, MonomialOrder order) {
    Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
    Polynomial a = Polynomial::from_monomial(l / f.leading_monomial(),
                                             Rational(1) / f.leading_coefficient(), order);
    Polynomial b = Polynomial::from_monomial(l / g.leading_monomial(),
                                             Rational(1) / g.leading_coefficient(), order);
    return a * f - b * g;
}

/// Full reduction of p against basis; every term of the remainder is
/// reducible by no leading monomial. Quotients recorded on demand.
Polynomial reduce_full(Polynomial p, const std::vector<Polynomial>& basis, MonomialOrder order,
                       const GroebnerBudget& budget, std::vector<Polynomial>* quotients) {
    Polynomial remainder(p.arity(), order);
    std::size_t steps = 0;
    while (!p.is_zero()) {
        if (((++steps) & 0x3ff) == 0) budget.check_deadline();
        bool reduced = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const Polynomial& g = basis[i];
            if (g.is_zero()) continue;
            if (!g.leading_monomial().divides(p.leading_monomial())) continue;
            Monomial q = p.leading_monomial() / g.leading_monomial();
            Rational c = p.leading_coefficient() / g.leading_coefficient();
            Polynomial factor = Polynomial::from_monomial(q, c, order);
            p -= factor * g;
            if (quotients) (*quotients)[i] += factor;
            reduced = true;
            break;
        }
        if (!reduced) {
            remainder.add_term(p.leading_monomial(), p.leading_coefficient());
            p.set_coefficient(p.leading_monomial(), Rational(0));
        }
    }
    return remainder;
}

struct Pair {
    std::size_t i, j;
    Monomial lcm_m;
};

}  // namespace

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, MonomialOrder order,
                         const GroebnerBudget& budget) {
    std::vector<Polynomial> basis;
    for (const Polynomial& g : gens) {
        if (g.is_zero()) continue;
        basis.push_back(g.with_order(order));
    }

    auto pair_less = [&](const Pair& a, const Pair& b) {
        if (a.lcm_m != b.lcm_m) return monomial_less(a.lcm_m, b.lcm_m, order);
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    };

    std::vector<Pair> pending;
    std::set<std::pair<std::size_t, std::size_t>> handled;
    auto push_pairs_for = [&](std::size_t n) {
        for (std::size_t i = 0; i < n; ++i)
            pending.push_back({i, n, lcm(basis[i].leading_monomial(), basis[n].leading_monomial())});
        std::sort(pending.begin(), pending.end(), pair_less);
    };
    for (std::size_t n = 1; n < basis.size(); ++n) push_pairs_for(n);
    std::sort(pending.begin(), pending.end(), pair_less);

    std::size_t processed = 0;
    while (!pending.empty()) {
        budget.check_deadline();
        Pair p = pending.front();
        pending.erase(pending.begin());
        handled.insert({p.i, p.j});

        const Polynomial& f = basis[p.i];
        const Polynomial& g = basis[p.j];
        // Buchberger's first criterion: coprime leading terms reduce to zero.
        if (coprime(f.leading_monomial(), g.leading_monomial())) continue;
        // Chain criterion: some k with LT(k) | lcm(i,j) and both (i,k), (j,k)
        // already handled.
        bool chained = false;
        for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == p.i || k == p.j || basis[k].is_zero()) continue;
            if (!basis[k].leading_monomial().divides(p.lcm_m)) continue;
            auto key_ik = std::minmax(p.i, k);
            auto key_jk = std::minmax(p.j, k);
            if (handled.count({key_ik.first, key_ik.second}) &&
                handled.count({key_jk.first, key_jk.second}))
                chained = true;
        }
        if (chained) continue;

        if (++processed > budget.max_pairs)
            throw BudgetExceeded("groebner: pair budget exceeded (" +
                                 std::to_string(budget.max_pairs) + ")");

        Polynomial s = spoly(f, g, order);
        Polynomial r = reduce_full(std::move(s), basis, order, budget, nullptr);
        if (r.is_zero()) continue;
        if (r.total_degree() > budget.max_degree)
            throw BudgetExceeded("groebner: degree budget exceeded (" +
                                 std::to_string(budget.max_degree) + ")");
        basis.push_back(r.monic());
        push_pairs_for(basis.size() - 1);
    }

    // Minimalize: drop every generator whose leading monomial is divisible by
    // another one's.
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            if (basis[j].leading_monomial().divides(basis[i].leading_monomial())) {
                // Keep exactly one copy of equal leading monomials.
                if (basis[i].leading_monomial() == basis[j].leading_monomial())
                    redundant = j < i;
                else
                    redundant = true;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }

    // Interreduce tails until stable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Polynomial> others;
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            Polynomial r = reduce_full(minimal[i], others, order, budget, nullptr);
            assert(!r.is_zero());
            r = r.monic();
            if (r != minimal[i]) {
                minimal[i] = r;
                changed = true;
            }
        }
    }

    std::sort(minimal.begin(), minimal.end(), [&](const Polynomial& a, const Polynomial& b) {
        return monomial_less(a.leading_monomial(), b.leading_monomial(), order);
    });
    if (minimal.empty()) minimal.push_back(Polynomial::zero(gens.empty() ? 0 : gens[0].arity(), order));
    return GroebnerBasis(std::move(minimal), order);
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) {
    GroebnerBudget budget;
    return reduce_full(p.with_order(gb.order()), gb.generators(), gb.order(), budget, nullptr);
}

DivisionRecord normal_form_with_record(const Polynomial& p, const GroebnerBasis& gb) {
    GroebnerBudget budget;
    DivisionRecord rec{Polynomial(p.arity(), gb.order()), {}};
    rec.quotients.assign(gb.generators().size(), Polynomial(p.arity(), gb.order()));
    rec.remainder =
        reduce_full(p.with_order(gb.order()), gb.generators(), gb.order(), budget, &rec.quotients);
    return rec;
}

bool member(const Polynomial& p, const std::vector<Polynomial>& gens, const GroebnerBudget& budget) {
    if (p.is_zero()) return true;
    MonomialOrder order = MonomialOrder::degrevlex();
    GroebnerBasis gb = buchberger(gens, order, budget);
    if (gb.generators().size() == 1 && gb.generators()[0].is_zero()) return false;
    return normal_form(p, gb).is_zero();
}

bool member_saturated(const Polynomial& p, const std::vector<Polynomial>& eqs,
                      const std::vector<Polynomial>& ineqs, const GroebnerBudget& budget) {
    if (p.is_zero()) return true;
    const std::size_t base_arity = p.arity();
    const std::size_t ext_arity = base_arity + ineqs.size();
    std::vector<Polynomial> gens;
    for (const Polynomial& e : eqs) gens.push_back(e.extended(ext_arity));
    for (std::size_t k = 0; k < ineqs.size(); ++k) {
        // Rabinowitsch: t_k * q_k - 1 forces q_k != 0.
        Polynomial t = Polynomial::variable(ext_arity, base_arity + k);
        gens.push_back(t * ineqs[k].extended(ext_arity) -
                       Polynomial::constant(ext_arity, Rational(1)));
    }
    return member(p.extended(ext_arity), gens, budget);
}

bool ideal_equal(const std::vector<Polynomial>& gens1, const std::vector<Polynomial>& gens2,
                 MonomialOrder order, const GroebnerBudget& budget) {
    GroebnerBasis a = buchberger(gens1, order, budget);
    GroebnerBasis b = buchberger(gens2, order, budget);
    if (a.generators().size() != b.generators().size()) return false;
    for (std::size_t i = 0; i < a.generators().size(); ++i)
        if (a.generators()[i] != b.generators()[i]) return false;
    return true;
}

std::optional<std::size_t> quotient_dimension_zero_dim(const GroebnerBasis& gb) {
    if (gb.is_unit_ideal()) return 0;  // empty variety, zero quotient ring
    const std::size_t n = gb.arity();
    std::vector<Monomial> lts;
    for (const Polynomial& g : gb.generators())
        if (!g.is_zero()) lts.push_back(g.leading_monomial());
    // Finite iff every variable carries a pure-power leading term.
    std::vector<unsigned> cap(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (const Monomial& m : lts) {
            if (m[i] == 0) continue;
            bool pure = m.degree() == m[i];
            if (pure) cap[i] = cap[i] ? std::min(cap[i], m[i]) : m[i];
        }
        if (cap[i] == 0) return std::nullopt;
    }
    double box = 1;
    for (unsigned c : cap) box *= c;
    if (box > 1e7) throw BudgetExceeded("quotient dimension: staircase box too large");
    // Count monomials under the staircase.
    std::size_t count = 0;
    Monomial current(n);
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == n) {
            for (const Monomial& m : lts)
                if (m.divides(current)) return;
            ++count;
            return;
        }
        for (unsigned e = 0; e < cap[idx]; ++e) {
            current[idx] = e;
            self(self, idx + 1);
        }
        current[idx] = 0;
    };
    rec(rec, 0);
    return count;
}

int ideal_dimension(const GroebnerBasis& gb) {
    if (gb.is_unit_ideal()) return -1;
    const std::size_t n = gb.arity();
    std::vector<Monomial> lts;
    for (const Polynomial& g : gb.generators())
        if (!g.is_zero()) lts.push_back(g.leading_monomial());
    if (lts.empty()) return static_cast<int>(n);  // zero ideal
    int best = 0;
    // Max |U| with no leading term supported inside U; n is small here.
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        int size = __builtin_popcountll(mask);
        if (size <= best) continue;
        bool independent = true;
        for (const Monomial& m : lts) {
            bool inside = true;
            for (std::size_t i = 0; i < n && inside; ++i)
                if (m[i] > 0 && !(mask >> i & 1)) inside = false;
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent) best = size;
    }
    return best;
}

std::vector<Polynomial> saturate_by_product(const std::vector<Polynomial>& gens,
                                            const std::vector<std::size_t>& var_indices,
                                            const GroebnerBudget& budget) {
    if (gens.empty() || var_indices.empty()) return gens;
    const std::size_t base_arity = gens[0].arity();
    const std::size_t ext_arity = base_arity + 1;
    MonomialOrder elim = MonomialOrder::block_elim(base_arity);

    std::vector<Polynomial> ext;
    for (const Polynomial& g : gens) ext.push_back(g.extended(ext_arity).with_order(elim));
    Polynomial prod = Polynomial::variable(ext_arity, base_arity, elim);
    for (std::size_t i : var_indices) prod = prod * Polynomial::variable(ext_arity, i, elim);
    ext.push_back(prod - Polynomial::constant(ext_arity, Rational(1), elim));

    GroebnerBasis gb = buchberger(ext, elim, budget);
    std::vector<Polynomial> out;
    for (const Polynomial& g : gb.generators()) {
        bool uses_t = false;
        for (const auto& [m, c] : g.terms()) uses_t |= (m[base_arity] > 0);
        if (uses_t || g.is_zero()) continue;
        // Shrink back to the base ring.
        Polynomial h(base_arity);
        for (const auto& [m, c] : g.terms()) {
            std::vector<unsigned> e(m.exponents().begin(), m.exponents().begin() + base_arity);
            h.add_term(Monomial(std::move(e)), c);
        }
        out.push_back(std::move(h));
    }
    if (out.empty()) out.push_back(Polynomial::zero(base_arity));
    return out;
}

}  // namespace polyinv
