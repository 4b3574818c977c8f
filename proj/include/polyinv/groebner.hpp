#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <vector>

#include "polyinv/polynomial.hpp"

namespace polyinv {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Explicit complexity budget; Buchberger fails loudly instead of running
/// unbounded.
struct GroebnerBudget {
    std::size_t max_pairs = 200000;
    unsigned max_degree = 64;
    std::optional<std::chrono::steady_clock::time_point> deadline;

    void check_deadline() const {
        if (deadline && std::chrono::steady_clock::now() > *deadline)
            throw BudgetExceeded("groebner: time budget exceeded");
    }
};

class GroebnerBasis {
public:
    GroebnerBasis(std::vector<Polynomial> generators, MonomialOrder order)
        : gens_(std::move(generators)), order_(order) {}

    const std::vector<Polynomial>& generators() const { return gens_; }
    const MonomialOrder& order() const { return order_; }
    std::size_t arity() const { return gens_.empty() ? 0 : gens_[0].arity(); }
    bool is_unit_ideal() const;

private:
    std::vector<Polynomial> gens_;
    MonomialOrder order_;
};

/// Reduced Groebner basis of <gens> (Buchberger, normal pair selection,
/// coprime-leading-term and chain criteria). Canonical: monic, pairwise
/// normal-form reduced, sorted by leading monomial.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, MonomialOrder order,
                         const GroebnerBudget& budget = {});

struct DivisionRecord {
    Polynomial remainder;
    // quotients[i] multiplies generators()[i]; p = sum quotients[i]*g_i + remainder.
    std::vector<Polynomial> quotients;
};

/// Unique remainder of p modulo a reduced basis; zero iff p is a member.
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb);
DivisionRecord normal_form_with_record(const Polynomial& p, const GroebnerBasis& gb);

bool member(const Polynomial& p, const std::vector<Polynomial>& gens,
            const GroebnerBudget& budget = {});

/// Membership of p in <eqs + (t_q*q - 1 : q in ineqs)> in a ring extended by
/// one fresh variable per inequation. True implies p vanishes on
/// V(eqs) minus the union of V(q).
bool member_saturated(const Polynomial& p, const std::vector<Polynomial>& eqs,
                      const std::vector<Polynomial>& ineqs, const GroebnerBudget& budget = {});

bool ideal_equal(const std::vector<Polynomial>& gens1, const std::vector<Polynomial>& gens2,
                 MonomialOrder order, const GroebnerBudget& budget = {});

/// Number of standard monomials (monomials outside the leading-term ideal);
/// nullopt when infinite.
std::optional<std::size_t> quotient_dimension_zero_dim(const GroebnerBasis& gb);

/// Krull dimension of the quotient ring via maximal independent variable
/// sets modulo the leading-term ideal. -1 for the unit ideal.
int ideal_dimension(const GroebnerBasis& gb);

/// Generators of the saturation <gens> : (prod_{i in var_indices} x_i)^inf,
/// computed with one Rabinowitsch variable and a block elimination order.
std::vector<Polynomial> saturate_by_product(const std::vector<Polynomial>& gens,
                                            const std::vector<std::size_t>& var_indices,
                                            const GroebnerBudget& budget = {});

}  // namespace polyinv
