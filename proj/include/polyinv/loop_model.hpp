#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyinv/polynomial.hpp"
#include "polyinv/rational.hpp"

namespace polyinv {

enum class InvariantMode { plain, inductive, absolute };

std::string to_string(InvariantMode mode);
InvariantMode invariant_mode_from_string(const std::string& text);

/// Conjunction of polynomial equations (p = 0) and inequations (p != 0).
/// Source-level order atoms (<, <=, >, >=) are kept as opaque text: they are
/// outside the algebraic condition language and only ever dropped.
struct ConstraintSet {
    std::vector<Polynomial> equations;
    std::vector<Polynomial> inequations;
    std::vector<std::string> unsupported_atoms;

    bool trivially_true() const {
        return equations.empty() && inequations.empty() && unsupported_atoms.empty();
    }
    bool algebraic() const { return unsupported_atoms.empty(); }
    /// Truth value of the algebraic part at a point. Pre: algebraic().
    bool satisfied_at(const Point& point) const;
};

struct Branch {
    ConstraintSet condition;
    std::vector<Polynomial> assignment;  // one image per loop variable, simultaneous
};

/// A loop as an algebraic transition system. Polynomials live over the
/// combined ring (variables first, then parameters).
struct LoopSystem {
    std::vector<std::string> variables;
    std::vector<std::string> parameters;
    ConstraintSet init;
    ConstraintSet guard;
    std::vector<Branch> branches;

    // Per-variable initial value extracted from init: either a rational
    // constant or a parameter index.
    struct InitialValue {
        std::optional<Rational> constant;
        std::optional<std::size_t> parameter;
    };
    std::vector<InitialValue> initial_values;

    std::size_t arity() const { return variables.size() + parameters.size(); }
    bool parametric() const { return !parameters.empty(); }
    std::vector<std::string> ring_names() const;
    std::size_t variable_index(const std::string& name) const;  // throws if absent

    /// Branch assignment extended to the full ring (parameters map to
    /// themselves), for substitution.
    std::vector<Polynomial> branch_images(std::size_t branch_index) const;

    /// Modes whose semantics this loop supports (order atoms restrict them).
    bool supports(InvariantMode mode) const;
};

struct LoopParseError : std::runtime_error {
    LoopParseError(std::size_t line, std::size_t col, const std::string& msg);
    std::size_t line, col;
};

/// Parses the loop DSL:
///   vars x y;
///   params a b;            (optional)
///   init x = 0, y = b, a*b != 0;
///   guard true;            (or constraints; order atoms allowed, dropped)
///   branch when true { x := y; y := x + y; }
LoopSystem parse_loop(const std::string& text);

/// Canonical DSL form; parse_loop(pretty_print(l)) reproduces l.
std::string pretty_print(const LoopSystem& loop);

struct ExclusivityRefutation {
    std::size_t witness_index;
    std::size_t branch_a, branch_b;
};

/// Witness-based refuter for pairwise exclusivity of branch conditions.
/// An empty result is evidence, not proof.
std::vector<ExclusivityRefutation> validate_exclusivity(const LoopSystem& loop,
                                                        const std::vector<Point>& witnesses);

}  // namespace polyinv
