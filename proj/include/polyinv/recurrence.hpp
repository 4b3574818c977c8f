#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyinv/loop_model.hpp"
#include "polyinv/matrix.hpp"
#include "polyinv/polynomial.hpp"

namespace polyinv {

/// Block structure of a P-solvable recurrence: within a block the update is
/// linear with rational coefficients, tails feed only from earlier blocks.
struct PSolvableStructure {
    // Original variable index per position, grouped by block (block order).
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> variable_order;  // concatenation of blocks
    QMatrix coefficient_matrix;               // s x s, block-diagonal in block order
    // Tail polynomial per variable (block order), over the loop ring.
    std::vector<Polynomial> tails;
    std::vector<unsigned> tail_degrees;  // d_j per block; d_1 reported as 1

    std::size_t block_count() const { return blocks.size(); }
};

struct DetectOutcome {
    std::optional<PSolvableStructure> structure;
    std::string unsupported_reason;  // set when structure is empty
    std::vector<std::string> witness;

    bool supported() const { return structure.has_value(); }
};

/// Detects P-solvable shape for a single-branch unconditional loop via
/// dependency-graph condensation; Unsupported carries the offending cycle.
DetectOutcome detect_p_solvable(const LoopSystem& loop);

/// Exact characteristic polynomial det(t*I - M) as a univariate polynomial
/// (arity 1), via fraction-free determinants at s+1 sample values.
Polynomial char_poly(const QMatrix& m);

struct EigenData {
    std::map<Rational, unsigned> rational_roots;  // value -> multiplicity
    Polynomial residual;                          // non-rational factor, monic; 1 when fully split
    unsigned zero_count = 0;
    unsigned one_count = 0;

    EigenData() : residual(1) {}

    bool all_rational() const { return residual.total_degree() == 0; }
    unsigned rational_count() const;
};

/// All rational roots with multiplicities (rational-root candidates plus
/// synthetic deflation); the residual factor is retained.
EigenData rational_eigenvalues(const Polynomial& charpoly);

struct MultRelationLattice {
    // Rows span {e : prod lambda_i^{e_i} = 1}; Hermite normal form.
    std::vector<std::vector<Integer>> basis;
    std::size_t ambient = 0;  // number of (nonzero) eigenvalues

    std::size_t rank() const { return basis.size(); }
};

/// Multiplicative relation lattice of nonzero rationals: integer kernel of
/// the prime-exponent matrix intersected with the sign-parity condition.
/// Every emitted row is re-verified by exact evaluation.
MultRelationLattice mult_relation_lattice(const std::vector<Rational>& lambdas);

struct LatticeIdealInfo {
    std::vector<Polynomial> generators;  // binomials + one variable per zero eigenvalue
    std::size_t variable_count = 0;      // nonzero eigenvalues + zero eigenvalues
    std::size_t zero_count = 0;
    std::size_t rank = 0;
    std::size_t dimension = 0;                // r = nonzero count - rank
    std::optional<Integer> degree;            // nullopt: slices disagreed, unverified
};

/// Binomial ideal of the lattice plus coordinate generators for zero
/// eigenvalues; degree via saturation and r generic affine slices, three
/// independent draws with majority agreement.
LatticeIdealInfo lattice_ideal(const MultRelationLattice& lattice, std::size_t zero_eigen_count);

struct BoundReport {
    std::vector<std::size_t> block_sizes;
    std::vector<unsigned> block_tail_degrees;   // d_j as used by the recursion (d_1 = 1)
    std::vector<Integer> degree_sequence;       // D_j
    std::vector<Integer> decoupled_sequence;    // W_j = prod max(d_t,1), t = 2..j
    std::optional<Integer> lattice_degree;
    std::size_t lattice_rank = 0;
    std::size_t ideal_dimension_m = 0;  // r
    std::optional<Integer> bound_generic;  // deg(M) * D_k^(r+1)
    std::optional<Integer> bound_n_free;   // deg(M) * D_k^r, needs n-free closed forms
    std::optional<Integer> bound_sharp;    // deg(M) * W_k^r, needs weak mult. independence
    std::size_t dimension_window_low = 0;   // generic initial values only
    std::size_t dimension_window_high = 0;
    std::string triviality;  // nontrivial-guaranteed | trivial-for-parametric-init | inconclusive
    std::vector<std::string> notes;
};

BoundReport degree_bound(const PSolvableStructure& structure, const LatticeIdealInfo& ideal,
                         const EigenData& eigen);

void dimension_and_triviality(BoundReport& report, const LatticeIdealInfo& ideal,
                              std::size_t var_count, bool parametric, bool all_rational);

/// End-to-end analysis for the CLI: detection, characteristic polynomial,
/// eigenvalues, lattice (computed or user-supplied), bounds and verdicts.
struct AnalyzeReport {
    DetectOutcome detection;
    Polynomial characteristic;  // arity 1; meaningful when detection succeeded
    EigenData eigen;
    std::optional<MultRelationLattice> lattice;
    bool lattice_user_supplied = false;
    std::optional<LatticeIdealInfo> ideal;
    std::optional<BoundReport> bounds;
    std::vector<std::string> notes;

    AnalyzeReport() : characteristic(1) {}
};

AnalyzeReport analyze_loop(const LoopSystem& loop,
                           const std::optional<std::vector<std::vector<Integer>>>& user_lattice);

}  // namespace polyinv
