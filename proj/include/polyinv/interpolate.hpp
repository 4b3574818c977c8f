#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyinv/checker.hpp"
#include "polyinv/loop_model.hpp"
#include "polyinv/matrix.hpp"
#include "polyinv/monomial.hpp"

namespace polyinv {

/// Evaluation matrix: rows index points, columns index template monomials,
/// so the nullspace lives in coefficient space.
struct LinSys {
    std::vector<Monomial> monomials;
    QMatrix matrix;
};

struct LinSysModp {
    std::vector<Monomial> monomials;
    FpMatrix matrix;
};

LinSys build_lin_sys(const std::vector<Monomial>& monomials, const std::vector<Point>& points);

/// Entries reduced into F_p (denominators inverted mod p); throws
/// UnluckyPrimeError when a denominator is divisible by p.
LinSysModp build_lin_sys_modp(const std::vector<Monomial>& monomials,
                              const std::vector<Point>& points, std::uint64_t p);

Polynomial gen_poly(const std::vector<Monomial>& monomials, const std::vector<Rational>& coeffs);

enum class InterpStatus {
    certified,
    fail_zero_dimension,       // empty nullspace: zero ideal, or degree too low
    fail_reconstruction,       // rational reconstruction never stabilized
    fail_certification,
    fail_budget,
    fail_mode,
};

std::string to_string(InterpStatus s);

struct InterpOptions {
    std::size_t max_images = 8;
    /// Points sampled deeper than the inference set; reconstructed candidates
    /// must vanish on them before the certification gate runs.
    std::vector<Point> fresh_points;
    GroebnerBudget budget;
    std::size_t max_primes_examined = 4096;
};

struct InterpResult {
    InterpStatus status = InterpStatus::fail_zero_dimension;
    std::vector<Polynomial> basis;    // certified candidates (status == certified)
    QMatrix nullspace;                // canonical echelon nullspace over Q
    std::size_t nullspace_dim = 0;
    std::vector<std::uint64_t> primes_used;
    bool gate_ran = false;
    CertificationReport certification;
    std::string detail;

    bool certified() const { return status == InterpStatus::certified; }
};

/// Direct method: exact nullspace over Q, then the certification gate.
InterpResult plain_inv_interp(const std::vector<Monomial>& monomials,
                              const std::vector<Point>& points, const LoopSystem& loop,
                              InvariantMode mode, const InterpOptions& options = {});

/// Modular method: per-prime echelon nullspaces descending from the largest
/// machine prime, unlucky images dropped by the minimal-dimension rule,
/// entrywise CRT + rational reconstruction, then the same gate.
InterpResult modp_inv_interp(const std::vector<Monomial>& monomials,
                             const std::vector<Point>& points, const LoopSystem& loop,
                             InvariantMode mode, const InterpOptions& options = {});

}  // namespace polyinv
