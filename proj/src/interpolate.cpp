#include "polyinv/interpolate.hpp"

#include <algorithm>

#include "polyinv/reconstruct.hpp"

namespace polyinv {

std::string to_string(InterpStatus s) {
    switch (s) {
        case InterpStatus::certified: return "certified";
        case InterpStatus::fail_zero_dimension: return "fail-zero-dimension";
        case InterpStatus::fail_reconstruction: return "fail-reconstruction";
        case InterpStatus::fail_certification: return "fail-certification";
        case InterpStatus::fail_budget: return "fail-budget";
        case InterpStatus::fail_mode: return "fail-mode";
    }
    return "?";
}

LinSys build_lin_sys(const std::vector<Monomial>& monomials, const std::vector<Point>& points) {
    if (!monomials.empty() && !points.empty() && monomials[0].arity() != points[0].size())
        throw std::invalid_argument("monomial/point arity mismatch");
    QMatrix m(points.size(), monomials.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point& pt = points[i];
        // Shared power table per point.
        std::vector<std::vector<Rational>> powers(pt.size(), std::vector<Rational>{Rational(1)});
        for (std::size_t j = 0; j < monomials.size(); ++j) {
            Rational v(1);
            for (std::size_t k = 0; k < pt.size(); ++k) {
                unsigned e = monomials[j][k];
                if (e == 0) continue;
                auto& tab = powers[k];
                while (tab.size() <= e) tab.push_back(tab.back() * pt[k]);
                v *= tab[e];
            }
            m.at(i, j) = std::move(v);
        }
    }
    return {monomials, std::move(m)};
}

LinSysModp build_lin_sys_modp(const std::vector<Monomial>& monomials,
                              const std::vector<Point>& points, std::uint64_t p) {
    if (!monomials.empty() && !points.empty() && monomials[0].arity() != points[0].size())
        throw std::invalid_argument("monomial/point arity mismatch");
    PrimeField field(p);
    FpMatrix m(field, points.size(), monomials.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<std::uint64_t> residues;
        residues.reserve(points[i].size());
        for (const Rational& q : points[i]) residues.push_back(field.reduce(q));
        for (std::size_t j = 0; j < monomials.size(); ++j) {
            std::uint64_t v = 1;
            for (std::size_t k = 0; k < residues.size(); ++k)
                if (monomials[j][k]) v = field.mul(v, field.pow(residues[k], monomials[j][k]));
            m.at(i, j) = v;
        }
    }
    return {monomials, std::move(m)};
}

Polynomial gen_poly(const std::vector<Monomial>& monomials, const std::vector<Rational>& coeffs) {
    if (monomials.size() != coeffs.size())
        throw std::invalid_argument("gen_poly: length mismatch");
    const std::size_t arity = monomials.empty() ? 0 : monomials[0].arity();
    Polynomial p(arity);
    for (std::size_t i = 0; i < monomials.size(); ++i) p.add_term(monomials[i], coeffs[i]);
    return p;
}

namespace {

std::vector<Polynomial> basis_from_nullspace(const std::vector<Monomial>& monomials,
                                             const QMatrix& nullspace) {
    std::vector<Polynomial> out;
    std::vector<Rational> row(monomials.size());
    for (std::size_t r = 0; r < nullspace.rows(); ++r) {
        for (std::size_t c = 0; c < monomials.size(); ++c) row[c] = nullspace.at(r, c);
        out.push_back(gen_poly(monomials, row));
    }
    return out;
}

bool vanishes_on(const std::vector<Polynomial>& basis, const std::vector<Point>& points) {
    for (const Polynomial& f : basis)
        for (const Point& p : points)
            if (f.evaluate(p) != 0) return false;
    return true;
}

/// Shared certification gate of Algorithms 1 and 2: initial-value inclusion,
/// then per-branch consecution, with the sample falsifier as a fast path.
InterpResult run_gate(InterpResult partial, const std::vector<Polynomial>& basis,
                      const std::vector<Point>& points, const LoopSystem& loop, InvariantMode mode,
                      const InterpOptions& options) {
    std::vector<Point> probe = points;
    probe.insert(probe.end(), options.fresh_points.begin(), options.fresh_points.end());
    if (auto cex = falsify_by_samples(loop, basis, probe, mode)) {
        partial.status = InterpStatus::fail_certification;
        partial.detail = "sample falsifier: candidate " + std::to_string(cex->candidate_index) +
                         " leaves the zero set under branch " + std::to_string(cex->branch_index) +
                         " at " + point_to_string(cex->point);
        return partial;
    }
    partial.gate_ran = true;
    partial.certification = certify(loop, basis, mode, options.budget);
    switch (partial.certification.status) {
        case CertStatus::certified:
            partial.status = InterpStatus::certified;
            partial.basis = basis;
            break;
        case CertStatus::budget_exceeded:
            partial.status = InterpStatus::fail_budget;
            partial.detail = partial.certification.detail;
            break;
        case CertStatus::mode_unsupported:
            partial.status = InterpStatus::fail_mode;
            partial.detail = partial.certification.detail;
            break;
        default:
            partial.status = InterpStatus::fail_certification;
            partial.detail = partial.certification.detail;
            break;
    }
    return partial;
}

}  // namespace

InterpResult plain_inv_interp(const std::vector<Monomial>& monomials,
                              const std::vector<Point>& points, const LoopSystem& loop,
                              InvariantMode mode, const InterpOptions& options) {
    InterpResult result;
    if (!loop.supports(mode)) {
        result.status = InterpStatus::fail_mode;
        result.detail = "mode '" + to_string(mode) + "' unavailable for this loop";
        return result;
    }
    LinSys sys = build_lin_sys(monomials, points);
    result.nullspace = nullspace_echelon(sys.matrix);
    result.nullspace_dim = result.nullspace.rows();
    if (result.nullspace_dim == 0) {
        result.status = InterpStatus::fail_zero_dimension;
        result.detail = "no nonzero polynomial vanishes on the samples at this degree "
                        "(zero invariant ideal or degree too low)";
        return result;
    }
    return run_gate(std::move(result), basis_from_nullspace(monomials, result.nullspace), points,
                    loop, mode, options);
}

InterpResult modp_inv_interp(const std::vector<Monomial>& monomials,
                             const std::vector<Point>& points, const LoopSystem& loop,
                             InvariantMode mode, const InterpOptions& options) {
    InterpResult result;
    if (!loop.supports(mode)) {
        result.status = InterpStatus::fail_mode;
        result.detail = "mode '" + to_string(mode) + "' unavailable for this loop";
        return result;
    }
    if (options.max_images < 1) throw std::invalid_argument("max_images must be >= 1");

    std::vector<FpMatrix> images;
    std::vector<std::size_t> pivot_profile;
    std::size_t dim = 0;
    std::uint64_t p = max_machine_prime();
    std::size_t primes_examined = 0;
    bool have_image = false;
    QMatrix last_reconstruction;
    bool last_reconstruction_valid = false;
    // Reconstruction attempts are geometrically spaced: large kernels need
    // hundreds of images, and re-running CRT after every one is quadratic.
    std::size_t attempt_at = 1;

    auto try_take_image = [&](std::uint64_t prime) -> bool {
        try {
            LinSysModp sys = build_lin_sys_modp(monomials, points, prime);
            FpMatrix ns = nullspace_echelon(sys.matrix);
            std::vector<std::size_t> profile = reduced_row_echelon(ns).pivots;
            const std::size_t d = ns.rows();
            if (!have_image || d < dim) {
                // Lower dimension: every previous image was unlucky.
                images.clear();
                images.push_back(std::move(ns));
                pivot_profile = profile;
                dim = d;
                have_image = true;
                attempt_at = 1;
                return true;
            }
            if (d > dim) return false;  // this image is unlucky, drop it
            if (profile != pivot_profile) return false;  // echelon shape disagrees: drop
            images.push_back(std::move(ns));
            return true;
        } catch (const UnluckyPrimeError&) {
            return false;  // denominator collision: skip the prime entirely
        }
    };

    while (images.size() <= options.max_images && p > 2 &&
           primes_examined < options.max_primes_examined) {
        ++primes_examined;
        bool took = try_take_image(p);
        result.primes_used.clear();
        for (const FpMatrix& im : images) result.primes_used.push_back(im.field().modulus());

        if (took) {
            if (dim == 0) {
                result.nullspace_dim = 0;
                result.status = InterpStatus::fail_zero_dimension;
                result.detail = "modular nullspace is zero-dimensional "
                                "(zero invariant ideal, degree too low, or unlucky sample set)";
                return result;
            }
            if (images.size() < attempt_at && images.size() < options.max_images) {
                p = prev_prime(p);
                continue;
            }
            attempt_at = images.size() * 2;
            auto reconstructed = reconstruct_matrix(images);
            if (reconstructed) {
                bool congruent = true;
                for (const FpMatrix& im : images) congruent &= congruent_mod(*reconstructed, im);
                if (congruent) {
                    std::vector<Polynomial> basis = basis_from_nullspace(monomials, *reconstructed);
                    bool stable = last_reconstruction_valid && *reconstructed == last_reconstruction;
                    last_reconstruction = *reconstructed;
                    last_reconstruction_valid = true;
                    // Candidates must vanish on the inference points and the
                    // deeper fresh batch before the expensive gate runs; a
                    // stable reconstruction goes to the gate regardless so a
                    // genuine non-invariant fails honestly there.
                    if ((vanishes_on(basis, points) && vanishes_on(basis, options.fresh_points)) ||
                        stable) {
                        result.nullspace = *reconstructed;
                        result.nullspace_dim = dim;
                        return run_gate(std::move(result), basis, points, loop, mode, options);
                    }
                }
            }
        }
        p = prev_prime(p);
    }

    result.nullspace_dim = dim;
    result.status = InterpStatus::fail_reconstruction;
    result.detail = "rational reconstruction did not stabilize within " +
                    std::to_string(options.max_images) + " modular images";
    return result;
}

}  // namespace polyinv
