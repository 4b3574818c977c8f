#pragma once

#include <optional>
#include <vector>

#include "polyinv/matrix.hpp"
#include "polyinv/rational.hpp"

namespace polyinv {

/// Unique value in [0, prod moduli) congruent to every residue. Throws
/// std::invalid_argument on empty input or non-coprime moduli.
Integer crt_combine(const std::vector<Integer>& residues, const std::vector<Integer>& moduli);

/// Balanced rational reconstruction (Wang): a/b with b > 0, gcd(a,b) = 1,
/// a = residue * b (mod modulus), |a| <= B and b <= B for
/// B = floor(sqrt(modulus/2)). nullopt when no such fraction exists.
std::optional<Rational> rational_reconstruct(const Integer& residue, const Integer& modulus);

/// Entrywise CRT + rational reconstruction of a matrix from mod-p images of
/// identical shape. nullopt as soon as one entry fails to reconstruct.
std::optional<QMatrix> reconstruct_matrix(const std::vector<FpMatrix>& images);

}  // namespace polyinv
