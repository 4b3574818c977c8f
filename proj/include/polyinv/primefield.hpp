#pragma once

#include <cstdint>
#include <stdexcept>

#include "polyinv/rational.hpp"

namespace polyinv {

/// Thrown when a sample denominator vanishes modulo the working prime;
/// the modular driver reacts by skipping that prime.
struct UnluckyPrimeError : std::runtime_error {
    explicit UnluckyPrimeError(const std::string& what) : std::runtime_error(what) {}
};

bool is_prime_u64(std::uint64_t n);

/// Largest prime below 2^63. Residues and moduli stay inside a signed word;
/// products go through 128-bit intermediates.
std::uint64_t max_machine_prime();

/// Largest prime strictly below p. Throws below 3.
std::uint64_t prev_prime(std::uint64_t p);

/// Arithmetic in Z/p for a word-sized prime p.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p < 2 || !is_prime_u64(p)) throw std::invalid_argument("modulus is not prime");
    }

    std::uint64_t modulus() const { return p_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        if (s >= p_ || s < a) s -= p_;
        return s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + (p_ - b); }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

    /// Inverse of a nonzero residue. Throws std::domain_error on zero.
    std::uint64_t inv(std::uint64_t a) const;

    /// Reduction of an exact rational; throws UnluckyPrimeError when the
    /// denominator is divisible by p.
    std::uint64_t reduce(const Rational& q) const;

    std::uint64_t reduce(const Integer& z) const {
        return mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p_));
    }

private:
    std::uint64_t p_;
};

}  // namespace polyinv
