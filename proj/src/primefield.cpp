#include "polyinv/primefield.hpp"

namespace polyinv {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic Miller-Rabin base set for 64-bit integers.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::uint64_t max_machine_prime() {
    static const std::uint64_t cached = [] {
        std::uint64_t n = (1ull << 63) - 1;
        while (!is_prime_u64(n)) --n;
        return n;
    }();
    return cached;
}

std::uint64_t prev_prime(std::uint64_t p) {
    if (p <= 3) throw std::invalid_argument("no prime below 3 requested");
    std::uint64_t n = p - 1;
    if (n % 2 == 0) {
        if (n == 2) return 2;
        --n;
    }
    while (!is_prime_u64(n)) n -= 2;
    return n;
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const { return powmod_u64(a % p_, e, p_); }

std::uint64_t PrimeField::inv(std::uint64_t a) const {
    a %= p_;
    if (a == 0) throw std::domain_error("inverse of zero residue");
    // Extended Euclid over signed 128-bit intermediates.
    __int128 t = 0, new_t = 1;
    __int128 r = static_cast<__int128>(p_), new_r = static_cast<__int128>(a);
    while (new_r != 0) {
        __int128 q = r / new_r;
        __int128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += static_cast<__int128>(p_);
    return static_cast<std::uint64_t>(t);
}

std::uint64_t PrimeField::reduce(const Rational& q) const {
    std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), static_cast<unsigned long>(p_));
    if (den == 0) throw UnluckyPrimeError("denominator divisible by prime " + std::to_string(p_));
    std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), static_cast<unsigned long>(p_));
    return mul(num, inv(den));
}

}  // namespace polyinv
