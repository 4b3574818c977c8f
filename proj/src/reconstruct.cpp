#include "polyinv/reconstruct.hpp"

#include <stdexcept>

namespace polyinv {

Integer crt_combine(const std::vector<Integer>& residues, const std::vector<Integer>& moduli) {
    if (residues.empty() || residues.size() != moduli.size())
        throw std::invalid_argument("crt_combine: need equally many residues and moduli");
    Integer x = residues[0] % moduli[0];
    if (x < 0) x += moduli[0];
    Integer m = moduli[0];
    for (std::size_t i = 1; i < residues.size(); ++i) {
        Integer g, inv_m, dummy;
        mpz_gcdext(g.get_mpz_t(), inv_m.get_mpz_t(), dummy.get_mpz_t(), m.get_mpz_t(),
                   moduli[i].get_mpz_t());
        if (g != 1) throw std::invalid_argument("crt_combine: moduli are not pairwise coprime");
        // x' = x + m * ((r_i - x) * m^{-1} mod m_i)
        Integer t = ((residues[i] - x) * inv_m) % moduli[i];
        if (t < 0) t += moduli[i];
        x += m * t;
        m *= moduli[i];
    }
    x %= m;
    if (x < 0) x += m;
    return x;
}

std::optional<Rational> rational_reconstruct(const Integer& residue, const Integer& modulus) {
    if (residue < 0 || residue >= modulus) throw std::invalid_argument("residue out of range");
    Integer bound;
    mpz_fdiv_q_ui(bound.get_mpz_t(), modulus.get_mpz_t(), 2);
    mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());  // B = floor(sqrt(m/2))

    // Half-extended Euclid on (modulus, residue); stop at the first remainder
    // within the numerator bound.
    Integer r0 = modulus, r1 = residue;
    Integer t0 = 0, t1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    Integer num = r1, den = t1;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (den == 0 || den > bound) return std::nullopt;
    Integer g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) return std::nullopt;
    Rational out(num, den);
    out.canonicalize();
    return out;
}

std::optional<QMatrix> reconstruct_matrix(const std::vector<FpMatrix>& images) {
    if (images.empty()) throw std::invalid_argument("reconstruct_matrix: no images");
    const std::size_t nr = images[0].rows(), nc = images[0].cols();
    std::vector<Integer> moduli;
    for (const FpMatrix& im : images) {
        if (im.rows() != nr || im.cols() != nc)
            throw std::invalid_argument("reconstruct_matrix: image shapes differ");
        moduli.emplace_back(Integer(static_cast<unsigned long>(im.field().modulus())));
    }
    Integer modulus = 1;
    for (const Integer& m : moduli) modulus *= m;
    QMatrix out(nr, nc);
    std::vector<Integer> residues(images.size());
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) {
            for (std::size_t k = 0; k < images.size(); ++k)
                residues[k] = Integer(static_cast<unsigned long>(images[k].at(i, j)));
            Integer combined = crt_combine(residues, moduli);
            auto rec = rational_reconstruct(combined, modulus);
            if (!rec) return std::nullopt;
            out.at(i, j) = *rec;
        }
    return out;
}

}  // namespace polyinv
