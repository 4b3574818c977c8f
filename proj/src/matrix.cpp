#include "polyinv/matrix.hpp"

#include <cassert>
#include <stdexcept>

namespace polyinv {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool QMatrix::operator==(const QMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (std::size_t k = 0; k < a_.size(); ++k)
        if (a_[k] != other.a_[k]) return false;
    return true;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
    QMatrix r(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& v = at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) r.at(i, j) += v * rhs.at(k, j);
        }
    return r;
}

QMatrix QMatrix::operator+(const QMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    QMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + rhs.a_[k];
    return r;
}

QMatrix QMatrix::operator*(const Rational& c) const {
    QMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * c;
    return r;
}

namespace {

// Fraction-free (Bareiss) forward elimination on integer rows. Returns the
// pivot columns; rows below each pivot are zeroed. Entries stay integral:
// each 2x2 cross-multiplication step divides exactly by the previous pivot.
struct IntEchelon {
    std::vector<std::vector<Integer>> rows;
    std::vector<std::size_t> pivots;
};

IntEchelon bareiss_forward(const QMatrix& m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    std::vector<std::vector<Integer>> z(nr, std::vector<Integer>(nc));
    for (std::size_t i = 0; i < nr; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < nc; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
        for (std::size_t j = 0; j < nc; ++j) {
            Rational v = m.at(i, j) * Rational(l);
            v.canonicalize();
            assert(v.get_den() == 1);
            z[i][j] = v.get_num();
        }
    }

    IntEchelon out;
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t p = r;
        while (p < nr && z[p][c] == 0) ++p;
        if (p == nr) continue;
        std::swap(z[p], z[r]);
        for (std::size_t i = r + 1; i < nr; ++i) {
            for (std::size_t j = c + 1; j < nc; ++j) {
                Integer t = z[i][j] * z[r][c] - z[i][c] * z[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                z[i][j] = t;
            }
            z[i][c] = 0;
        }
        prev = z[r][c];
        out.pivots.push_back(c);
        ++r;
    }
    out.rows = std::move(z);
    return out;
}

}  // namespace

QEchelon reduced_row_echelon(const QMatrix& m) {
    IntEchelon fwd = bareiss_forward(m);
    const std::size_t nr = m.rows(), nc = m.cols();
    QMatrix red(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) red.at(i, j) = Rational(fwd.rows[i][j]);
    // Normalize pivots to 1 and clear above, back to front.
    for (std::size_t k = fwd.pivots.size(); k-- > 0;) {
        const std::size_t r = k, c = fwd.pivots[k];
        Rational inv = Rational(1) / red.at(r, c);
        for (std::size_t j = c; j < nc; ++j) red.at(r, j) *= inv;
        for (std::size_t i = 0; i < r; ++i) {
            Rational f = red.at(i, c);
            if (f == 0) continue;
            for (std::size_t j = c; j < nc; ++j) red.at(i, j) -= f * red.at(r, j);
        }
    }
    return {std::move(red), std::move(fwd.pivots)};
}

std::size_t rank(const QMatrix& m) { return bareiss_forward(m).pivots.size(); }

QMatrix nullspace_echelon(const QMatrix& m) {
    QEchelon ech = reduced_row_echelon(m);
    const std::size_t nc = m.cols();
    std::vector<bool> is_pivot(nc, false);
    for (std::size_t c : ech.pivots) is_pivot[c] = true;

    QMatrix basis(nc - ech.pivots.size(), nc);
    std::size_t row = 0;
    for (std::size_t f = 0; f < nc; ++f) {
        if (is_pivot[f]) continue;
        basis.at(row, f) = 1;
        for (std::size_t k = 0; k < ech.pivots.size(); ++k) basis.at(row, ech.pivots[k]) = -ech.reduced.at(k, f);
        ++row;
    }
    // Second reduction makes the basis itself canonical (unique per subspace).
    return reduced_row_echelon(basis).reduced;
}

Rational determinant(const QMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);

    std::vector<std::vector<Integer>> z(n, std::vector<Integer>(n));
    Rational scale(1);
    for (std::size_t i = 0; i < n; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
        scale /= Rational(l);
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = m.at(i, j) * Rational(l);
            v.canonicalize();
            z[i][j] = v.get_num();
        }
    }

    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && z[p][k] == 0) ++p;
        if (p == n) return Rational(0);
        if (p != k) {
            std::swap(z[p], z[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = z[i][j] * z[k][k] - z[i][k] * z[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                z[i][j] = t;
            }
            z[i][k] = 0;
        }
        prev = z[k][k];
    }
    Rational det = Rational(z[n - 1][n - 1]) * scale;
    if (sign < 0) det = -det;
    return det;
}

bool rowspace_equal(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.cols()) return false;
    QEchelon ea = reduced_row_echelon(a);
    QEchelon eb = reduced_row_echelon(b);
    if (ea.pivots != eb.pivots) return false;
    for (std::size_t i = 0; i < ea.pivots.size(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (ea.reduced.at(i, j) != eb.reduced.at(i, j)) return false;
    return true;
}

FpEchelon reduced_row_echelon(const FpMatrix& m) {
    FpMatrix red = m;
    const PrimeField& f = m.field();
    const std::size_t nr = m.rows(), nc = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t p = r;
        while (p < nr && red.at(p, c) == 0) ++p;
        if (p == nr) continue;
        if (p != r)
            for (std::size_t j = 0; j < nc; ++j) std::swap(red.at(p, j), red.at(r, j));
        std::uint64_t inv = f.inv(red.at(r, c));
        for (std::size_t j = c; j < nc; ++j) red.at(r, j) = f.mul(red.at(r, j), inv);
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == r || red.at(i, c) == 0) continue;
            std::uint64_t factor = red.at(i, c);
            for (std::size_t j = c; j < nc; ++j)
                red.at(i, j) = f.sub(red.at(i, j), f.mul(factor, red.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(red), std::move(pivots)};
}

FpMatrix reduce_matrix_mod(const QMatrix& m, const PrimeField& field) {
    FpMatrix r(field, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = field.reduce(m.at(i, j));
    return r;
}

FpMatrix nullspace_echelon(const FpMatrix& m) {
    FpEchelon ech = reduced_row_echelon(m);
    const PrimeField& f = m.field();
    const std::size_t nc = m.cols();
    std::vector<bool> is_pivot(nc, false);
    for (std::size_t c : ech.pivots) is_pivot[c] = true;

    FpMatrix basis(f, nc - ech.pivots.size(), nc);
    std::size_t row = 0;
    for (std::size_t free_col = 0; free_col < nc; ++free_col) {
        if (is_pivot[free_col]) continue;
        basis.at(row, free_col) = 1;
        for (std::size_t k = 0; k < ech.pivots.size(); ++k)
            basis.at(row, ech.pivots[k]) = f.neg(ech.reduced.at(k, free_col));
        ++row;
    }
    return reduced_row_echelon(basis).reduced;
}

bool congruent_mod(const QMatrix& q, const FpMatrix& image) {
    if (q.rows() != image.rows() || q.cols() != image.cols()) return false;
    const PrimeField& f = image.field();
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) {
            try {
                if (f.reduce(q.at(i, j)) != image.at(i, j)) return false;
            } catch (const UnluckyPrimeError&) {
                return false;
            }
        }
    return true;
}

}  // namespace polyinv
