#pragma once

#include <cstdint>
#include <vector>

#include "polyinv/primefield.hpp"
#include "polyinv/rational.hpp"

namespace polyinv {

/// Row-major rectangular matrix over the rationals.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const QMatrix& other) const;
    bool operator!=(const QMatrix& other) const { return !(*this == other); }

    QMatrix operator*(const QMatrix& rhs) const;
    QMatrix operator+(const QMatrix& rhs) const;
    QMatrix operator*(const Rational& c) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

/// Row-major rectangular matrix over F_p.
class FpMatrix {
public:
    FpMatrix(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint64_t& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint64_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const FpMatrix& other) const {
        return field_.modulus() == other.field_.modulus() && rows_ == other.rows_ &&
               cols_ == other.cols_ && a_ == other.a_;
    }

private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<std::uint64_t> a_;
};

struct QEchelon {
    QMatrix reduced;                  // reduced row-echelon form
    std::vector<std::size_t> pivots;  // pivot column per pivot row
};

/// Reduced row-echelon form. The forward elimination is fraction-free
/// (Bareiss over the integers after clearing row denominators); the
/// normalization pass divides back into Q.
QEchelon reduced_row_echelon(const QMatrix& m);

std::size_t rank(const QMatrix& m);

/// Canonical basis of {v : m v^T = 0}: full row rank, reduced row-echelon,
/// leading coefficients 1. Row count is cols - rank.
QMatrix nullspace_echelon(const QMatrix& m);

/// Exact determinant of a square matrix (fraction-free elimination).
Rational determinant(const QMatrix& m);

/// Row spaces compared via canonical reduced echelon forms.
bool rowspace_equal(const QMatrix& a, const QMatrix& b);

struct FpEchelon {
    FpMatrix reduced;
    std::vector<std::size_t> pivots;
};

FpEchelon reduced_row_echelon(const FpMatrix& m);

/// Entrywise reduction into F_p; throws UnluckyPrimeError when a
/// denominator is divisible by p.
FpMatrix reduce_matrix_mod(const QMatrix& m, const PrimeField& field);

/// Mod-p analogue of the canonical nullspace basis.
FpMatrix nullspace_echelon(const FpMatrix& m);

/// Entrywise congruence of a rational matrix against a mod-p image; false
/// also when some denominator is divisible by p.
bool congruent_mod(const QMatrix& q, const FpMatrix& image);

}  // namespace polyinv
