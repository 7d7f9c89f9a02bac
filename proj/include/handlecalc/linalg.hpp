#pragma once

// Exact integer linear algebra over arbitrary-precision integers.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace handlecalc {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
    static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);
    static IntMatrix diagonal(std::span<const Integer> entries);
    /// Block matrix [[a, 0], [0, b]].
    static IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b);
    /// [a | b]; row counts must agree.
    static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
    /// [a ; b]; column counts must agree.
    static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool is_symmetric() const;
    bool is_zero() const;

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Integer> entries() const noexcept { return data_; }
    IntVector row(std::size_t r) const;
    IntVector column(std::size_t c) const;

    IntMatrix transpose() const;
    /// Sub-matrix of `nr` rows and `nc` columns starting at (r0, c0).
    IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    IntVector apply(const IntVector& v) const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    friend bool operator==(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

std::string to_string(const IntMatrix& m);
std::string to_string(const IntVector& v);

/// U * M * V = D with U, V unimodular and D diagonal with d1 | d2 | ... , all >= 0.
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    std::size_t rank = 0;

    IntVector diagonal() const;
};

/// Canonical form Z^r + Z/d1 + ... + Z/dk with 2 <= d1 | d2 | ... | dk.
struct FgAbelianGroup {
    std::size_t free_rank = 0;
    IntVector torsion_divisors;

    bool is_trivial() const { return free_rank == 0 && torsion_divisors.empty(); }
    bool is_torsion_free() const { return torsion_divisors.empty(); }
    /// "0", "Z", "Z^2 + Z/2", ...
    std::string to_string() const;

    friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Z^rows / (column span of M).
FgAbelianGroup cokernel(const IntMatrix& m);

/// Columns form a saturated basis of {v : M v = 0}.
IntMatrix kernel_basis(const IntMatrix& m);

/// Fraction-free (Bareiss) determinant. Throws DimensionError on non-square input.
Integer determinant(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

/// Some integer x with M x = b, or nullopt when none exists.
std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b);

/// |det| == 1 for a square matrix.
bool is_unimodular(const IntMatrix& m);

/// Inverse of a unimodular matrix. Throws PreconditionError otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

struct Inertia {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;

    long signature() const { return static_cast<long>(positive) - static_cast<long>(negative); }
};

/// Sylvester inertia of a symmetric matrix, computed exactly over the rationals.
Inertia inertia(const IntMatrix& symmetric);

/// Lexicographic comparison of vectors of equal length.
bool lex_less(const IntVector& a, const IntVector& b);

}  // namespace handlecalc
