#include "handlecalc/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "handlecalc/errors.hpp"

namespace handlecalc {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw DimensionError("ragged matrix literal");
        }
        for (long v : r) {
            data_.emplace_back(v);
        }
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw DimensionError("row length mismatch");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
    IntMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) {
            throw DimensionError("column length mismatch");
        }
        for (std::size_t r = 0; r < rows; ++r) {
            m(r, c) = columns[c][r];
        }
    }
    return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> entries) {
    IntMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(i, i) = entries[i];
    }
    return m;
}

IntMatrix IntMatrix::direct_sum(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t c = 0; c < a.cols_; ++c) {
            m(r, c) = a(r, c);
        }
    }
    for (std::size_t r = 0; r < b.rows_; ++r) {
        for (std::size_t c = 0; c < b.cols_; ++c) {
            m(a.rows_ + r, a.cols_ + c) = b(r, c);
        }
    }
    return m;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_) {
        throw DimensionError("hstack: row counts differ");
    }
    IntMatrix m(a.rows_, a.cols_ + b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t c = 0; c < a.cols_; ++c) {
            m(r, c) = a(r, c);
        }
        for (std::size_t c = 0; c < b.cols_; ++c) {
            m(r, a.cols_ + c) = b(r, c);
        }
    }
    return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.cols_) {
        throw DimensionError("vstack: column counts differ");
    }
    IntMatrix m(a.rows_ + b.rows_, a.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t c = 0; c < a.cols_; ++c) {
            m(r, c) = a(r, c);
        }
    }
    for (std::size_t r = 0; r < b.rows_; ++r) {
        for (std::size_t c = 0; c < b.cols_; ++c) {
            m(a.rows_ + r, c) = b(r, c);
        }
    }
    return m;
}

bool IntMatrix::is_symmetric() const {
    if (!is_square()) {
        return false;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = r + 1; c < cols_; ++c) {
            if ((*this)(r, c) != (*this)(c, r)) {
                return false;
            }
        }
    }
    return true;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

IntVector IntMatrix::row(std::size_t r) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
    IntVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        v[r] = (*this)(r, c);
    }
    return v;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) {
        throw DimensionError("block out of range");
    }
    IntMatrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r) {
        for (std::size_t c = 0; c < nc; ++c) {
            b(r, c) = (*this)(r0 + r, c0 + c);
        }
    }
    return b;
}

IntVector IntMatrix::apply(const IntVector& v) const {
    if (v.size() != cols_) {
        throw DimensionError("apply: vector length " + std::to_string(v.size()) + " vs " +
                             std::to_string(cols_) + " columns");
    }
    IntVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Integer acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) {
            acc += (*this)(r, c) * v[c];
        }
        out[r] = std::move(acc);
    }
    return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    for (std::size_t c = 0; c < cols_; ++c) {
        std::swap((*this)(a, c), (*this)(b, c));
    }
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        std::swap((*this)(r, a), (*this)(r, b));
    }
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (sgn(factor) == 0) {
        return;
    }
    for (std::size_t c = 0; c < cols_; ++c) {
        (*this)(dst, c) += factor * (*this)(src, c);
    }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (sgn(factor) == 0) {
        return;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        (*this)(r, dst) += factor * (*this)(r, src);
    }
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) {
        (*this)(r, c) = -(*this)(r, c);
    }
}

void IntMatrix::negate_col(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) {
        (*this)(r, c) = -(*this)(r, c);
    }
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) {
        throw DimensionError("product: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " times " +
                             std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    }
    IntMatrix p(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& x = a(r, k);
            if (sgn(x) == 0) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols_; ++c) {
                p(r, c) += x * b(k, c);
            }
        }
    }
    return p;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw DimensionError("sum: shapes differ");
    }
    IntMatrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) {
        s.data_[i] += b.data_[i];
    }
    return s;
}

IntMatrix operator-(const IntMatrix& a) {
    IntMatrix n = a;
    for (auto& x : n.data_) {
        x = -x;
    }
    return n;
}

std::string to_string(const IntMatrix& m) {
    std::ostringstream out;
    out << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << (r ? ",[" : "[");
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out << (c ? "," : "") << m(r, c).get_str();
        }
        out << ']';
    }
    out << ']';
    return out.str();
}

std::string to_string(const IntVector& v) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        out << (i ? "," : "") << v[i].get_str();
    }
    out << ')';
    return out.str();
}

IntVector SmithDecomposition::diagonal() const {
    IntVector d;
    const std::size_t n = std::min(D.rows(), D.cols());
    d.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        d.push_back(D(i, i));
    }
    return d;
}

std::string FgAbelianGroup::to_string() const {
    if (is_trivial()) {
        return "0";
    }
    std::string s;
    if (free_rank == 1) {
        s = "Z";
    } else if (free_rank > 1) {
        s = "Z^" + std::to_string(free_rank);
    }
    for (const auto& d : torsion_divisors) {
        if (!s.empty()) {
            s += " + ";
        }
        s += "Z/" + d.get_str();
    }
    return s;
}

namespace {

// Position of a nonzero entry of least absolute value in the trailing block [t:, t:].
bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    Integer best;
    for (std::size_t r = t; r < d.rows(); ++r) {
        for (std::size_t c = t; c < d.cols(); ++c) {
            if (sgn(d(r, c)) == 0) {
                continue;
            }
            Integer a = abs(d(r, c));
            if (!found || a < best) {
                found = true;
                best = std::move(a);
                pr = r;
                pc = c;
                if (best == 1) {
                    return true;
                }
            }
        }
    }
    return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    SmithDecomposition s{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols()), 0};
    IntMatrix& d = s.D;
    const std::size_t limit = std::min(m.rows(), m.cols());

    for (std::size_t t = 0; t < limit; ++t) {
        std::size_t pr = 0;
        std::size_t pc = 0;
        if (!find_pivot(d, t, pr, pc)) {
            break;
        }
        d.swap_rows(t, pr);
        s.U.swap_rows(t, pr);
        d.swap_cols(t, pc);
        s.V.swap_cols(t, pc);

        for (;;) {
            bool dirty = false;
            for (std::size_t r = t + 1; r < d.rows(); ++r) {
                if (sgn(d(r, t)) == 0) {
                    continue;
                }
                Integer q = d(r, t) / d(t, t);
                d.add_row_multiple(r, t, -q);
                s.U.add_row_multiple(r, t, -q);
                if (sgn(d(r, t)) != 0) {
                    dirty = true;
                }
            }
            for (std::size_t c = t + 1; c < d.cols(); ++c) {
                if (sgn(d(t, c)) == 0) {
                    continue;
                }
                Integer q = d(t, c) / d(t, t);
                d.add_col_multiple(c, t, -q);
                s.V.add_col_multiple(c, t, -q);
                if (sgn(d(t, c)) != 0) {
                    dirty = true;
                }
            }
            if (dirty) {
                // A remainder smaller than the pivot survived; move it into position.
                std::size_t best_r = t;
                std::size_t best_c = t;
                Integer best = abs(d(t, t));
                for (std::size_t r = t + 1; r < d.rows(); ++r) {
                    if (sgn(d(r, t)) != 0 && abs(d(r, t)) < best) {
                        best = abs(d(r, t));
                        best_r = r;
                        best_c = t;
                    }
                }
                for (std::size_t c = t + 1; c < d.cols(); ++c) {
                    if (sgn(d(t, c)) != 0 && abs(d(t, c)) < best) {
                        best = abs(d(t, c));
                        best_r = t;
                        best_c = c;
                    }
                }
                d.swap_rows(t, best_r);
                s.U.swap_rows(t, best_r);
                d.swap_cols(t, best_c);
                s.V.swap_cols(t, best_c);
                continue;
            }
            // Row and column are clear; enforce divisibility of the trailing block.
            bool divisible = true;
            for (std::size_t r = t + 1; r < d.rows() && divisible; ++r) {
                for (std::size_t c = t + 1; c < d.cols(); ++c) {
                    if (!mpz_divisible_p(d(r, c).get_mpz_t(), d(t, t).get_mpz_t())) {
                        d.add_row_multiple(t, r, Integer(1));
                        s.U.add_row_multiple(t, r, Integer(1));
                        divisible = false;
                        break;
                    }
                }
            }
            if (divisible) {
                break;
            }
        }
        if (sgn(d(t, t)) < 0) {
            d.negate_row(t);
            s.U.negate_row(t);
        }
        s.rank = t + 1;
    }
    return s;
}

FgAbelianGroup cokernel(const IntMatrix& m) {
    const auto s = smith_normal_form(m);
    FgAbelianGroup g;
    g.free_rank = m.rows() - s.rank;
    for (std::size_t i = 0; i < s.rank; ++i) {
        if (s.D(i, i) > 1) {
            g.torsion_divisors.push_back(s.D(i, i));
        }
    }
    return g;
}

IntMatrix kernel_basis(const IntMatrix& m) {
    const auto s = smith_normal_form(m);
    return s.V.block(0, s.rank, m.cols(), m.cols() - s.rank);
}

Integer determinant(const IntMatrix& m) {
    if (!m.is_square()) {
        throw DimensionError("determinant of a " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                             " matrix");
    }
    const std::size_t n = m.rows();
    if (n == 0) {
        return 1;
    }
    IntMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(a(k, k)) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && sgn(a(swap, k)) == 0) {
                ++swap;
            }
            if (swap == n) {
                return 0;
            }
            a.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = std::move(v);
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) {
    return smith_normal_form(m).rank;
}

std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b) {
    if (b.size() != m.rows()) {
        throw DimensionError("solve: right-hand side length mismatch");
    }
    const auto s = smith_normal_form(m);
    const IntVector y = s.U.apply(b);
    IntVector z(m.cols());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < s.rank) {
            if (!mpz_divisible_p(y[i].get_mpz_t(), s.D(i, i).get_mpz_t())) {
                return std::nullopt;
            }
            z[i] = y[i] / s.D(i, i);
        } else if (sgn(y[i]) != 0) {
            return std::nullopt;
        }
    }
    return s.V.apply(z);
}

bool is_unimodular(const IntMatrix& m) {
    return m.is_square() && abs(determinant(m)) == 1;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    if (!m.is_square()) {
        throw DimensionError("inverse of a non-square matrix");
    }
    const auto s = smith_normal_form(m);
    if (s.rank != m.rows() || (m.rows() > 0 && s.D(m.rows() - 1, m.rows() - 1) != 1)) {
        throw PreconditionError("matrix is not unimodular");
    }
    // M = U^-1 D V^-1 with D = I, so M^-1 = V U.
    return s.V * s.U;
}

Inertia inertia(const IntMatrix& symmetric) {
    if (!symmetric.is_symmetric()) {
        throw InvariantError("inertia requires a symmetric matrix");
    }
    const std::size_t n = symmetric.rows();
    std::vector<mpq_class> a(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            a[r * n + c] = mpq_class(symmetric(r, c));
        }
    }
    auto at = [&](std::size_t r, std::size_t c) -> mpq_class& { return a[r * n + c]; };

    Inertia in;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        // Congruence diagonalization: pick a nonzero diagonal pivot, or
        // manufacture one from an off-diagonal entry.
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (!done[i] && sgn(at(i, i)) != 0) {
                p = i;
                break;
            }
        }
        if (p == n) {
            std::size_t i0 = n;
            std::size_t j0 = n;
            for (std::size_t i = 0; i < n && i0 == n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (!done[i] && !done[j] && sgn(at(i, j)) != 0) {
                        i0 = i;
                        j0 = j;
                        break;
                    }
                }
            }
            if (i0 == n) {
                break;
            }
            // e_i <- e_i + e_j makes the (i,i) entry 2 a_ij.
            for (std::size_t c = 0; c < n; ++c) {
                at(i0, c) += at(j0, c);
            }
            for (std::size_t r = 0; r < n; ++r) {
                at(r, i0) += at(r, j0);
            }
            p = i0;
        }
        const mpq_class pivot = at(p, p);
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || i == p || sgn(at(i, p)) == 0) {
                continue;
            }
            const mpq_class f = at(i, p) / pivot;
            for (std::size_t c = 0; c < n; ++c) {
                at(i, c) -= f * at(p, c);
            }
            for (std::size_t r = 0; r < n; ++r) {
                at(r, i) -= f * at(r, p);
            }
        }
        done[p] = true;
        if (sgn(pivot) > 0) {
            ++in.positive;
        } else {
            ++in.negative;
        }
    }
    in.zero = n - in.positive - in.negative;
    return in;
}

bool lex_less(const IntVector& a, const IntVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace handlecalc
