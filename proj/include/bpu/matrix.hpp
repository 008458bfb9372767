#pragma once

// Dense matrices over Z_(p) and the Smith normal form machinery behind every
// kernel, image and cokernel computed by the engine.
//
// Presentation convention: a module is presented by a relation matrix whose
// rows index generators and whose columns are relations.

#include "bpu/plocal.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bpu {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// Builds a matrix from rows of integers; convenient in tests.
    static Matrix from_rows(const std::vector<std::vector<long>>& rows) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows.front().size() : 0;
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            assert(rows[i].size() == c);
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    PLocal& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const PLocal& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<PLocal> column(std::size_t j) const {
        std::vector<PLocal> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_column(std::size_t j, std::span<const PLocal> v) {
        assert(v.size() == rows_);
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    static Matrix from_columns(std::size_t rows, const std::vector<std::vector<PLocal>>& cols) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
        return m;
    }

    /// [this | other]
    Matrix hconcat(const Matrix& other) const {
        assert(rows_ == other.rows_);
        Matrix m(rows_, cols_ + other.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
        }
        return m;
    }

    Matrix rows_range(std::size_t begin, std::size_t end) const {
        Matrix m(end - begin, cols_);
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i - begin, j) = (*this)(i, j);
        return m;
    }

    Matrix transpose() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const PLocal& x) { return x.is_zero(); });
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        assert(a.cols_ == b.rows_);
        Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const PLocal& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
            }
        return m;
    }

    std::vector<PLocal> apply(std::span<const PLocal> x) const {
        assert(x.size() == cols_);
        std::vector<PLocal> y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!x[j].is_zero() && !(*this)(i, j).is_zero()) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += f * row[src]
    void add_row(std::size_t dst, std::size_t src, const PLocal& f) {
        for (std::size_t j = 0; j < cols_; ++j)
            if (!(*this)(src, j).is_zero()) (*this)(dst, j) += f * (*this)(src, j);
    }
    /// col[dst] += f * col[src]
    void add_col(std::size_t dst, std::size_t src, const PLocal& f) {
        for (std::size_t i = 0; i < rows_; ++i)
            if (!(*this)(i, src).is_zero()) (*this)(i, dst) += f * (*this)(i, src);
    }
    void scale_row(std::size_t r, const PLocal& f) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) *= f;
    }
    void scale_col(std::size_t c, const PLocal& f) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) *= f;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<PLocal> data_;
};

/// Isomorphism class of a finitely generated Z_(p)-module.
struct IsoType {
    int free_rank = 0;
    std::vector<int> torsion; ///< exponents k of summands Z/p^k, non-decreasing

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool has_torsion() const { return !torsion.empty(); }
    IsoType torsion_part() const { return IsoType{0, torsion}; }

    friend bool operator==(const IsoType&, const IsoType&) = default;

    IsoType& operator+=(const IsoType& o) {
        free_rank += o.free_rank;
        torsion.insert(torsion.end(), o.torsion.begin(), o.torsion.end());
        std::sort(torsion.begin(), torsion.end());
        return *this;
    }

    /// "0", "Z(3)^2", "Z/3", "Z/9+Z/3" ... summands joined by "+".
    std::string str(long p) const {
        if (is_zero()) return "0";
        std::string out;
        auto append = [&out](const std::string& s) {
            if (!out.empty()) out += "+";
            out += s;
        };
        if (free_rank > 0) {
            std::string z = "Z(" + std::to_string(p) + ")";
            if (free_rank > 1) z += "^" + std::to_string(free_rank);
            append(z);
        }
        for (int k : torsion) append("Z/" + ipow(p, k).get_str());
        return out;
    }
};

/// U * A * V = D, with U, V invertible over Z_(p) and D diagonal, each nonzero
/// diagonal entry a power of p, valuations non-decreasing.
struct SmithForm {
    Matrix U, U_inv, D, V, V_inv;
    std::size_t rank = 0;
    std::vector<int> exponents; ///< valuation of D(i,i) for i < rank

    const PLocal& diag(std::size_t i) const { return D(i, i); }
};

/// Pivot: minimal p-valuation in the remaining block, ties broken by (row, col).
inline SmithForm smith_normal_form(const Matrix& A, const Prime& p) {
    const std::size_t m = A.rows(), n = A.cols();
    SmithForm f{Matrix::identity(m), Matrix::identity(m), A, Matrix::identity(n), Matrix::identity(n), 0, {}};
    Matrix& D = f.D;
    for (std::size_t k = 0; k < std::min(m, n); ++k) {
        int best = kInfiniteValuation;
        std::size_t pi = 0, pj = 0;
        for (std::size_t i = k; i < m && best > 0; ++i)
            for (std::size_t j = k; j < n; ++j) {
                if (D(i, j).is_zero()) continue;
                int v = valuation(D(i, j), p);
                if (v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                    if (v == 0) break;
                }
            }
        if (best == kInfiniteValuation) break;

        D.swap_rows(k, pi);
        f.U.swap_rows(k, pi);
        f.U_inv.swap_cols(k, pi);
        D.swap_cols(k, pj);
        f.V.swap_cols(k, pj);
        f.V_inv.swap_rows(k, pj);

        // Scale the pivot to exactly p^best.
        PLocal pk = ppow(p, best);
        PLocal unit = divide(D(k, k), pk, p);
        PLocal unit_inv = divide(PLocal(1), unit, p);
        D.scale_row(k, unit_inv);
        f.U.scale_row(k, unit_inv);
        f.U_inv.scale_col(k, unit);

        for (std::size_t i = k + 1; i < m; ++i) {
            if (D(i, k).is_zero()) continue;
            PLocal factor = divide(D(i, k), pk, p);
            D.add_row(i, k, -factor);
            f.U.add_row(i, k, -factor);
            f.U_inv.add_col(k, i, factor);
        }
        for (std::size_t j = k + 1; j < n; ++j) {
            if (D(k, j).is_zero()) continue;
            PLocal factor = divide(D(k, j), pk, p);
            D.add_col(j, k, -factor);
            f.V.add_col(j, k, -factor);
            f.V_inv.add_row(k, j, factor);
        }
        f.rank = k + 1;
        f.exponents.push_back(best);
    }
    return f;
}

/// Iso-type of Z_(p)^g / column-span(relations), relations being g x k.
inline IsoType cokernel_iso_type(const Matrix& relations, const Prime& p) {
    IsoType t;
    auto f = smith_normal_form(relations, p);
    t.free_rank = static_cast<int>(relations.rows() - f.rank);
    for (int e : f.exponents)
        if (e > 0) t.torsion.push_back(e);
    return t;
}

inline IsoType cokernel_iso_type(std::size_t generators, const Matrix& relations, const Prime& p) {
    if (relations.cols() == 0) return IsoType{static_cast<int>(generators), {}};
    assert(relations.rows() == generators);
    return cokernel_iso_type(relations, p);
}

/// Basis of {x : A x = 0}, as columns.  The result is a direct summand.
inline Matrix kernel_basis(const Matrix& A, const Prime& p) {
    auto f = smith_normal_form(A, p);
    Matrix K(A.cols(), A.cols() - f.rank);
    for (std::size_t j = f.rank; j < A.cols(); ++j)
        for (std::size_t i = 0; i < A.cols(); ++i) K(i, j - f.rank) = f.V(i, j);
    return K;
}

/// A basis of the column span of A.
inline Matrix image_basis(const Matrix& A, const Prime& p) {
    auto f = smith_normal_form(A, p);
    Matrix B(A.rows(), f.rank);
    for (std::size_t j = 0; j < f.rank; ++j) {
        PLocal d = f.D(j, j);
        for (std::size_t i = 0; i < A.rows(); ++i) B(i, j) = f.U_inv(i, j) * d;
    }
    return B;
}

/// Reusable solver for A x = b over Z_(p).
class ImageSolver {
public:
    ImageSolver(const Matrix& A, const Prime& p) : p_(p), rows_(A.rows()), cols_(A.cols()), f_(smith_normal_form(A, p)) {}

    std::optional<std::vector<PLocal>> solve(std::span<const PLocal> b) const {
        assert(b.size() == rows_);
        std::vector<PLocal> c = f_.U.apply(b);
        std::vector<PLocal> y(cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i < f_.rank) {
                if (c[i].is_zero()) continue;
                if (valuation(c[i], p_) < f_.exponents[i]) return std::nullopt;
                y[i] = divide(c[i], f_.D(i, i), p_);
            } else if (!c[i].is_zero()) {
                return std::nullopt;
            }
        }
        return f_.V.apply(y);
    }

    bool contains(std::span<const PLocal> b) const { return solve(b).has_value(); }

private:
    Prime p_;
    std::size_t rows_, cols_;
    SmithForm f_;
};

/// x with A x = b over Z_(p), or nullopt when b is not in the image.
inline std::optional<std::vector<PLocal>> solve_mod_image(const Matrix& A, std::span<const PLocal> b, const Prime& p) {
    if (A.cols() == 0) {
        for (const auto& x : b)
            if (!x.is_zero()) return std::nullopt;
        return std::vector<PLocal>{};
    }
    return ImageSolver(A, p).solve(b);
}

/// Determinant over Q by fraction-field elimination.
inline mpq_class determinant(const Matrix& A) {
    assert(A.rows() == A.cols());
    const std::size_t n = A.rows();
    std::vector<mpq_class> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = A(i, j).value();
    mpq_class det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && sgn(a[piv * n + k]) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
            det = -det;
        }
        det *= a[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (sgn(a[i * n + k]) == 0) continue;
            mpq_class f = a[i * n + k] / a[k * n + k];
            for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
        }
    }
    return det;
}

} // namespace bpu
