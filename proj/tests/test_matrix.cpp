#include "bpu/matrix.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bpu;

namespace {

// Rank over Q by plain elimination, independent of the Smith form code.
std::size_t rational_rank(const Matrix& A) {
    std::vector<std::vector<mpq_class>> a(A.rows(), std::vector<mpq_class>(A.cols()));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) a[i][j] = A(i, j).value();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < A.cols() && rank < A.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < A.rows() && sgn(a[piv][c]) == 0) ++piv;
        if (piv == A.rows()) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t i = rank + 1; i < A.rows(); ++i) {
            mpq_class f = a[i][c] / a[rank][c];
            for (std::size_t j = c; j < A.cols(); ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

int padic_valuation(const mpq_class& q, long p) {
    return valuation(PLocal(q.get_num()), Prime(p)) - valuation(PLocal(q.get_den()), Prime(p));
}

Matrix random_matrix(std::mt19937& rng, const Prime& p) {
    std::uniform_int_distribution<int> dim(1, 12), entry(-6, 6), style(0, 3), den(1, 4);
    const std::size_t r = dim(rng), c = dim(rng);
    Matrix A(r, c);
    const long q = p.value();
    const int s = style(rng);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            long v = entry(rng);
            if (s == 1) v *= q;                       // high valuations
            if (s == 2 && (i + j) % 3 == 0) v = 0;    // sparse
            long d = den(rng);
            while (d % q == 0) ++d;
            A(i, j) = PLocal::fraction(v, d, p);
        }
    // Occasionally force a rank drop.
    if (s == 3 && r > 1)
        for (std::size_t j = 0; j < c; ++j) A(r - 1, j) = A(0, j) * PLocal(q);
    return A;
}

} // namespace

TEST(Smith, FrozenTwoByTwo) {
    // [[2,4],[6,8]] has determinant -8, a unit at 3: both invariant factors are units.
    Prime p(3);
    Matrix A = Matrix::from_rows({{2, 4}, {6, 8}});
    auto f = smith_normal_form(A, p);
    EXPECT_EQ(f.rank, 2u);
    EXPECT_EQ(f.exponents, (std::vector<int>{0, 0}));
    EXPECT_EQ(f.U * A * f.V, f.D);
    EXPECT_TRUE(cokernel_iso_type(A, p).is_zero());
}

TEST(Smith, FrozenTorsion) {
    // diag(3, 9) up to units: determinantal divisors 3 and 27.
    Prime p(3);
    Matrix A = Matrix::from_rows({{3, 0}, {0, 9}});
    auto f = smith_normal_form(A, p);
    EXPECT_EQ(f.exponents, (std::vector<int>{1, 2}));
    EXPECT_EQ(cokernel_iso_type(A, p).str(3), "Z/3+Z/9");
    Matrix B = Matrix::from_rows({{3}, {0}});
    EXPECT_EQ(cokernel_iso_type(B, p).str(3), "Z(3)+Z/3");
    Matrix C = Matrix::from_rows({{6, 3}, {3, 6}});
    // det 27, gcd of entries 3: diag(3, 9)
    EXPECT_EQ(smith_normal_form(C, p).exponents, (std::vector<int>{1, 2}));
}

TEST(Smith, SolveFrozen) {
    Prime p(3);
    Matrix A = Matrix::from_rows({{1, 0}, {0, 3}});
    std::vector<PLocal> b{5, 6};
    auto x = solve_mod_image(A, b, p);
    ASSERT_TRUE(x);
    EXPECT_EQ((*x)[0], PLocal(5));
    EXPECT_EQ((*x)[1], PLocal(2));
    std::vector<PLocal> bad{0, 1};
    EXPECT_FALSE(solve_mod_image(A, bad, p));
}

TEST(Smith, KernelAndImage) {
    Prime p(5);
    Matrix A = Matrix::from_rows({{1, 2, 3}, {2, 4, 6}});
    Matrix K = kernel_basis(A, p);
    EXPECT_EQ(K.cols(), 2u);
    EXPECT_TRUE((A * K).is_zero());
    Matrix I = image_basis(A, p);
    EXPECT_EQ(I.cols(), 1u);
    ImageSolver s(I, p);
    for (std::size_t j = 0; j < A.cols(); ++j) EXPECT_TRUE(s.contains(A.column(j)));
}

TEST(Smith, KernelIsSaturated) {
    // x + 3y = 0 over Z_(3): kernel spanned by (-3, 1), not by a multiple.
    Prime p(3);
    Matrix A = Matrix::from_rows({{1, 3}});
    Matrix K = kernel_basis(A, p);
    ASSERT_EQ(K.cols(), 1u);
    int v = std::min(valuation(K(0, 0), p), valuation(K(1, 0), p));
    EXPECT_EQ(v, 0);
}

TEST(SmithProperty, ContractOn500RandomMatrices) {
    std::mt19937 rng(20240611);
    const long primes[] = {3, 5, 7};
    for (int trial = 0; trial < 500; ++trial) {
        Prime p(primes[trial % 3]);
        Matrix A = random_matrix(rng, p);
        auto f = smith_normal_form(A, p);
        SCOPED_TRACE("trial " + std::to_string(trial));
        ASSERT_EQ(f.U * A * f.V, f.D);
        ASSERT_EQ(f.U * f.U_inv, Matrix::identity(A.rows()));
        ASSERT_EQ(f.V * f.V_inv, Matrix::identity(A.cols()));
        ASSERT_EQ(padic_valuation(determinant(f.U), p.value()), 0);
        ASSERT_EQ(padic_valuation(determinant(f.V), p.value()), 0);
        ASSERT_EQ(f.rank, rational_rank(A));
        for (std::size_t i = 0; i < A.rows(); ++i)
            for (std::size_t j = 0; j < A.cols(); ++j) {
                if (i == j && i < f.rank) {
                    ASSERT_EQ(f.D(i, i), ppow(p, f.exponents[i]));
                } else {
                    ASSERT_TRUE(f.D(i, j).is_zero());
                }
            }
        for (std::size_t i = 1; i < f.rank; ++i) ASSERT_LE(f.exponents[i - 1], f.exponents[i]);
        // Full-rank square case: total torsion length is v_p(det A).
        if (A.rows() == A.cols() && f.rank == A.rows()) {
            int sum = 0;
            for (int e : f.exponents) sum += e;
            ASSERT_EQ(sum, padic_valuation(determinant(A), p.value()));
        }
    }
}

TEST(Matrix, Shapes) {
    Matrix A = Matrix::from_rows({{1, 2}, {3, 4}});
    EXPECT_EQ(A.transpose()(0, 1), PLocal(3));
    Matrix B = A.hconcat(Matrix::identity(2));
    EXPECT_EQ(B.cols(), 4u);
    EXPECT_EQ(B.rows_range(1, 2)(0, 0), PLocal(3));
    EXPECT_EQ(determinant(A), -2);
}
