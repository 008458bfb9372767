#include "bpu/partitions.hpp"
#include "bpu/symmetric.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bpu;

namespace {

Polynomial v(int n, int i) { return Polynomial::variable(Alphabet::TorusV, n, i); }
Polynomial c(int n, int i) { return chern_class(i, n); }

Polynomial random_chern(std::mt19937& rng, int n, int weight) {
    std::uniform_int_distribution<int> coeff(-5, 5);
    Polynomial f(Alphabet::ChernC, n, 2 * weight);
    for (const auto& part : partitions(weight, std::min(weight, n)))
        if (rng() % 2) f.add_term(partition_exponents(part, n), coeff(rng));
    return f;
}

Polynomial random_torus(std::mt19937& rng, int n, int weight) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    Polynomial f(Alphabet::TorusV, n, 2 * weight);
    for (const auto& e : weight_vectors(weight, n))
        if (rng() % 3 == 0) f.add_term(e, coeff(rng));
    return f;
}

// Direct expansion of prod (1 + v_i) in degree 2k, independent of the combination walk.
Polynomial sigma_by_product(int n, int k) {
    Polynomial total = Polynomial::constant(Alphabet::TorusV, n, 1);
    std::vector<Polynomial> by_degree{total};
    for (int i = 1; i <= n; ++i) {
        std::vector<Polynomial> next;
        for (int d = 0; d <= i; ++d) {
            Polynomial term(Alphabet::TorusV, n, 2 * d);
            if (d < static_cast<int>(by_degree.size())) term += by_degree[d];
            if (d >= 1 && d - 1 < static_cast<int>(by_degree.size())) term += by_degree[d - 1] * v(n, i);
            next.push_back(term);
        }
        by_degree = next;
    }
    return by_degree.at(k);
}

} // namespace

TEST(Polynomial, DegreesAndErrors) {
    const int n = 3;
    EXPECT_EQ(c(n, 2).degree(), 4);
    EXPECT_THROW(c(n, 1) + c(n, 2), DegreeMismatch);
    EXPECT_THROW(c(n, 1) + v(n, 1), AlphabetMismatch);
    EXPECT_EQ((c(n, 1) * c(n, 2)).degree(), 6);
    EXPECT_TRUE(c(n, 4).is_zero());
    EXPECT_EQ(c(n, 0), Polynomial::constant(Alphabet::ChernC, n, 1));
}

TEST(Polynomial, Printing) {
    const int n = 3;
    Polynomial f = chern_monomial({1, 1, 3}, n) - chern_monomial({2, 3}, n, 3);
    EXPECT_EQ(f.str(), "c3*c1^2 - 3*c3*c2");
}

TEST(Polynomial, ChernTruncationCounter) {
    long before = chern_truncations().load();
    Polynomial z = chern_monomial({1, 5}, 4);
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.degree(), 12);
    EXPECT_EQ(chern_truncations().load(), before + 1);
}

TEST(Symmetric, NewtonIdentity) {
    // v1^2 + v2^2 = c1^2 - 2 c2
    const int n = 2;
    Polynomial power = v(n, 1) * v(n, 1) + v(n, 2) * v(n, 2);
    Polynomial want = c(n, 1) * c(n, 1) - c(n, 2).scaled(2);
    EXPECT_EQ(express_symmetric_in_c(power), want);
}

TEST(Symmetric, PsiStarSmall) {
    // psi*(c1^2) = v1^2 + 2 v1 v2 + v2^2 for n = 2
    const int n = 2;
    Polynomial want = v(n, 1) * v(n, 1) + (v(n, 1) * v(n, 2)).scaled(2) + v(n, 2) * v(n, 2);
    EXPECT_EQ(psi_star(c(n, 1) * c(n, 1)), want);
}

TEST(Symmetric, SigmaMatchesProductExpansion) {
    for (int n = 1; n <= 5; ++n)
        for (int k = 0; k <= n; ++k) EXPECT_EQ(elementary_symmetric(k, Alphabet::TorusV, n), sigma_by_product(n, k));
}

TEST(Symmetric, DivergenceOfSigma) {
    // div sigma_k = (n-k+1) sigma_{k-1}; sigma_2 in 3 variables -> 2 sigma_1
    EXPECT_EQ(divergence(elementary_symmetric(2, Alphabet::TorusV, 3)), elementary_symmetric(1, Alphabet::TorusV, 3).scaled(2));
}

TEST(Symmetric, NotSymmetricRejected) {
    EXPECT_THROW(express_symmetric_in_c(v(2, 1)), NotSymmetric);
    EXPECT_FALSE(is_symmetric(v(3, 1) * v(3, 2)));
    EXPECT_TRUE(is_symmetric(elementary_symmetric(2, Alphabet::TorusV, 3)));
}

TEST(Symmetric, PrimedBasisRoundTrip) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Polynomial f = random_torus(rng, 3, 1 + trial % 4);
        EXPECT_EQ(from_primed_basis(to_primed_basis(f)), f);
    }
}

TEST(Symmetric, FusedPsiStarPrimedMatchesComposite) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 4;
        Polynomial f = random_chern(rng, n, 1 + trial % 5);
        EXPECT_EQ(psi_star_primed(f), to_primed_basis(psi_star(f)));
    }
}

TEST(Symmetric, LineRestriction) {
    // v_i -> v sends sigma_k to C(n,k) v^k
    const int n = 4;
    for (int k = 0; k <= n; ++k) {
        Polynomial img = b_phi_star(elementary_symmetric(k, Alphabet::TorusV, n));
        EXPECT_EQ(img.coefficient(Exponents{static_cast<std::uint8_t>(k)}), PLocal(binomial(n, k)));
    }
}

TEST(SymmetricProperty, PsiStarHomomorphismAndRoundTrip200) {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 4;
        Polynomial f = random_chern(rng, n, 1 + trial % 3);
        Polynomial g = random_chern(rng, n, 1 + (trial / 3) % 3);
        Polynomial h = random_chern(rng, n, f.degree() / 2);
        SCOPED_TRACE("trial " + std::to_string(trial));
        ASSERT_EQ(psi_star(f * g), psi_star(f) * psi_star(g));
        ASSERT_EQ(psi_star(f + h), psi_star(f) + psi_star(h));
        ASSERT_EQ(express_symmetric_in_c(psi_star(f)), f);
    }
}

TEST(SymmetricProperty, DivergenceIsDerivation200) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 4;
        Polynomial f = random_torus(rng, n, trial % 4);
        Polynomial g = random_torus(rng, n, (trial / 4) % 4);
        SCOPED_TRACE("trial " + std::to_string(trial));
        Polynomial lhs = divergence(f * g);
        Polynomial rhs = divergence(f) * g + f * divergence(g);
        ASSERT_EQ(lhs, rhs);
    }
}

TEST(Partitions, OrderAndCount) {
    auto three = partitions(3, 3);
    ASSERT_EQ(three.size(), 3u);
    EXPECT_EQ(three[0], (Partition{3}));
    EXPECT_EQ(three[1], (Partition{1, 2}));
    EXPECT_EQ(three[2], (Partition{1, 1, 1}));
    EXPECT_EQ(partitions(7, 7).size(), 15u);
    EXPECT_EQ(partitions(7, 2).size(), 4u);
    EXPECT_EQ(partitions(0, 0).size(), 1u);
    // weight vectors: C(w+n-1, n-1)
    EXPECT_EQ(weight_vectors(3, 3).size(), 10u);
}
