#include "bpu/verify.hpp"

#include <gtest/gtest.h>

using namespace bpu;

namespace {

Polynomial cm(std::vector<int> parts, int n, PLocal c = 1) { return chern_monomial(parts, n, c); }

} // namespace

TEST(Order, ThreeMonomials) {
    auto ob = build_order(3, Prime(3), 3);
    ASSERT_EQ(ob.monomials.size(), 3u);
    EXPECT_EQ(ob.monomials[0], (Partition{3}));
    EXPECT_EQ(ob.monomials[1], (Partition{1, 2}));
    EXPECT_EQ(ob.monomials[2], (Partition{1, 1, 1}));
    for (int t = 1; t <= 7; ++t) EXPECT_TRUE(order_is_strict_total(t, 5));
}

TEST(Order, BarImages) {
    const int n = 6;
    Prime p(3);
    // i_l = 2, p does not divide it: bar(c2 x1) = d3(c3) = (n-2) c2 x1
    EXPECT_EQ(bar_image({2}, p, n), cm({2}, n, n - 2));
    // i_l = p: unchanged
    EXPECT_EQ(bar_image({3}, p, n), cm({3}, n));
    // bar(c1^2 x1) = d3(c2 c1) = (n-1) c1^2 + n c2
    EXPECT_EQ(bar_image({1, 1}, p, n), cm({1, 1}, n, n - 1) + cm({2}, n, n));
}

TEST(Order, BarImagesAreLower) {
    Prime p(5);
    for (int t = 1; t <= 7; ++t) {
        auto ob = build_order(t, p, 10);
        for (std::size_t j = 0; j < ob.monomials.size(); ++j)
            for (const auto& [e, c] : ob.bar_images[j].terms()) {
                Partition part = exponents_partition(e);
                EXPECT_TRUE(part == ob.monomials[j] || order_less(part, ob.monomials[j]));
            }
    }
}

TEST(Cbar, PassesInOperativeCase) {
    EXPECT_TRUE(verify_lemma_cbar(4, Prime(3), 3).pass());
    EXPECT_TRUE(verify_lemma_cbar(7, Prime(5), 10).pass());
    auto trivial = verify_lemma_cbar(1, Prime(3), 3);
    EXPECT_TRUE(trivial.pass());
    EXPECT_EQ(trivial.diagonal_valuations, (std::vector<int>{0}));
}

TEST(Cbar, FailsWhenDiagonalIsNotAUnit) {
    // n = 4, p = 3, t = 1: bar(c1 x1) = d3(c2) = 3 c1 x1, valuation 1.
    auto rep = verify_lemma_cbar(1, Prime(3), 4);
    EXPECT_FALSE(rep.pass());
    EXPECT_EQ(rep.diagonal_valuations, (std::vector<int>{1}));
}

TEST(Witness, Coefficients) {
    auto w = witness_coefficients(Prime(5), 5);
    EXPECT_EQ(w.A.at(1), PLocal(6));
    EXPECT_EQ(w.A.at(2), PLocal::fraction(3, 2, Prime(5)));
    // (n-4) A1 = (n-1) A2
    EXPECT_EQ(PLocal(1) * w.A.at(1), PLocal(4) * w.A.at(2));
    auto w3 = witness_coefficients(Prime(3), 3);
    EXPECT_EQ(w3.A.at(1), PLocal(2));
    EXPECT_EQ(w3.B.at(3), PLocal(1)); // empty product
}

TEST(Witness, HandExpandedAtP3N3) {
    Prime p(3);
    const int n = 3;
    Polynomial x1 = witness_element(Witness::X1, p, n);
    EXPECT_EQ(x1, cm({2, 2, 1}, n) - cm({3, 2}, n, 3) - cm({3, 1, 1}, n, 4));
    // d(c1) = 3, d(c2) = 2 c1, d(c3) = c2: the c2 c1^2 and c2^2 terms cancel
    EXPECT_EQ(chern_divergence(x1), cm({3, 1}, n, -30));
    EXPECT_EQ(witness_element(Witness::X2, p, n), cm({3, 3}, n));
    Polynomial x3 = witness_element(Witness::X3, p, n);
    EXPECT_EQ(x3, cm({2, 2, 2}, n, PLocal::fraction(1, 2, p)) - cm({3, 2, 1}, n, 3));
    EXPECT_EQ(chern_divergence(x3), cm({3, 1, 1}, n, -6) - cm({3, 2}, n, 9));
}

TEST(Witness, PrintedX3CoefficientOnlyWorksAtThree) {
    EXPECT_EQ(witness_element(Witness::X3AsPrinted, Prime(3), 6), witness_element(Witness::X3, Prime(3), 6));
    for (auto [q, n] : std::vector<std::pair<long, int>>{{5, 5}, {5, 10}, {7, 7}}) {
        Prime p(q);
        Polynomial d = chern_divergence(witness_element(Witness::X3AsPrinted, p, n));
        Polynomial lead = witness_target(Witness::X3, p, n);
        EXPECT_NE(d.coefficient(lead.terms().begin()->first), lead.terms().begin()->second);
    }
}

TEST(Witness, NonUnitDenominator) {
    // n - 1 = 3 at p = 3
    EXPECT_THROW(witness_element(Witness::X3, Prime(3), 4), NonUnitDenominator);
}

TEST(Witness, LemmaForAllPairs) {
    for (auto [q, n] : std::vector<std::pair<long, int>>{{3, 3}, {3, 6}, {3, 9}, {3, 12}, {5, 5}, {5, 10}, {7, 7}}) {
        auto rep = verify_lemma_witnesses(Prime(q), n);
        for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << q << "," << n << " " << c.name << " " << c.details;
    }
}

TEST(Props, Vanishing) {
    auto rep = verify_prop_vanishing(Prime(3), 9);
    for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.details;
}

TEST(Theorem, Tables) {
    auto a = verify_theorem(Prime(3), 9);
    EXPECT_TRUE(a.pass());
    EXPECT_EQ(a.cohomology.at(3).p_primary.str(3), "Z/9");
    auto b = verify_theorem(Prime(3), 4);
    EXPECT_TRUE(b.pass());
    for (const auto& d : b.cohomology.degrees) EXPECT_TRUE(d.p_primary.is_zero());
    EngineOptions off;
    off.use_vistoli = false;
    EXPECT_FALSE(verify_theorem(Prime(3), 3, off).pass());
    EXPECT_EQ(expected_p_primary(7, 7, 16), (IsoType{0, {1}}));
    EXPECT_TRUE(expected_p_primary(7, 7, 17).is_zero());
}
