#include "bpu/report.hpp"

#include <gtest/gtest.h>

using namespace bpu;

TEST(E2, Ranks) {
    Context ctx(Sequence::U, 3, 4);
    Page e2 = build_e2(ctx);
    // (0,8): partitions of 4 with parts <= 4
    EXPECT_EQ(e2.at({0, 8}).iso, (IsoType{5, {}}));
    // (3,4): c2, c1^2 tensored with the free x1
    EXPECT_EQ(e2.at({3, 4}).iso, (IsoType{2, {}}));
    // (8,2): c1 * y, a Z/3
    EXPECT_EQ(e2.at({8, 2}).iso.str(3), "Z/3");
    // s + t = 15 is the working edge of the grid; 16 is not kept
    EXPECT_NE(e2.find({3, 12}), nullptr);
    EXPECT_EQ(e2.find({3, 14}), nullptr);
}

TEST(E2, LabelsAndCoordinates) {
    Context ctx(Sequence::U, 3, 3);
    Page e2 = build_e2(ctx);
    const auto& e = e2.at({8, 4});
    Polynomial f = chern_monomial({1, 1}, 3, 2) + chern_monomial({2}, 3);
    auto coords = e.coordinates(f);
    EXPECT_EQ(e.polynomial(coords), f);
    EXPECT_EQ(e.label(*e.index_of(partition_exponents({1, 1}, 3))), "c1^2*y");
}

TEST(TurnPage, CyclesAndBoundaries) {
    // d3(c1) = 3 x1 at p = 3, n = 3: E4^{3,0} = Z/3, E4^{0,2} = 0.
    Context ctx(Sequence::U, 3, 3);
    auto ss = compute(ctx);
    const Page& e4 = ss.pages.at(1);
    EXPECT_EQ(e4.r, 5);
    EXPECT_EQ(e4.at({3, 0}).iso.str(3), "Z/3");
    EXPECT_TRUE(e4.at({0, 2}).iso.is_zero());
    EXPECT_EQ(e4.at({0, 0}).iso, (IsoType{1, {}}));
}

TEST(TurnPage, PrimePowerOrder) {
    // n = 9: d3(c1) = 9 x1, so E4^{3,0} = Z/9.
    auto ss = compute(Context(Sequence::U, 3, 9));
    EXPECT_EQ(ss.einf().at({3, 0}).iso.str(3), "Z/9");
}

TEST(Engine, NonDivisibleCase) {
    // p does not divide n: E4^{3,4} = Z/3{c1^2 x1} and d5 kills y.
    auto ss = compute(Context(Sequence::U, 3, 4));
    EXPECT_EQ(ss.page_at(5).at({3, 4}).iso.str(3), "Z/3");
    EXPECT_TRUE(ss.einf().at({8, 0}).iso.is_zero());
    EXPECT_TRUE(ss.einf().at({3, 4}).iso.is_zero());
}

TEST(Engine, SelfChecks) {
    for (auto seq : {Sequence::U, Sequence::T, Sequence::K})
        for (auto [p, n] : std::vector<std::pair<long, int>>{{3, 3}, {3, 4}, {5, 5}}) {
            if (seq == Sequence::T && n > 4) continue;
            auto ss = compute(Context(seq, p, n));
            for (const auto& c : self_checks(ss)) EXPECT_TRUE(c.pass) << sequence_name(seq) << " " << c.name << " " << c.details;
        }
}

TEST(Engine, KContractible) {
    for (long p : {3L, 5L, 7L}) {
        auto ss = compute(Context(Sequence::K, p, 1));
        for (const auto& [b, e] : ss.einf().entries) {
            if (b.total() == 0 || b.total() > ss.ctx.t_max) continue;
            EXPECT_TRUE(e.is_zero()) << "p = " << p << " at " << b.str();
        }
    }
}

TEST(Engine, TColumnZeroDegeneratesAtE4) {
    // rank of E4^{0,t} = monomials of degree t/2 in n-1 variables
    for (auto [p, n] : std::vector<std::pair<long, int>>{{3, 2}, {3, 3}, {5, 3}}) {
        auto ss = compute(Context(Sequence::T, p, n));
        const Page& e4 = ss.pages.at(1);
        for (int t = 0; t <= ss.ctx.t_max; t += 2) {
            long want = binomial(t / 2 + n - 2, n - 2).get_si();
            EXPECT_EQ(e4.at({0, t}).iso, (IsoType{static_cast<int>(want), {}})) << "t = " << t;
        }
    }
}

TEST(Engine, TruncationMarked) {
    // t_max = 8 keeps (3,6) = Z/3, whose d5 target (8,2) lies past the grid.
    auto ss = compute(Context(Sequence::U, 3, 3, 8));
    EXPECT_EQ(ss.page_at(5).at({3, 6}).iso.str(3), "Z/3");
    bool any = false;
    for (const auto& pg : ss.pages)
        for (const auto& [b, e] : pg.entries) any = any || e.truncated;
    EXPECT_TRUE(any);
}

TEST(Report, TheoremShape) {
    auto rep = assemble_report(compute(Context(Sequence::U, 3, 6)));
    EXPECT_EQ(rep.r, 1);
    EXPECT_EQ(rep.m, 2);
    EXPECT_EQ(rep.at(3).p_primary.str(3), "Z/3");
    EXPECT_EQ(rep.at(8).p_primary.str(3), "Z/3");
    EXPECT_EQ(rep.at(11).p_primary.str(3), "Z/3");
    EXPECT_EQ(rep.at(11).axioms_used.size(), 1u);
    EXPECT_TRUE(rep.at(10).axioms_used.empty());
    for (const auto& d : rep.degrees) EXPECT_EQ(d.status, DegreeStatus::Complete);
}

TEST(Report, WithoutAxiom) {
    EngineOptions off;
    off.use_vistoli = false;
    auto rep = assemble_report(compute(Context(Sequence::U, 3, 3), off));
    EXPECT_EQ(rep.at(11).status, DegreeStatus::Unresolved);
    EXPECT_EQ(rep.at(10).status, DegreeStatus::Unresolved);
    EXPECT_EQ(rep.at(3).status, DegreeStatus::Complete);
}

TEST(Report, ExtensionAmbiguityFlagged) {
    // Synthetic: two torsion pieces in one degree.
    SpectralSequence ss{Context(Sequence::U, 3, 3), {}, {}};
    Page pg;
    pg.r = kInfinitePage;
    PageEntry a, b;
    a.pos = {3, 2};
    a.iso = IsoType{0, {1}};
    b.pos = {5, 0};
    b.iso = IsoType{0, {1}};
    pg.entries.emplace(a.pos, a);
    pg.entries.emplace(b.pos, b);
    ss.pages.push_back(pg);
    auto rep = assemble_report(ss);
    EXPECT_EQ(rep.at(5).status, DegreeStatus::ExtensionAmbiguous);
    EXPECT_EQ(rep.at(5).p_primary.str(3), "Z/3+Z/3");
}
