#pragma once

// Constructive checks of the bar basis, the three d_3-boundaries X1, X2, X3,
// the E_inf vanishing statements and the final p-primary table.

#include "bpu/report.hpp"

namespace bpu {

struct NonUnitDenominator : std::domain_error {
    explicit NonUnitDenominator(const std::string& what) : std::domain_error("denominator divisible by p: " + what) {}
};

struct VerificationReport {
    std::string name;
    long p = 0;
    int n = 0;
    std::vector<Check> checks;

    bool pass() const {
        return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    void add(std::string check, bool ok, std::string details = {}) { checks.push_back({std::move(check), ok, std::move(details)}); }
};

// ---------------------------------------------------------------- order

/// S'_t in ascending order together with the images bar(c x1), stored as the
/// x1-coefficient over c_1..c_n.
struct OrderedBasis {
    int t = 0;
    std::vector<Partition> monomials;
    std::vector<Polynomial> bar_images;
    std::vector<std::string> diagnostics; ///< c_i with i > n met while forming bar images
};

inline Polynomial bar_image(const Partition& c, const Prime& p, int n, std::vector<std::string>* diagnostics = nullptr) {
    const int top = c.back();
    if (top % p.value() == 0) return chern_monomial(c, n);
    Partition raised = c;
    ++raised.back();
    if (raised.back() > n && diagnostics)
        diagnostics->push_back("c_" + std::to_string(raised.back()) + " = 0 in bar image of " +
                               monomial_string(Alphabet::ChernC, partition_exponents(c, n)));
    return chern_divergence(chern_monomial(raised, n));
}

inline OrderedBasis build_order(int t, const Prime& p, int n) {
    if (t < 1) throw std::invalid_argument("t must be positive");
    OrderedBasis ob;
    ob.t = t;
    ob.monomials = partitions(t, std::min(t, n));
    for (const auto& c : ob.monomials) ob.bar_images.push_back(bar_image(c, p, n, &ob.diagnostics));
    return ob;
}

/// Position of a Chern monomial in the ordered list.
inline std::optional<std::size_t> order_position(const OrderedBasis& ob, const Exponents& e) {
    Partition part = exponents_partition(e);
    for (std::size_t i = 0; i < ob.monomials.size(); ++i)
        if (ob.monomials[i] == part) return i;
    return std::nullopt;
}

/// Row j holds the coordinates of bar(c_j x1) in the monomial basis.
inline Matrix bar_change_of_basis(const OrderedBasis& ob, int n) {
    const std::size_t N = ob.monomials.size();
    Matrix m(N, N);
    for (std::size_t j = 0; j < N; ++j)
        for (const auto& [e, c] : ob.bar_images[j].terms()) {
            auto i = order_position(ob, e);
            if (!i) throw std::logic_error("bar image leaves S'_t");
            m(j, *i) = c;
        }
    (void)n;
    return m;
}

struct CbarReport : VerificationReport {
    int t = 0;
    std::vector<int> diagonal_valuations;
};

inline CbarReport verify_lemma_cbar(int t, const Prime& p, int n) {
    CbarReport rep;
    rep.name = "lemma_cbar";
    rep.p = p.value();
    rep.n = n;
    rep.t = t;
    OrderedBasis ob = build_order(t, p, n);
    Matrix m = bar_change_of_basis(ob, n);
    const std::size_t N = ob.monomials.size();

    std::string offending;
    for (std::size_t j = 0; j < N && offending.empty(); ++j)
        for (std::size_t i = j + 1; i < N; ++i)
            if (!m(j, i).is_zero()) {
                offending = monomial_string(Alphabet::ChernC, partition_exponents(ob.monomials[j], n));
                break;
            }
    rep.add("lower_triangular", offending.empty(), offending.empty() ? std::to_string(N) + " monomials" : "bar image of " + offending + "*x1 not lower");

    std::string vals;
    std::string bad;
    for (std::size_t j = 0; j < N; ++j) {
        int v = valuation(m(j, j), p);
        rep.diagonal_valuations.push_back(v);
        vals += (vals.empty() ? "" : ",") + (v == kInfiniteValuation ? std::string("inf") : std::to_string(v));
        if (v != 0 && bad.empty()) bad = monomial_string(Alphabet::ChernC, partition_exponents(ob.monomials[j], n));
    }
    rep.add("unit_diagonal", bad.empty(), bad.empty() ? "valuations " + vals : "diagonal at " + bad + "*x1 not a unit (" + vals + ")");
    // A prefix of a triangular system with unit diagonal spans the same lattice.
    for (const auto& d : ob.diagnostics) rep.add("truncation_note", true, d);
    return rep;
}

/// Pairwise scan: order_less is a strict total order on S'_t.
inline bool order_is_strict_total(int t, int n) {
    auto mons = partitions(t, std::min(t, n));
    for (const auto& a : mons) {
        if (order_less(a, a)) return false;
        for (const auto& b : mons) {
            int rel = static_cast<int>(order_less(a, b)) + static_cast<int>(order_less(b, a));
            if (a != b && rel != 1) return false;
            for (const auto& c : mons)
                if (order_less(a, b) && order_less(b, c) && !order_less(a, c)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- witnesses

struct WitnessCoefficients {
    std::map<int, PLocal> A; ///< 1 <= k <= (p-1)/2
    std::map<int, PLocal> B; ///< 3 <= k <= (p+1)/2
};

namespace detail {

inline PLocal unit_ratio(long num, long den, const Prime& p, const char* what) {
    if (den == 0 || den % p.value() == 0) throw NonUnitDenominator(std::string(what) + " = " + std::to_string(den));
    return divide(PLocal(num), PLocal(den), p);
}

/// prod_{j=k}^{hi} (n-j) / (n-shift+j); empty products are 1.
inline PLocal ratio_product(int k, int hi, int n, int shift, const Prime& p, const char* what) {
    PLocal out(1);
    for (int j = k; j <= hi; ++j) out = out * unit_ratio(n - j, n - shift + j, p, what);
    return out;
}

inline long sign(int e) { return e % 2 == 0 ? 1 : -1; }

} // namespace detail

inline WitnessCoefficients witness_coefficients(const Prime& p, int n) {
    const int q = static_cast<int>(p.value());
    WitnessCoefficients w;
    // A_k up to k = (p+1)/2 so that A_2 exists (as an empty product) at p = 3.
    for (int k = 1; k <= (q + 1) / 2; ++k) w.A[k] = detail::ratio_product(k, (q - 1) / 2, n, q, p, "n-p+j in A_k");
    for (int k = 3; k <= (q + 1) / 2 + 1; ++k) w.B[k] = detail::ratio_product(k, (q + 1) / 2, n, q + 2, p, "n-p-2+j in B_k");
    return w;
}

/// X3AsPrinted uses the coefficient (p-2+2k) on the c_{p-k+2} c_k c_1 sum as it
/// appears in the printed formula; it leaves higher 3-factor terms for p >= 5.
/// X3 uses (p+2-2k), matching the X1 sum, which gives the stated leading term.
enum class Witness { X1, X2, X3, X3AsPrinted };

inline Polynomial witness_element(Witness which, const Prime& p, int n) {
    const int q = static_cast<int>(p.value());
    const int g = (q - 1) / 2;
    const int h = (q + 1) / 2;
    const auto w = witness_coefficients(p, n);
    auto mono = [&](std::vector<int> parts, const PLocal& c) {
        std::sort(parts.begin(), parts.end());
        return chern_monomial(parts, n, c);
    };
    auto inv = [&](long den, const char* what) { return detail::unit_ratio(1, den, p, what); };

    switch (which) {
    case Witness::X1: {
        Polynomial x = mono({h, h, 1}, 1);
        x -= mono({h + 1, h}, PLocal(n) * inv(n - h, "n-(p+1)/2"));
        for (int k = 1; k <= g; ++k) x += mono({q - k + 1, k, 1}, PLocal(2 * detail::sign(g - k + 1)) * w.A.at(k));
        for (int k = 2; k <= g; ++k)
            x += mono({q - k + 2, k}, PLocal(detail::sign(g - k) * (q + 2 - 2 * k) * n) * w.A.at(k) * inv(n - q + k - 1, "n-p+k-1"));
        return x;
    }
    case Witness::X2: {
        Polynomial x = mono({h + 1, h + 1}, 1);
        for (int k = 3; k <= h; ++k) x += mono({q - k + 3, k}, PLocal(2 * detail::sign(h - k + 1)) * w.B.at(k));
        return x;
    }
    case Witness::X3:
    case Witness::X3AsPrinted: {
        const bool printed = which == Witness::X3AsPrinted;
        Polynomial inner = mono({h, h, 2}, 1);
        for (int k = 2; k <= g; ++k) inner += mono({q - k + 1, k, 2}, PLocal(2 * detail::sign(g - k + 1)) * w.A.at(k));
        Polynomial x = inner.scaled(inv(n - 1, "n-1"));
        x -= mono({h + 1, h, 1}, inv(n - h, "n-(p+1)/2"));
        for (int k = 2; k <= g; ++k)
            x += mono({q - k + 2, k, 1}, PLocal(detail::sign(g - k) * (printed ? q - 2 + 2 * k : q + 2 - 2 * k)) * w.A.at(k) *
                                             inv(n - q + k - 1, "n-p+k-1"));
        x += mono({q, 2, 1}, PLocal(2 * detail::sign(g)) * w.A.at(2) * inv(n - q + 1, "n-p+1"));
        return x;
    }
    }
    throw std::logic_error("witness");
}

/// The right-hand sides: X1 -> c_p c_1, X2 -> c_p c_2, X3 -> leading term c_p c_1^2.
inline Polynomial witness_target(Witness which, const Prime& p, int n) {
    const int q = static_cast<int>(p.value());
    const auto w = witness_coefficients(p, n);
    switch (which) {
    case Witness::X1: return chern_monomial({1, q}, n, PLocal(detail::sign((q - 1) / 2) * (q + 2) * n) * w.A.at(1));
    case Witness::X2: return chern_monomial({2, q}, n, PLocal(detail::sign((q + 1) / 2) * 2 * (n - 2)) * w.B.at(3));
    case Witness::X3:
    case Witness::X3AsPrinted: return chern_monomial({1, 1, q}, n, PLocal(detail::sign((q - 1) / 2) * q) * w.A.at(1));
    }
    throw std::logic_error("witness");
}

inline VerificationReport verify_lemma_witnesses(const Prime& p, int n) {
    VerificationReport rep;
    rep.name = "lemma_witnesses";
    rep.p = p.value();
    rep.n = n;
    const int q = static_cast<int>(p.value());
    const auto w = witness_coefficients(p, n);

    bool relation = true;
    for (int k = 1; k < (q - 1) / 2; ++k)
        if (PLocal(n - q + k) * w.A.at(k) != PLocal(n - k) * w.A.at(k + 1)) relation = false;
    rep.add("A_recursion", relation, "(n-p+k) A_k = (n-k) A_{k+1}");
    bool units = true;
    for (const auto& [k, a] : w.A) units = units && is_unit(a, p);
    for (const auto& [k, b] : w.B) units = units && is_unit(b, p);
    rep.add("coefficients_are_units", units, "A_1 = " + w.A.at(1).pretty());

    auto d3 = [&](Witness x) { return chern_divergence(witness_element(x, p, n)); };
    Polynomial d1 = d3(Witness::X1);
    Polynomial t1 = witness_target(Witness::X1, p, n);
    rep.add("d3_X1", d1 == t1, "d3(X1) = " + d1.str() + "*x1");
    Polynomial d2 = d3(Witness::X2);
    Polynomial t2 = witness_target(Witness::X2, p, n);
    rep.add("d3_X2", d2 == t2, "d3(X2) = " + d2.str() + "*x1");

    Polynomial d3x = d3(Witness::X3);
    Polynomial t3 = witness_target(Witness::X3, p, n);
    const Exponents lead = t3.terms().begin()->first;
    rep.add("d3_X3_leading", d3x.coefficient(lead) == t3.terms().begin()->second,
            "coefficient of " + monomial_string(Alphabet::ChernC, lead) + "*x1 is " + d3x.coefficient(lead).pretty());
    const Partition lead_part = exponents_partition(lead);
    bool lower = true;
    for (const auto& [e, c] : d3x.terms())
        if (e != lead && !order_less(exponents_partition(e), lead_part)) lower = false;
    rep.add("d3_X3_remainder_lower", lower, "remainder " + (d3x - t3).str());

    const int vn = int_valuation(n, q);
    rep.add("X1_coefficient_valuation", valuation(t1.terms().begin()->second, p) == vn, "v_p = " + std::to_string(vn));
    rep.add("X3_leading_valuation", valuation(t3.terms().begin()->second, p) == 1, "");
    return rep;
}

// ---------------------------------------------------------------- propositions

/// d_{2p-1}(c_p c_1^k x1) = C(n-1, p-1) c_1^{k+1} y for k = 1, 2.
inline VerificationReport verify_transport(const Prime& p, int n) {
    VerificationReport rep;
    rep.name = "transport";
    rep.p = p.value();
    rep.n = n;
    const int q = static_cast<int>(p.value());
    PLocal binom = reduce_mod_p(PLocal(binomial(n - 1, q - 1)), p);
    rep.add("binomial_unit", !binom.is_zero(), "C(n-1,p-1) = " + binom.pretty() + " mod p");
    for (int k = 1; k <= 2; ++k) {
        std::vector<int> src(static_cast<std::size_t>(k), 1);
        src.push_back(q);
        Polynomial got = u_d2pm1(chern_monomial(src, n), p);
        Polynomial want = chern_monomial(std::vector<int>(static_cast<std::size_t>(k + 1), 1), n, binom).reduced_mod_p(p);
        rep.add("d2pm1_cp_c1^" + std::to_string(k), got == want, "image " + got.str() + "*y");
    }
    return rep;
}

inline VerificationReport verify_prop_vanishing(const Prime& p, int n) {
    VerificationReport rep;
    rep.name = "prop_vanishing";
    rep.p = p.value();
    rep.n = n;
    const int q = static_cast<int>(p.value());
    auto ss = compute(Context(Sequence::U, q, n));
    for (Bidegree b : {Bidegree{3, 2 * q + 2}, Bidegree{3, 2 * q + 4}, Bidegree{2 * q + 5, 2}, Bidegree{2 * q + 2, 6}}) {
        const auto& e = ss.einf().at(b);
        rep.add("Einf" + b.str() + "=0", e.is_zero() && !e.unsettled, e.iso.str(q));
    }
    // Before the axiom: what reaches the page where column 0 could still hit it.
    EngineOptions off;
    off.use_vistoli = false;
    auto raw = compute(Context(Sequence::U, q, n), off);
    const auto& before = raw.page_at(2 * q + 5).at({2 * q + 5, 0});
    bool quotient = before.iso.is_zero() || before.iso == IsoType{0, {1}};
    rep.add("E" + std::to_string(2 * q + 5) + "(" + std::to_string(2 * q + 5) + ",0)_quotient_of_Z/p", quotient, before.iso.str(q));
    for (const auto& c : verify_transport(p, n).checks) rep.checks.push_back(c);
    return rep;
}

// ---------------------------------------------------------------- theorem

/// The expected p-primary part of degree s < 2p+9.
inline IsoType expected_p_primary(long p, int n, int s) {
    const int r = int_valuation(n, p);
    if (r == 0) return {};
    if (s == 3) return IsoType{0, {r}};
    if (s == 2 * p + 2 || s == 2 * p + 5) return IsoType{0, {1}};
    return {};
}

struct TheoremReport : VerificationReport {
    CohomologyReport cohomology;
};

inline TheoremReport verify_theorem(const Prime& p, int n, EngineOptions options = {}) {
    TheoremReport rep;
    rep.name = "theorem";
    rep.p = p.value();
    rep.n = n;
    const long q = p.value();
    auto ss = compute(Context(Sequence::U, q, n), options);
    rep.cohomology = assemble_report(ss);
    const int r = rep.cohomology.r;
    for (const auto& d : rep.cohomology.degrees) {
        IsoType want = expected_p_primary(q, n, d.degree);
        bool ok = d.status == DegreeStatus::Complete && d.p_primary == want;
        rep.add("degree_" + std::to_string(d.degree), ok,
                d.p_primary.str(q) + " (" + status_name(d.status) + "), expected " + want.str(q));
    }
    const auto& top = rep.cohomology.at(static_cast<int>(2 * q + 5));
    if (r >= 1)
        rep.add("axiom_recorded", std::find(top.axioms_used.begin(), top.axioms_used.end(), kVistoliAxiom) != top.axioms_used.end(),
                "degree " + std::to_string(2 * q + 5));
    else {
        bool none = std::all_of(rep.cohomology.degrees.begin(), rep.cohomology.degrees.end(),
                                [](const DegreeReport& d) { return d.axioms_used.empty(); });
        rep.add("no_axioms", none, "");
    }
    return rep;
}

} // namespace bpu
