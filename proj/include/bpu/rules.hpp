#pragma once

// Differential formulas for the K, T and U sequences and the object that
// installs them as DifferentialMaps on each page.
//
//   K:  d_3(v) = x1 with the Leibniz rule; d_{2p-1}(x1 v^{lp^e - 1}) = v^{lp^e - p} y.
//   T:  d_3 = divergence(-) * x1; d_{2p-1} is the K rule with v replaced by v_n,
//       extended to v'-coefficients (v'_i = v_i - v_n are permanent cycles).
//   U:  d_3(c_k) = (n-k+1) c_{k-1} x1 with the Leibniz rule; d_{2p-1} is
//       transported through c_i -> sigma_i, which is injective on E_2.

#include "bpu/sseq.hpp"
#include "bpu/symmetric.hpp"

#include <memory>

namespace bpu {

/// A fiber polynomial tensored with a K(Z,3) class.
struct SSClass {
    Polynomial fiber;
    KZ3Class base;
};

namespace detail {

inline KZ3Class times_x1(KZ3Class b) { return b == KZ3Class::Yp0 ? KZ3Class::X1Yp0 : KZ3Class::X1; }

inline bool carries_x1(KZ3Class b) { return b == KZ3Class::X1 || b == KZ3Class::X1Yp0; }

inline SSClass finish_d3(Polynomial fiber, KZ3Class base, const Prime& p) {
    if (kz3_is_torsion(base)) fiber = fiber.reduced_mod_p(p);
    return {std::move(fiber), times_x1(base)};
}

} // namespace detail

/// d_3 in the K sequence: d_3(v^t) = t v^{t-1} x1, and x1^2 = 0.
inline SSClass k_d3(const Polynomial& f, KZ3Class base, const Prime& p) {
    if (detail::carries_x1(base)) return {Polynomial(Alphabet::LineV, 1, std::max(0, f.degree() - 2)), base};
    return detail::finish_d3(line_derivative(f), base, p);
}

/// Whether d_{2p-1}(x1 v^m) is nonzero: m + 1 = l p^e with e > 0.
inline bool k_higher_hits(int m, const Prime& p) { return m >= 0 && (m + 1) % p.value() == 0; }

inline void check_higher_page(int r, const Prime& p) {
    const long q = p.value();
    if (r == 2 * q - 1) return;
    for (long pk = q * q; 2 * pk - 1 <= r; pk *= q)
        if (r == 2 * pk - 1) throw UnsupportedPage("d_" + std::to_string(r) + " involves y_{p,k} with k >= 1, outside the window");
    throw UnsupportedPage("d_" + std::to_string(r) + " is not a higher K(Z,3) differential");
}

/// d_r(x1 * f(v)) in the K sequence, as the coefficient of y_{p,0}.
/// For m + 1 prime to p, x1 v^m = d_3(v^{m+1} / (m+1)) and the result is zero.
inline Polynomial k_higher(int r, const Polynomial& f, const Prime& p) {
    check_higher_page(r, p);
    const long q = p.value();
    Polynomial out(Alphabet::LineV, 1, std::max(0, f.degree() - static_cast<int>(2 * q - 2)));
    for (const auto& [e, c] : f.terms())
        if (k_higher_hits(e[0], p)) out.add_term(Exponents{static_cast<std::uint8_t>(e[0] - q + 1)}, c);
    return out.reduced_mod_p(p);
}

/// v^{m+1} / (m+1): the d_3-preimage of x1 v^m when m + 1 is a p-unit.
inline Polynomial k_boundary_witness(int m, const Prime& p) {
    PLocal inv = divide(PLocal(1), PLocal(static_cast<long>(m + 1)), p);
    return Polynomial::monomial(Alphabet::LineV, Exponents{static_cast<std::uint8_t>(m + 1)}, inv);
}

/// d_3 in the T sequence: divergence(f) * x1 (* base).
inline SSClass t_d3(const Polynomial& f, KZ3Class base, const Prime& p) {
    if (detail::carries_x1(base)) return {Polynomial(Alphabet::TorusV, f.nvars(), std::max(0, f.degree() - 2)), base};
    return detail::finish_d3(divergence(f), base, p);
}

/// The derivation c_k -> (n-k+1) c_{k-1} on H*(BU_n), c_0 = 1.
inline Polynomial chern_divergence(const Polynomial& f) {
    if (f.alphabet() != Alphabet::ChernC) throw AlphabetMismatch();
    const int n = f.nvars();
    Polynomial out(Alphabet::ChernC, n, std::max(0, f.degree() - 2));
    for (const auto& [e, c] : f.terms())
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            const long k = static_cast<long>(i + 1);
            Exponents d = e;
            --d[i];
            if (k > 1) ++d[i - 1];
            out.add_term(d, c * PLocal(static_cast<long>(e[i]) * (n - k + 1)));
        }
    return out;
}

/// d_3 in the U sequence.
inline SSClass u_d3(const Polynomial& f, KZ3Class base, const Prime& p) {
    if (detail::carries_x1(base)) return {Polynomial(Alphabet::ChernC, f.nvars(), std::max(0, f.degree() - 2)), base};
    return detail::finish_d3(chern_divergence(f), base, p);
}

/// The T-side d_{2p-1} on a class already written in the primed basis:
/// each v_n^m with p | m+1 goes to v_n^{m-p+1} y, the v'-coefficient riding
/// along as a permanent cycle; every other power is a d_3-boundary.
/// Returns the y-coefficient in the primed basis (not reduced).
inline Polynomial transport_primed(const Polynomial& primed, const Prime& p) {
    const long q = p.value();
    const int n = primed.nvars();
    const int out_degree = std::max(0, primed.degree() - static_cast<int>(2 * q - 2));
    Polynomial out(Alphabet::PrimedV, n, out_degree);
    for (const auto& [m, coeff] : collect_by_vn(primed)) {
        if (!k_higher_hits(m, p)) continue;
        Exponents vn(static_cast<std::size_t>(n), 0);
        vn[static_cast<std::size_t>(n - 1)] = static_cast<std::uint8_t>(m - q + 1);
        out += coeff * Polynomial::monomial(Alphabet::PrimedV, vn);
    }
    return out;
}

/// d_{2p-1}(f x1) in the T sequence, as the y_{p,0}-coefficient over v_1..v_n mod p.
inline Polynomial t_d2pm1(const Polynomial& f, const Prime& p) {
    if (f.alphabet() != Alphabet::TorusV) throw AlphabetMismatch();
    return from_primed_basis(transport_primed(to_primed_basis(f), p)).reduced_mod_p(p);
}

/// d_{2p-1}(f x1) in the U sequence, as the y_{p,0}-coefficient over c_1..c_n
/// mod p.  psi_star and the primed substitution are fused, keeping only terms
/// that can reach a v_n-power m >= p-1.
inline Polynomial u_d2pm1(const Polynomial& f, const Prime& p) {
    if (f.alphabet() != Alphabet::ChernC) throw AlphabetMismatch();
    const long q = p.value();
    const int n = f.nvars();
    const int weight = f.degree() / 2;
    const int out_degree = std::max(0, f.degree() - static_cast<int>(2 * q - 2));
    if (weight < q - 1) return Polynomial(Alphabet::ChernC, n, out_degree);
    Polynomial primed = psi_star_primed(f, weight - static_cast<int>(q - 1));
    Polynomial torus = from_primed_basis(transport_primed(primed, p)).reduced_mod_p(p);
    if (!is_symmetric(torus)) throw NotSymmetric("transported d_{2p-1} of " + f.str());
    return express_symmetric_in_c(torus).reduced_mod_p(p);
}

/// Same value as u_d2pm1, through the unfused psi_star -> t_d2pm1 route.
inline Polynomial u_d2pm1_via_torus(const Polynomial& f, const Prime& p) {
    Polynomial torus = t_d2pm1(psi_star(f), p);
    if (!is_symmetric(torus)) throw NotSymmetric("transported d_{2p-1} of " + f.str());
    return express_symmetric_in_c(torus).reduced_mod_p(p);
}

/// True when nothing can hit column s before page r: no column lies at s - r'
/// for 2 <= r' < r.  This is what makes E_r^{s,*} a subgroup of E_2^{s,*}.
inline bool no_incoming_before(const Context& ctx, int s, int r) {
    for (int rr = 2; rr < r; ++rr)
        if (s - rr >= 0 && ctx.is_column(s - rr)) return false;
    return true;
}

struct EngineOptions {
    bool use_vistoli = true;
    UnresolvedPolicy policy = UnresolvedPolicy::Defer;
};

inline constexpr const char* kVistoliAxiom = "vistoli: pH^{2p+5}(BPU_n) = Z/p, detected by survival of y*x1";

class DifferentialRules {
public:
    virtual ~DifferentialRules() = default;
    virtual DifferentialMap differential(int r, const PageEntry& src, const PageEntry& tgt) const = 0;
};

/// Installs the formulas above on the page grid.
class StandardRules : public DifferentialRules {
public:
    StandardRules(Context ctx, EngineOptions options) : ctx_(std::move(ctx)), options_(options) {}

    DifferentialMap differential(int r, const PageEntry& src, const PageEntry& tgt) const override {
        DifferentialMap d;
        d.r = r;
        d.from = src.pos;
        d.to = tgt.pos;
        d.matrix = Matrix(tgt.dim(), src.num_generators());
        if (src.is_zero() || tgt.is_zero()) {
            d.provenance = {Provenance::Kind::ZeroSupport, src.is_zero() ? "zero source" : "zero target"};
            return d;
        }
        const long q = ctx_.prime();
        const int s = src.pos.s;
        if (r == 3 && (s == 0 || s == 2 * q + 2)) {
            fill(d, src, tgt, [&](const Polynomial& f) { return d3(f, src.base).fiber; });
            d.provenance = {Provenance::Kind::Rule, d3_name()};
            return d;
        }
        if (r == 2 * q - 1 && s == 3) return higher(d, src, tgt);
        if (s == 0) return column_zero(d, tgt);
        d.provenance = {Provenance::Kind::Unresolved, "no rule for d_" + std::to_string(r) + " from column " + std::to_string(s)};
        return d;
    }

    const Context& context() const { return ctx_; }

private:
    template <class F>
    static void fill(DifferentialMap& d, const PageEntry& src, const PageEntry& tgt, F&& rule) {
        for (std::size_t j = 0; j < src.num_generators(); ++j) {
            Polynomial image = rule(src.lift(j));
            d.matrix.set_column(j, tgt.coordinates(image));
        }
    }

    SSClass d3(const Polynomial& f, KZ3Class base) const {
        switch (ctx_.sequence) {
        case Sequence::U: return u_d3(f, base, ctx_.p);
        case Sequence::T: return t_d3(f, base, ctx_.p);
        case Sequence::K: return k_d3(f, base, ctx_.p);
        }
        throw std::logic_error("sequence");
    }

    std::string d3_name() const {
        switch (ctx_.sequence) {
        case Sequence::U: return "d3(c_k) = (n-k+1) c_{k-1} x1, Leibniz";
        case Sequence::T: return "d3 = divergence * x1";
        case Sequence::K: return "d3(v) = x1, Leibniz";
        }
        return "";
    }

    DifferentialMap higher(DifferentialMap& d, const PageEntry& src, const PageEntry& tgt) const {
        const int r = d.r;
        switch (ctx_.sequence) {
        case Sequence::K:
            fill(d, src, tgt, [&](const Polynomial& f) { return k_higher(r, f, ctx_.p); });
            d.provenance = {Provenance::Kind::Rule, "d_{2p-1}(x1 v^{lp^e-1}) = v^{lp^e-p} y; other powers are d3-boundaries"};
            return d;
        case Sequence::T:
            fill(d, src, tgt, [&](const Polynomial& f) { return t_d2pm1(f, ctx_.p); });
            d.provenance = {Provenance::Kind::Rule, "v_n-rule with primed-basis Leibniz extension (v'_i permanent)"};
            return d;
        case Sequence::U:
            // The transport needs the target to sit inside E_2 on both sides.
            if (!no_incoming_before(ctx_, tgt.pos.s, r)) {
                d.provenance = {Provenance::Kind::Unresolved, "target does not inject into E_2; transport not justified"};
                return d;
            }
            fill(d, src, tgt, [&](const Polynomial& f) { return u_d2pm1(f, ctx_.p); });
            d.provenance = {Provenance::Kind::Rule,
                            "transport along psi*: c_i -> sigma_i, T-side v_n-rule with primed-basis Leibniz extension"};
            return d;
        }
        throw std::logic_error("sequence");
    }

    DifferentialMap column_zero(DifferentialMap& d, const PageEntry& tgt) const {
        const long q = ctx_.prime();
        if (ctx_.sequence == Sequence::U && tgt.pos == Bidegree{static_cast<int>(2 * q + 5), 0}) {
            if (options_.use_vistoli)
                d.provenance = {Provenance::Kind::Axiom, kVistoliAxiom};
            else
                d.provenance = {Provenance::Kind::Unresolved, "E^{2p+5,0} may be hit from column 0"};
            return d;
        }
        d.provenance = {Provenance::Kind::AssumedZero, "column 0 degenerates at E_4 (T) and naturality"};
        return d;
    }

    Context ctx_;
    EngineOptions options_;
};

} // namespace bpu
