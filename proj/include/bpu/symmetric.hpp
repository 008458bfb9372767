#pragma once

// Comparison maps between the fiber rings and the symmetric-function
// dictionary: c_i -> sigma_i(v_1..v_n), v_i -> v, the primed basis
// v'_i = v_i - v_n, the formal divergence, and the inverse of c_i -> sigma_i on
// symmetric polynomials.

#include "bpu/polynomial.hpp"

#include <numeric>
#include <span>

namespace bpu {

struct NotSymmetric : std::domain_error {
    explicit NotSymmetric(const std::string& what) : std::domain_error("polynomial is not symmetric: " + what) {}
};
struct NotExpressible : std::domain_error {
    NotExpressible() : std::domain_error("symmetric reduction did not terminate in the sigma basis") {}
};

namespace detail {

inline void require(const Polynomial& f, Alphabet a) {
    if (f.alphabet() != a) throw AlphabetMismatch();
}

inline void combinations(int k, std::span<const int> vars, std::size_t start, Exponents& e, int nvars,
                         Polynomial& out) {
    if (k == 0) {
        out.add_term(e, 1);
        return;
    }
    for (std::size_t i = start; i + static_cast<std::size_t>(k) <= vars.size(); ++i) {
        ++e[static_cast<std::size_t>(vars[i] - 1)];
        combinations(k - 1, vars, i + 1, e, nvars, out);
        --e[static_cast<std::size_t>(vars[i] - 1)];
    }
}

/// Primed degree: total exponent of v'_1..v'_{n-1}.
inline int primed_degree(const Exponents& e) {
    int d = 0;
    for (std::size_t i = 0; i + 1 < e.size(); ++i) d += e[i];
    return d;
}

/// f * g dropping every term of primed degree above max_primed.
inline Polynomial truncated_product(const Polynomial& f, const Polynomial& g, int max_primed) {
    Polynomial h(f.alphabet(), f.nvars(), f.degree() + g.degree());
    Exponents e(static_cast<std::size_t>(f.nvars()));
    for (const auto& [a, x] : f.terms()) {
        int da = primed_degree(a);
        if (da > max_primed) continue;
        for (const auto& [b, y] : g.terms()) {
            if (da + primed_degree(b) > max_primed) continue;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint8_t>(a[i] + b[i]);
            h.add_term(e, x * y);
        }
    }
    return h;
}

} // namespace detail

/// sigma_i over the listed variables (1-based indices into an alphabet with
/// nvars variables).  sigma_0 = 1; sigma_i = 0 when i exceeds the list.
inline Polynomial elementary_symmetric(int i, Alphabet a, int nvars, std::span<const int> vars) {
    Polynomial out(a, nvars, 2 * i);
    if (i < 0 || static_cast<std::size_t>(i) > vars.size()) return out;
    Exponents e(static_cast<std::size_t>(nvars), 0);
    detail::combinations(i, vars, 0, e, nvars, out);
    return out;
}

/// sigma_i over all variables of the alphabet.
inline Polynomial elementary_symmetric(int i, Alphabet a, int nvars) {
    std::vector<int> vars(static_cast<std::size_t>(nvars));
    std::iota(vars.begin(), vars.end(), 1);
    return elementary_symmetric(i, a, nvars, vars);
}

/// Cache of products of elementary symmetric polynomials in v_1..v_n.
class SigmaTable {
public:
    explicit SigmaTable(int n) : n_(n) {
        for (int i = 0; i <= n; ++i) sigma_.push_back(elementary_symmetric(i, Alphabet::TorusV, n));
    }

    const Polynomial& sigma(int i) const { return sigma_.at(static_cast<std::size_t>(i)); }

    /// prod sigma_i^{e_i} for a Chern exponent vector.
    Polynomial product(const Exponents& chern) const {
        Polynomial r = Polynomial::constant(Alphabet::TorusV, n_, 1);
        for (std::size_t i = 0; i < chern.size(); ++i)
            for (int k = 0; k < chern[i]; ++k) r = r * sigma_[i + 1];
        return r;
    }

private:
    int n_;
    std::vector<Polynomial> sigma_;
};

/// Restriction to the maximal torus: c_i -> sigma_i(v_1, ..., v_n).
inline Polynomial psi_star(const Polynomial& f) {
    detail::require(f, Alphabet::ChernC);
    const int n = f.nvars();
    SigmaTable table(n);
    Polynomial out(Alphabet::TorusV, n, f.degree());
    for (const auto& [e, c] : f.terms()) out += table.product(e).scaled(c);
    return out;
}

/// v_i -> v.
inline Polynomial b_phi_star(const Polynomial& f) {
    detail::require(f, Alphabet::TorusV);
    Polynomial out(Alphabet::LineV, 1, f.degree());
    for (const auto& [e, c] : f.terms()) {
        int total = std::accumulate(e.begin(), e.end(), 0);
        out.add_term(Exponents{static_cast<std::uint8_t>(total)}, c);
    }
    return out;
}

/// Substitute v_i = v'_i + v_n for i < n and collect.
inline Polynomial to_primed_basis(const Polynomial& f) {
    detail::require(f, Alphabet::TorusV);
    const int n = f.nvars();
    Polynomial out(Alphabet::PrimedV, n, f.degree());
    const std::size_t last = static_cast<std::size_t>(n - 1);
    for (const auto& [e, c] : f.terms()) {
        std::vector<std::pair<Exponents, PLocal>> partial;
        Exponents start(e.size(), 0);
        start[last] = e[last];
        partial.emplace_back(start, c);
        for (std::size_t i = 0; i < last; ++i) {
            if (e[i] == 0) continue;
            std::vector<std::pair<Exponents, PLocal>> next;
            for (const auto& [pe, pc] : partial)
                for (int j = 0; j <= e[i]; ++j) {
                    Exponents q = pe;
                    q[i] = static_cast<std::uint8_t>(j);
                    q[last] = static_cast<std::uint8_t>(q[last] + e[i] - j);
                    next.emplace_back(std::move(q), pc * PLocal(binomial(e[i], j)));
                }
            partial = std::move(next);
        }
        for (const auto& [pe, pc] : partial) out.add_term(pe, pc);
    }
    return out;
}

/// Inverse of to_primed_basis: v'_i = v_i - v_n.
inline Polynomial from_primed_basis(const Polynomial& f) {
    detail::require(f, Alphabet::PrimedV);
    const int n = f.nvars();
    Polynomial out(Alphabet::TorusV, n, f.degree());
    const std::size_t last = static_cast<std::size_t>(n - 1);
    for (const auto& [e, c] : f.terms()) {
        std::vector<std::pair<Exponents, PLocal>> partial;
        Exponents start(e.size(), 0);
        start[last] = e[last];
        partial.emplace_back(start, c);
        for (std::size_t i = 0; i < last; ++i) {
            if (e[i] == 0) continue;
            std::vector<std::pair<Exponents, PLocal>> next;
            for (const auto& [pe, pc] : partial)
                for (int j = 0; j <= e[i]; ++j) {
                    Exponents q = pe;
                    q[i] = static_cast<std::uint8_t>(j);
                    q[last] = static_cast<std::uint8_t>(q[last] + e[i] - j);
                    PLocal coeff = pc * PLocal(binomial(e[i], j));
                    if ((e[i] - j) % 2 == 1) coeff = -coeff;
                    next.emplace_back(std::move(q), coeff);
                }
            partial = std::move(next);
        }
        for (const auto& [pe, pc] : partial) out.add_term(pe, pc);
    }
    return out;
}

/// f = sum_m coefficient[m] * v_n^m with coefficients free of v_n.
inline std::map<int, Polynomial> collect_by_vn(const Polynomial& f) {
    detail::require(f, Alphabet::PrimedV);
    std::map<int, Polynomial> out;
    const std::size_t last = static_cast<std::size_t>(f.nvars() - 1);
    for (const auto& [e, c] : f.terms()) {
        int m = e[last];
        Exponents rest = e;
        rest[last] = 0;
        auto it = out.try_emplace(m, Alphabet::PrimedV, f.nvars(), f.degree() - 2 * m).first;
        it->second.add_term(rest, c);
    }
    return out;
}

/// sum_i d/dv_i.
inline Polynomial divergence(const Polynomial& f) {
    detail::require(f, Alphabet::TorusV);
    Polynomial out(Alphabet::TorusV, f.nvars(), f.degree() - 2);
    for (const auto& [e, c] : f.terms())
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            Exponents d = e;
            --d[i];
            out.add_term(d, c * PLocal(static_cast<long>(e[i])));
        }
    return out;
}

/// d/dv on the single-variable ring.
inline Polynomial line_derivative(const Polynomial& f) {
    detail::require(f, Alphabet::LineV);
    Polynomial out(Alphabet::LineV, 1, f.degree() - 2);
    for (const auto& [e, c] : f.terms())
        if (e[0] > 0) out.add_term(Exponents{static_cast<std::uint8_t>(e[0] - 1)}, c * PLocal(static_cast<long>(e[0])));
    return out;
}

/// Invariance under every adjacent transposition of the variables.
inline bool is_symmetric(const Polynomial& f) {
    for (const auto& [e, c] : f.terms())
        for (std::size_t i = 0; i + 1 < e.size(); ++i) {
            if (e[i] == e[i + 1]) continue;
            Exponents s = e;
            std::swap(s[i], s[i + 1]);
            if (f.coefficient(s) != c) return false;
        }
    return true;
}

/// g over c_1..c_n with psi_star(g) = f, by leading-term reduction in lex order.
inline Polynomial express_symmetric_in_c(const Polynomial& f) {
    detail::require(f, Alphabet::TorusV);
    if (!is_symmetric(f)) throw NotSymmetric(f.str());
    const int n = f.nvars();
    SigmaTable table(n);
    Polynomial rest = f;
    Polynomial out(Alphabet::ChernC, n, f.degree());
    std::size_t guard = 0;
    while (!rest.is_zero()) {
        auto lead = rest.terms().rbegin();
        const Exponents a = lead->first;
        const PLocal c = lead->second;
        Exponents chern(a.size(), 0);
        for (std::size_t k = 0; k < a.size(); ++k) {
            int next = k + 1 < a.size() ? a[k + 1] : 0;
            if (a[k] < next) throw NotExpressible();
            chern[k] = static_cast<std::uint8_t>(a[k] - next);
        }
        rest -= table.product(chern).scaled(c);
        out.add_term(chern, c);
        if (++guard > 1000000) throw NotExpressible();
    }
    return out;
}

/// psi_star followed by to_primed_basis, computed in one pass from
///   sigma_k(v'_1 + v_n, ..., v'_{n-1} + v_n, v_n)
///     = sum_j C(n-j, k-j) sigma_j(v'_1, ..., v'_{n-1}) v_n^{k-j}.
/// Terms of primed degree above max_primed are dropped (negative: keep all).
inline Polynomial psi_star_primed(const Polynomial& f, int max_primed = -1) {
    detail::require(f, Alphabet::ChernC);
    const int n = f.nvars();
    if (max_primed < 0) max_primed = f.degree();
    std::vector<int> primed(static_cast<std::size_t>(n - 1));
    std::iota(primed.begin(), primed.end(), 1);
    std::vector<Polynomial> shifted;
    shifted.reserve(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
        Polynomial pk(Alphabet::PrimedV, n, 2 * k);
        for (int j = 0; j <= std::min(k, n - 1); ++j) {
            if (j > max_primed) break;
            Polynomial sj = elementary_symmetric(j, Alphabet::PrimedV, n, primed);
            Exponents vn(static_cast<std::size_t>(n), 0);
            vn[static_cast<std::size_t>(n - 1)] = static_cast<std::uint8_t>(k - j);
            pk += detail::truncated_product(sj, Polynomial::monomial(Alphabet::PrimedV, vn, PLocal(binomial(n - j, k - j))),
                                            max_primed);
        }
        shifted.push_back(std::move(pk));
    }
    Polynomial out(Alphabet::PrimedV, n, f.degree());
    for (const auto& [e, c] : f.terms()) {
        Polynomial term = Polynomial::constant(Alphabet::PrimedV, n, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) term = detail::truncated_product(term, shifted[i + 1], max_primed);
        out += term;
    }
    return out;
}

} // namespace bpu
