#pragma once

// Sparse homogeneous polynomials over the alphabets used by the three
// spectral sequences:
//   ChernC  c_1..c_n            |c_i| = 2i
//   TorusV  v_1..v_n            |v_i| = 2
//   PrimedV v'_1..v'_{n-1}, v_n |v'_i| = |v_n| = 2, with v'_i = v_i - v_n
//   LineV   v                   |v| = 2

#include "bpu/plocal.hpp"

#include <atomic>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpu {

enum class Alphabet { ChernC, TorusV, PrimedV, LineV };

inline const char* alphabet_name(Alphabet a) {
    switch (a) {
    case Alphabet::ChernC: return "ChernC";
    case Alphabet::TorusV: return "TorusV";
    case Alphabet::PrimedV: return "PrimedV";
    case Alphabet::LineV: return "LineV";
    }
    return "?";
}

struct DegreeMismatch : std::invalid_argument {
    DegreeMismatch() : std::invalid_argument("degree mismatch") {}
};
struct AlphabetMismatch : std::invalid_argument {
    AlphabetMismatch() : std::invalid_argument("alphabet mismatch") {}
};

/// Dense exponent vector; slot i holds the exponent of the (i+1)-th variable.
using Exponents = std::vector<std::uint8_t>;

/// Cohomological degree of a monomial.
inline int monomial_degree(Alphabet a, const Exponents& e) {
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += (a == Alphabet::ChernC ? 2 * static_cast<int>(i + 1) : 2) * e[i];
    return d;
}

inline std::string monomial_string(Alphabet a, const Exponents& e) {
    std::string out;
    auto var = [&](std::size_t i) -> std::string {
        switch (a) {
        case Alphabet::ChernC: return "c" + std::to_string(i + 1);
        case Alphabet::TorusV: return "v" + std::to_string(i + 1);
        case Alphabet::PrimedV: return i + 1 == e.size() ? "v" + std::to_string(i + 1) : "w" + std::to_string(i + 1);
        case Alphabet::LineV: return "v";
        }
        return "?";
    };
    // Chern monomials read largest index first, as c_p c_1^2.
    for (std::size_t k = 0; k < e.size(); ++k) {
        std::size_t i = a == Alphabet::ChernC ? e.size() - 1 - k : k;
        if (e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += var(i);
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out.empty() ? "1" : out;
}

/// Number of c_i with i > n requested through chern_monomial(); these are
/// identically zero in H*(BU_n).
inline std::atomic<long>& chern_truncations() {
    static std::atomic<long> counter{0};
    return counter;
}

class Polynomial {
public:
    using Terms = std::map<Exponents, PLocal>;

    Polynomial(Alphabet alphabet, int nvars, int degree) : alphabet_(alphabet), nvars_(nvars), degree_(degree) {}

    static Polynomial constant(Alphabet a, int nvars, const PLocal& c) {
        Polynomial f(a, nvars, 0);
        f.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
        return f;
    }

    static Polynomial monomial(Alphabet a, Exponents e, const PLocal& c = 1) {
        int nv = static_cast<int>(e.size());
        Polynomial f(a, nv, monomial_degree(a, e));
        f.add_term(std::move(e), c);
        return f;
    }

    /// A single variable (1-based index).
    static Polynomial variable(Alphabet a, int nvars, int index) {
        Exponents e(static_cast<std::size_t>(nvars), 0);
        e.at(static_cast<std::size_t>(index - 1)) = 1;
        return monomial(a, std::move(e));
    }

    Alphabet alphabet() const { return alphabet_; }
    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    PLocal coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? PLocal(0) : it->second;
    }

    void add_term(const Exponents& e, const PLocal& c) {
        if (c.is_zero()) return;
        if (static_cast<int>(e.size()) != nvars_) throw AlphabetMismatch();
        if (monomial_degree(alphabet_, e) != degree_) throw DegreeMismatch();
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& g) {
        check_compatible(g);
        if (g.degree_ != degree_ && !g.is_zero()) throw DegreeMismatch();
        for (const auto& [e, c] : g.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& g) {
        check_compatible(g);
        if (g.degree_ != degree_ && !g.is_zero()) throw DegreeMismatch();
        for (const auto& [e, c] : g.terms_) add_term(e, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial f, const Polynomial& g) { return f += g; }
    friend Polynomial operator-(Polynomial f, const Polynomial& g) { return f -= g; }

    friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
        f.check_compatible(g);
        Polynomial h(f.alphabet_, f.nvars_, f.degree_ + g.degree_);
        Exponents e(static_cast<std::size_t>(f.nvars_));
        for (const auto& [a, x] : f.terms_)
            for (const auto& [b, y] : g.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint8_t>(a[i] + b[i]);
                h.add_term(e, x * y);
            }
        return h;
    }

    Polynomial scaled(const PLocal& s) const {
        Polynomial h(alphabet_, nvars_, degree_);
        if (s.is_zero()) return h;
        for (const auto& [e, c] : terms_) h.terms_.emplace(e, c * s);
        return h;
    }

    Polynomial pow(int k) const {
        Polynomial r = constant(alphabet_, nvars_, 1);
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    /// Coefficients replaced by their canonical representatives in [0, p).
    Polynomial reduced_mod_p(const Prime& p) const {
        Polynomial h(alphabet_, nvars_, degree_);
        for (const auto& [e, c] : terms_) h.add_term(e, reduce_mod_p(c, p));
        return h;
    }

    friend bool operator==(const Polynomial& f, const Polynomial& g) {
        return f.alphabet_ == g.alphabet_ && f.nvars_ == g.nvars_ && f.terms_ == g.terms_ &&
               (f.degree_ == g.degree_ || f.is_zero());
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        // Highest monomial first.
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string coeff = c.pretty();
            bool neg = coeff.front() == '-';
            if (neg) coeff.erase(0, 1);
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            std::string mono = monomial_string(alphabet_, e);
            if (mono == "1")
                out += coeff;
            else if (coeff == "1")
                out += mono;
            else
                out += coeff + "*" + mono;
        }
        return out;
    }

private:
    void check_compatible(const Polynomial& g) const {
        if (g.alphabet_ != alphabet_ || g.nvars_ != nvars_) throw AlphabetMismatch();
    }

    Alphabet alphabet_;
    int nvars_;
    int degree_;
    Terms terms_;
};

enum class PolyOp { Add, Sub, Mul };

inline Polynomial poly_arith(const Polynomial& f, const Polynomial& g, PolyOp op) {
    switch (op) {
    case PolyOp::Add: return f + g;
    case PolyOp::Sub: return f - g;
    case PolyOp::Mul: return f * g;
    }
    throw std::logic_error("bad op");
}

inline Polynomial scale(const Polynomial& f, const PLocal& s) { return f.scaled(s); }

/// c_i in H*(BU_n); c_0 = 1 and c_i = 0 for i > n.
inline Polynomial chern_class(int i, int n) {
    if (i == 0) return Polynomial::constant(Alphabet::ChernC, n, 1);
    if (i > n) {
        ++chern_truncations();
        return Polynomial(Alphabet::ChernC, n, 2 * i);
    }
    return Polynomial::variable(Alphabet::ChernC, n, i);
}

/// Chern monomial from a list of parts, e.g. {1, 1, p} -> c_1^2 c_p.  Parts
/// exceeding n make the monomial zero.
inline Polynomial chern_monomial(const std::vector<int>& parts, int n, const PLocal& coeff = 1) {
    Exponents e(static_cast<std::size_t>(n), 0);
    int degree = 0;
    bool vanishes = false;
    for (int i : parts) {
        degree += 2 * i;
        if (i == 0) continue;
        if (i > n) {
            vanishes = true;
            continue;
        }
        ++e[static_cast<std::size_t>(i - 1)];
    }
    if (vanishes) {
        ++chern_truncations();
        return Polynomial(Alphabet::ChernC, n, degree);
    }
    Polynomial f(Alphabet::ChernC, n, degree);
    f.add_term(e, coeff);
    return f;
}

} // namespace bpu
