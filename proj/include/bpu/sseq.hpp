#pragma once

// Pages of the p-localized Serre spectral sequences
//   U: BU_n  -> BPU_n  -> K(Z,3)
//   T: BT^n  -> BPT^n  -> K(Z,3)
//   K: BS^1  -> *      -> K(Z,3)
// as presented Z_(p)-modules.  Every entry E_r^{s,t} is a subquotient Z_r / B_r
// of its free E_2 lattice; torsion rows carry p * e_i in B from the start.

#include "bpu/matrix.hpp"
#include "bpu/partitions.hpp"
#include "bpu/polynomial.hpp"

#include <climits>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bpu {

enum class Sequence { U, T, K };

inline const char* sequence_name(Sequence s) {
    switch (s) {
    case Sequence::U: return "U";
    case Sequence::T: return "T";
    case Sequence::K: return "K";
    }
    return "?";
}

/// Generators of the p-local cohomology of K(Z,3) in degrees <= 2p+8.
enum class KZ3Class { Unit, X1, Yp0, X1Yp0 };

inline int kz3_degree(KZ3Class c, long p) {
    switch (c) {
    case KZ3Class::Unit: return 0;
    case KZ3Class::X1: return 3;
    case KZ3Class::Yp0: return static_cast<int>(2 * p + 2);
    case KZ3Class::X1Yp0: return static_cast<int>(2 * p + 5);
    }
    return -1;
}

/// Z/p rows; the other two rows are free.
inline bool kz3_is_torsion(KZ3Class c) { return c == KZ3Class::Yp0 || c == KZ3Class::X1Yp0; }

inline const char* kz3_name(KZ3Class c) {
    switch (c) {
    case KZ3Class::Unit: return "1";
    case KZ3Class::X1: return "x1";
    case KZ3Class::Yp0: return "y";
    case KZ3Class::X1Yp0: return "x1*y";
    }
    return "?";
}

inline std::optional<KZ3Class> kz3_at(int s, long p) {
    for (auto c : {KZ3Class::Unit, KZ3Class::X1, KZ3Class::Yp0, KZ3Class::X1Yp0})
        if (kz3_degree(c, p) == s) return c;
    return std::nullopt;
}

struct Bidegree {
    int s = 0;
    int t = 0;
    int total() const { return s + t; }
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
    std::string str() const { return "(" + std::to_string(s) + "," + std::to_string(t) + ")"; }
};

struct UnresolvedDifferential : std::runtime_error {
    UnresolvedDifferential(int r, Bidegree at)
        : std::runtime_error("unresolved differential d_" + std::to_string(r) + " at " + at.str()), page(r), where(at) {}
    int page;
    Bidegree where;
};

struct UnsupportedPage : std::invalid_argument {
    explicit UnsupportedPage(const std::string& what) : std::invalid_argument(what) {}
};

struct InvalidWindow : std::invalid_argument {
    explicit InvalidWindow(const std::string& what) : std::invalid_argument(what) {}
};

inline constexpr int kInfinitePage = INT_MAX;

inline std::string page_name(int r) { return r == kInfinitePage ? "inf" : std::to_string(r); }

/// Which sequence, which (p, n), and the window of fiber degrees.
struct Context {
    Sequence sequence;
    Prime p;
    int n;
    int t_max;

    Context(Sequence seq, long prime, int n_, std::optional<int> t_max_ = std::nullopt)
        : sequence(seq), p(prime), n(n_), t_max(t_max_.value_or(static_cast<int>(2 * prime + 8))) {
        if (n < 1) throw InvalidWindow("n must be a positive integer");
        if (t_max < 0 || t_max % 2 != 0) throw InvalidWindow("t_max must be even and nonnegative");
        // Beyond 2p+8 the cohomology of K(Z,3) acquires classes this model omits.
        if (t_max > 2 * p + 8) throw UnsupportedPage("t_max above 2p+8 leaves the supported window");
    }

    long prime() const { return p.value(); }
    Alphabet alphabet() const {
        switch (sequence) {
        case Sequence::U: return Alphabet::ChernC;
        case Sequence::T: return Alphabet::TorusV;
        case Sequence::K: return Alphabet::LineV;
        }
        return Alphabet::ChernC;
    }
    int nvars() const { return sequence == Sequence::K ? 1 : n; }

    std::vector<int> columns() const { return {0, 3, static_cast<int>(2 * prime() + 2), static_cast<int>(2 * prime() + 5)}; }
    bool is_column(int s) const {
        for (int c : columns())
            if (c == s) return true;
        return false;
    }
    /// Entries are kept up to this total degree so that every entry of total
    /// degree <= t_max sees all of its incoming and outgoing differentials.
    int grid_total() const { return t_max + 1; }
    bool in_grid(Bidegree b) const {
        return is_column(b.s) && b.t >= 0 && b.t % 2 == 0 && b.t <= t_max && b.total() <= grid_total();
    }
    /// Pages on which a differential can join two columns: all pairwise gaps.
    std::vector<int> relevant_pages() const {
        std::set<int> gaps;
        auto cols = columns();
        for (std::size_t i = 0; i < cols.size(); ++i)
            for (std::size_t j = i + 1; j < cols.size(); ++j) gaps.insert(cols[j] - cols[i]);
        return {gaps.begin(), gaps.end()};
    }
};

/// E_2 basis of the fiber degree t: Chern monomials (partitions of t/2 with
/// parts <= n), torus monomials, or v^{t/2}.
inline std::vector<Exponents> fiber_basis(const Context& ctx, int t) {
    const int w = t / 2;
    switch (ctx.sequence) {
    case Sequence::U: {
        std::vector<Exponents> out;
        for (const auto& part : partitions(w, std::min(w, ctx.n))) out.push_back(partition_exponents(part, ctx.n));
        return out;
    }
    case Sequence::T: return weight_vectors(w, ctx.n);
    case Sequence::K: return {Exponents{static_cast<std::uint8_t>(w)}};
    }
    return {};
}

struct PageEntry {
    Sequence sequence = Sequence::U;
    int page = 2;
    Bidegree pos;
    KZ3Class base = KZ3Class::Unit;
    Alphabet alphabet = Alphabet::ChernC;
    int nvars = 0;
    std::vector<Exponents> basis; ///< E_2 labels (fiber parts) indexing the lattice
    Matrix cycles;                ///< basis of Z_r, columns in E_2 coordinates
    Matrix boundaries;            ///< generators of B_r
    Matrix generators;            ///< lifts of the presented generators
    Matrix relations;             ///< generators x relations
    std::vector<int> orders;      ///< per generator: 0 free, k for Z/p^k
    IsoType iso;
    bool unsettled = false;       ///< an unresolved differential touches this spot
    bool truncated = false;       ///< an outgoing differential leaves the grid

    std::size_t dim() const { return basis.size(); }
    std::size_t num_generators() const { return generators.cols(); }
    bool is_zero() const { return iso.is_zero(); }

    std::map<Exponents, std::size_t> index; ///< basis lookup

    std::optional<std::size_t> index_of(const Exponents& e) const {
        auto it = index.find(e);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }

    /// Fiber polynomial of an E_2-coordinate vector.
    Polynomial polynomial(std::span<const PLocal> coords) const {
        Polynomial f(alphabet, nvars, pos.t);
        for (std::size_t i = 0; i < basis.size(); ++i) f.add_term(basis[i], coords[i]);
        return f;
    }

    Polynomial lift(std::size_t generator) const { return polynomial(generators.column(generator)); }

    /// E_2 coordinates of a fiber polynomial of degree t.
    std::vector<PLocal> coordinates(const Polynomial& f) const {
        std::vector<PLocal> v(basis.size());
        for (const auto& [e, c] : f.terms()) {
            auto i = index_of(e);
            if (!i) throw std::logic_error("monomial " + monomial_string(alphabet, e) + " not in E_2 basis at " + pos.str());
            v[*i] = c;
        }
        return v;
    }

    std::string label(std::size_t i) const {
        std::string fiber = monomial_string(alphabet, basis[i]);
        if (base == KZ3Class::Unit) return fiber;
        return fiber == "1" ? kz3_name(base) : fiber + "*" + kz3_name(base);
    }
};

/// Z / B presented with diagonal relations.  B must lie in Z.
inline void present(PageEntry& e, const Prime& p) {
    const std::size_t N = e.dim();
    const std::size_t z = e.cycles.cols();
    e.generators = Matrix(N, 0);
    e.relations = Matrix(0, 0);
    e.orders.clear();
    e.iso = IsoType{};
    if (z == 0) return;

    Matrix coords(z, e.boundaries.cols());
    if (e.boundaries.cols() > 0) {
        ImageSolver solver(e.cycles, p);
        for (std::size_t j = 0; j < e.boundaries.cols(); ++j) {
            auto col = e.boundaries.column(j);
            auto y = solver.solve(col);
            if (!y) throw std::logic_error("boundary outside cycles at " + e.pos.str());
            coords.set_column(j, *y);
        }
    }
    auto f = smith_normal_form(coords, p);
    Matrix basis = e.cycles * f.U_inv;

    std::vector<std::size_t> keep;
    std::vector<int> orders;
    for (std::size_t i = 0; i < z; ++i) {
        int order = i < f.rank ? f.exponents[i] : 0;
        if (i < f.rank && order == 0) continue; // killed
        keep.push_back(i);
        orders.push_back(order);
    }
    e.generators = Matrix(N, keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k)
        for (std::size_t r = 0; r < N; ++r) e.generators(r, k) = basis(r, keep[k]);
    e.orders = orders;
    std::size_t ntors = 0;
    for (int o : orders)
        if (o > 0) ++ntors;
    e.relations = Matrix(keep.size(), ntors);
    std::size_t col = 0;
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (orders[k] > 0) {
            e.relations(k, col++) = ppow(p, orders[k]);
            e.iso.torsion.push_back(orders[k]);
        } else {
            ++e.iso.free_rank;
        }
    }
    std::sort(e.iso.torsion.begin(), e.iso.torsion.end());
}

struct Provenance {
    enum class Kind {
        Rule,          ///< computed by a differential formula
        ZeroSupport,   ///< source or target already zero on this page
        AssumedZero,   ///< declared zero by a standing assumption
        Axiom,         ///< decided by a declared external axiom
        Unresolved,
    };
    Kind kind = Kind::Rule;
    std::string detail;

    std::string str() const {
        switch (kind) {
        case Kind::Rule: return "rule: " + detail;
        case Kind::ZeroSupport: return "zero (" + detail + ")";
        case Kind::AssumedZero: return "assumed zero (" + detail + ")";
        case Kind::Axiom: return "axiom: " + detail;
        case Kind::Unresolved: return "unresolved: " + detail;
        }
        return detail;
    }
};

/// d_r from `from` to `to`.  matrix maps source generator coordinates to
/// E_2 coordinates of the target (values are lifts of cycles).
struct DifferentialMap {
    int r = 0;
    Bidegree from, to;
    Matrix matrix;
    Provenance provenance;

    bool is_zero() const { return matrix.is_zero(); }
    bool resolved() const { return provenance.kind != Provenance::Kind::Unresolved; }
};

struct Page {
    int r = 2;
    std::map<Bidegree, PageEntry> entries;
    std::vector<DifferentialMap> differentials;

    const PageEntry* find(Bidegree b) const {
        auto it = entries.find(b);
        return it == entries.end() ? nullptr : &it->second;
    }
    const PageEntry& at(Bidegree b) const { return entries.at(b); }
};

/// E_2 (= E_3: every d_2 joins two columns at distance 2, and none exist).
inline Page build_e2(const Context& ctx) {
    Page page;
    page.r = 3;
    const long p = ctx.prime();
    for (int s : ctx.columns()) {
        KZ3Class base = *kz3_at(s, p);
        for (int t = 0; t <= ctx.t_max; t += 2) {
            Bidegree b{s, t};
            if (!ctx.in_grid(b)) continue;
            PageEntry e;
            e.sequence = ctx.sequence;
            e.page = 3;
            e.pos = b;
            e.base = base;
            e.alphabet = ctx.alphabet();
            e.nvars = ctx.nvars();
            e.basis = fiber_basis(ctx, t);
            const std::size_t N = e.basis.size();
            for (std::size_t i = 0; i < N; ++i) e.index.emplace(e.basis[i], i);
            e.cycles = Matrix::identity(N);
            e.boundaries = kz3_is_torsion(base) ? Matrix::identity(N) : Matrix(N, 0);
            if (kz3_is_torsion(base))
                for (std::size_t i = 0; i < N; ++i) e.boundaries(i, i) = p;
            present(e, ctx.p);
            page.entries.emplace(b, std::move(e));
        }
    }
    return page;
}

inline Page build_e2(Sequence seq, long p, int n, std::optional<int> t_max = std::nullopt) {
    return build_e2(Context(seq, p, n, t_max));
}

/// Target generator coordinates of d(x), torsion coordinates reduced mod p^k.
inline std::vector<PLocal> apply_differential(const DifferentialMap& d, const PageEntry& target, std::span<const PLocal> x,
                                              const Prime& p) {
    if (!d.resolved()) throw UnresolvedDifferential(d.r, d.from);
    std::vector<PLocal> image = d.matrix.apply(x);
    const std::size_t g = target.num_generators();
    if (g == 0) return {};
    Matrix sys = target.generators.hconcat(target.boundaries);
    auto w = solve_mod_image(sys, image, p);
    if (!w) throw std::logic_error("differential leaves the target cycles at " + target.pos.str());
    std::vector<PLocal> y(w->begin(), w->begin() + static_cast<std::ptrdiff_t>(g));
    for (std::size_t i = 0; i < g; ++i)
        if (target.orders[i] > 0) y[i] = reduce_mod(y[i], ipow(p.value(), target.orders[i]));
    return y;
}

/// Whether an E_2-coordinate vector lies in Z_r (i.e. survives as a class).
inline bool is_cycle(const PageEntry& e, std::span<const PLocal> v, const Prime& p) {
    return solve_mod_image(e.cycles, v, p).has_value();
}

/// Whether an E_2-coordinate vector is zero on this page (lies in B_r).
inline bool is_boundary(const PageEntry& e, std::span<const PLocal> v, const Prime& p) {
    return solve_mod_image(e.boundaries, v, p).has_value();
}

enum class UnresolvedPolicy { Throw, Defer };

/// E_{r_next} from E_r and its differentials: ker(d out) / im(d in).
inline Page turn_page(const Page& page, const std::vector<DifferentialMap>& diffs, int r_next, const Prime& p,
                      UnresolvedPolicy policy = UnresolvedPolicy::Throw) {
    Page next;
    next.r = r_next;
    next.entries = page.entries;
    for (auto& [b, e] : next.entries) e.page = r_next;

    for (const auto& d : diffs) {
        if (!d.resolved()) {
            if (policy == UnresolvedPolicy::Throw) throw UnresolvedDifferential(d.r, d.from);
            next.entries.at(d.from).unsettled = true;
            next.entries.at(d.to).unsettled = true;
            continue;
        }
        if (d.is_zero()) continue;
        const PageEntry& src = page.at(d.from);
        const PageEntry& tgt = page.at(d.to);

        // Source: x with d(x) in B_r(target).
        Matrix stacked = d.matrix.hconcat(tgt.boundaries);
        Matrix k = kernel_basis(stacked, p).rows_range(0, src.num_generators());
        Matrix z = (src.generators * k).hconcat(src.boundaries);
        next.entries.at(d.from).cycles = image_basis(z, p);

        // Target: B_r + im(d).
        next.entries.at(d.to).boundaries = image_basis(tgt.boundaries.hconcat(d.matrix), p);
    }
    for (auto& [b, e] : next.entries) present(e, p);
    return next;
}

} // namespace bpu
