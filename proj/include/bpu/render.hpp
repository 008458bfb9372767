#pragma once

// JSON document and ASCII charts for computed sequences and verification reports.

#include "bpu/verify.hpp"

#include <json.hpp>

#include <sstream>

namespace bpu {

using Json = nlohmann::ordered_json;

/// Polynomial with every coefficient written as "num/den", highest term first.
inline std::string exact_string(const Polynomial& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        if (!out.empty()) out += " + ";
        out += it->second.str();
        std::string mono = monomial_string(f.alphabet(), it->first);
        if (mono != "1") out += "*" + mono;
    }
    return out;
}

inline std::string class_string(const Polynomial& fiber, KZ3Class base, bool exact = true) {
    std::string f = exact ? exact_string(fiber) : fiber.str();
    if (base == KZ3Class::Unit) return f;
    return (fiber.size() > 1 ? "(" + f + ")" : f) + "*" + kz3_name(base);
}

inline std::string generator_string(const PageEntry& e, std::size_t j) {
    std::string g = class_string(e.lift(j), e.base);
    if (e.orders[j] > 0) g += " [order p^" + std::to_string(e.orders[j]) + "]";
    return g;
}

inline Json pos_json(Bidegree b) { return Json::array({b.s, b.t}); }

struct Document {
    long p = 0;
    int n = 0;
    int window = 0;
    std::vector<const Page*> pages;
    std::vector<const DifferentialMap*> differentials;
    const CohomologyReport* cohomology = nullptr;
    std::vector<Check> verifications;
};

inline Json to_json(const Document& doc) {
    Json j;
    const int r = int_valuation(doc.n, doc.p);
    j["p"] = doc.p;
    j["n"] = doc.n;
    j["r"] = r;
    j["m"] = static_cast<long>(doc.n / ipow(doc.p, r).get_si());
    j["window"] = doc.window;
    j["entries"] = Json::array();
    for (const Page* pg : doc.pages)
        for (const auto& [b, e] : pg->entries) {
            Json gens = Json::array();
            for (std::size_t k = 0; k < e.num_generators(); ++k) gens.push_back(generator_string(e, k));
            j["entries"].push_back(Json{{"s", b.s}, {"t", b.t}, {"page", page_name(pg->r)}, {"generators", gens}, {"iso", e.iso.str(doc.p)}});
        }
    j["differentials"] = Json::array();
    for (const auto* d : doc.differentials)
        j["differentials"].push_back(Json{{"r", d->r}, {"from", pos_json(d->from)}, {"to", pos_json(d->to)}, {"provenance", d->provenance.str()}});
    j["cohomology"] = Json::array();
    if (doc.cohomology)
        for (const auto& d : doc.cohomology->degrees)
            j["cohomology"].push_back(
                Json{{"degree", d.degree}, {"p_primary", d.p_primary.str(doc.p)}, {"status", status_name(d.status)}, {"axioms_used", d.axioms_used}});
    j["verifications"] = Json::array();
    for (const auto& c : doc.verifications)
        j["verifications"].push_back(Json{{"name", c.name}, {"result", c.pass ? "PASS" : "FAIL"}, {"details", c.details}});
    return j;
}

/// Differentials worth listing: everything except those forced by a zero end.
inline std::vector<const DifferentialMap*> listed_differentials(const SpectralSequence& ss) {
    std::vector<const DifferentialMap*> out;
    for (const auto* d : ss.differentials())
        if (d->provenance.kind != Provenance::Kind::ZeroSupport) out.push_back(d);
    return out;
}

inline Document make_document(const SpectralSequence& ss, const CohomologyReport* rep, std::vector<Check> checks, bool all_pages) {
    Document doc;
    doc.p = ss.ctx.prime();
    doc.n = ss.ctx.n;
    doc.window = ss.ctx.t_max;
    if (all_pages)
        for (const auto& pg : ss.pages) doc.pages.push_back(&pg);
    else
        doc.pages.push_back(&ss.einf());
    doc.differentials = listed_differentials(ss);
    doc.cohomology = rep;
    doc.verifications = std::move(checks);
    return doc;
}

// ---------------------------------------------------------------- text

/// '.' zero, 'o' free, '*' torsion, '#' free plus torsion; '?' marks an unsettled entry.
inline char iso_glyph(const PageEntry& e) {
    if (e.unsettled) return '?';
    if (e.iso.is_zero()) return '.';
    if (e.iso.free_rank > 0) return e.iso.has_torsion() ? '#' : 'o';
    return '*';
}

inline std::string render_grid(const Page& page, const Context& ctx) {
    std::ostringstream os;
    const auto cols = ctx.columns();
    const int width = 4;
    os << "E_" << page_name(page.r) << "  (s across, t up)\n";
    for (int t = ctx.t_max; t >= 0; t -= 2) {
        std::string label = std::to_string(t);
        os << std::string(4 - std::min<std::size_t>(4, label.size()), ' ') << label << " |";
        for (int s = 0; s <= cols.back(); ++s) {
            const PageEntry* e = page.find({s, t});
            char g = ' ';
            if (e && Bidegree{s, t}.total() <= ctx.t_max) g = iso_glyph(*e);
            else if (ctx.is_column(s)) g = ' ';
            os << std::string(width - 1, ' ') << g;
        }
        os << "\n";
    }
    os << "     +" << std::string(static_cast<std::size_t>(width * (cols.back() + 1)), '-') << "\n      ";
    for (int s = 0; s <= cols.back(); ++s) {
        std::string label = ctx.is_column(s) ? std::to_string(s) : "";
        os << std::string(width - label.size(), ' ') << label;
    }
    os << "\n  . 0   o free   * torsion   # both   ? unsettled\n";
    return os.str();
}

inline std::string render_entries(const Page& page, const Context& ctx) {
    std::ostringstream os;
    for (const auto& [b, e] : page.entries) {
        if (e.is_zero() || b.total() > ctx.t_max) continue;
        os << "  " << b.str() << "  " << e.iso.str(ctx.prime()) << (e.unsettled ? "  (unsettled)" : "") << "\n";
    }
    return os.str();
}

/// Whether some source generator maps outside the target boundaries.
inline bool acts_nontrivially(const DifferentialMap& d, const Page& page, const Prime& p) {
    if (!d.resolved() || d.is_zero()) return false;
    const PageEntry& tgt = page.at(d.to);
    for (std::size_t j = 0; j < d.matrix.cols(); ++j)
        if (!is_boundary(tgt, d.matrix.column(j), p)) return true;
    return false;
}

/// Nonzero d_3 and d_{2p-1} arrows plus every axiom or unresolved spot.
inline std::string render_arrows(const SpectralSequence& ss, std::optional<int> only_page = std::nullopt) {
    std::ostringstream os;
    const long q = ss.ctx.prime();
    const Prime& p = ss.ctx.p;
    for (const auto& pg : ss.pages)
        for (const auto& d : pg.differentials) {
            if (only_page && d.r != *only_page) continue;
            const bool special = d.provenance.kind == Provenance::Kind::Axiom || d.provenance.kind == Provenance::Kind::Unresolved;
            const bool drawn = (d.r == 3 || d.r == 2 * q - 1) && acts_nontrivially(d, pg, p);
            if (!drawn && !special) continue;
            if (d.from.total() > ss.ctx.t_max) continue;
            os << "  d_" << d.r << ": " << d.from.str() << " --> " << d.to.str() << "   [" << d.provenance.str() << "]\n";
            if (!drawn) continue;
            const PageEntry& src = pg.at(d.from);
            const PageEntry& tgt = pg.at(d.to);
            for (std::size_t j = 0; j < src.num_generators(); ++j) {
                auto col = d.matrix.column(j);
                bool zero = is_boundary(tgt, col, p);
                if (zero) continue;
                os << "      " << class_string(src.lift(j), src.base, false) << "  |->  " << class_string(tgt.polynomial(col), tgt.base, false)
                   << "\n";
            }
        }
    return os.str();
}

inline std::string render_cohomology(const CohomologyReport& rep) {
    std::ostringstream os;
    os << "p-primary cohomology, p = " << rep.p << ", n = " << rep.n << " (r = " << rep.r << ", m = " << rep.m << ")\n";
    for (const auto& d : rep.degrees) {
        os << "  H^" << d.degree << (d.degree < 10 ? "  " : " ") << ": " << d.p_primary.str(rep.p);
        if (d.status != DegreeStatus::Complete) os << "   (" << status_name(d.status) << ")";
        for (const auto& a : d.axioms_used) os << "   [axiom " << a << "]";
        os << "\n";
    }
    return os.str();
}

inline std::string render_checks(const std::vector<Check>& checks) {
    std::ostringstream os;
    for (const auto& c : checks) os << "  " << (c.pass ? "PASS " : "FAIL ") << c.name << (c.details.empty() ? "" : "  " + c.details) << "\n";
    return os.str();
}

} // namespace bpu
