#pragma once

// Reads p-primary cohomology of the total space off E_inf.

#include "bpu/engine.hpp"

#include <algorithm>

namespace bpu {

enum class DegreeStatus { Complete, ExtensionAmbiguous, Unresolved };

inline const char* status_name(DegreeStatus s) {
    switch (s) {
    case DegreeStatus::Complete: return "complete";
    case DegreeStatus::ExtensionAmbiguous: return "extension-ambiguous";
    case DegreeStatus::Unresolved: return "has-unresolved-differentials";
    }
    return "?";
}

struct DegreeReport {
    int degree = 0;
    std::vector<std::pair<Bidegree, IsoType>> pieces; ///< nonzero E_inf entries with s > 0
    IsoType p_primary;
    DegreeStatus status = DegreeStatus::Complete;
    std::vector<std::string> axioms_used;
};

struct CohomologyReport {
    long p = 0;
    int n = 0;
    int r = 0; ///< v_p(n)
    int m = 0; ///< n / p^r
    int window = 0; ///< degrees 0 .. window are reported
    std::vector<DegreeReport> degrees;

    const DegreeReport& at(int d) const { return degrees.at(static_cast<std::size_t>(d)); }
};

/// For each total degree d <= t_max: the filtration quotients in positive
/// columns.  A single nonzero quotient (or only free ones) determines the
/// p-primary part; anything else is flagged as an extension problem.
inline CohomologyReport assemble_report(const SpectralSequence& ss) {
    const Context& ctx = ss.ctx;
    const long p = ctx.prime();
    CohomologyReport rep;
    rep.p = p;
    rep.n = ctx.n;
    rep.r = int_valuation(ctx.n, p);
    rep.m = static_cast<int>(ctx.n / ipow(p, rep.r).get_si());
    rep.window = ctx.t_max;

    const Page& inf = ss.einf();
    for (int d = 0; d <= ctx.t_max; ++d) {
        DegreeReport dr;
        dr.degree = d;
        bool unresolved = false;
        for (const auto& [b, e] : inf.entries) {
            if (b.total() != d) continue;
            if (e.unsettled) unresolved = true;
            if (b.s > 0 && !e.is_zero()) dr.pieces.emplace_back(b, e.iso);
        }
        for (const auto* diff : ss.differentials()) {
            const bool touches = diff->to.total() == d || diff->from.total() == d;
            if (touches && !diff->resolved()) unresolved = true;
            if (diff->to.total() == d && diff->provenance.kind == Provenance::Kind::Axiom &&
                std::find(dr.axioms_used.begin(), dr.axioms_used.end(), diff->provenance.detail) == dr.axioms_used.end())
                dr.axioms_used.push_back(diff->provenance.detail);
        }
        bool all_free = std::all_of(dr.pieces.begin(), dr.pieces.end(), [](const auto& pc) { return !pc.second.has_torsion(); });
        if (unresolved) {
            dr.status = DegreeStatus::Unresolved;
        } else if (dr.pieces.size() <= 1 || all_free) {
            dr.status = DegreeStatus::Complete;
            if (!dr.pieces.empty()) dr.p_primary = dr.pieces.front().second.torsion_part();
        } else {
            dr.status = DegreeStatus::ExtensionAmbiguous;
        }
        // Unambiguous summands are still reported when the extension is open.
        if (dr.status != DegreeStatus::Complete)
            for (const auto& pc : dr.pieces) dr.p_primary += pc.second.torsion_part();
        rep.degrees.push_back(std::move(dr));
    }
    return rep;
}

} // namespace bpu
