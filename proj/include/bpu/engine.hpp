#pragma once

// Drives a sequence from E_3 to E_inf over the pages where two columns meet.

#include "bpu/rules.hpp"

namespace bpu {

struct SpectralSequence {
    Context ctx;
    EngineOptions options;
    std::vector<Page> pages; ///< pages[0] = E_3, last = E_inf

    const Page& e3() const { return pages.front(); }
    const Page& einf() const { return pages.back(); }

    /// The page in effect as E_r (the latest computed page with index <= r).
    const Page& page_at(int r) const {
        const Page* best = &pages.front();
        for (const auto& pg : pages)
            if (pg.r <= r) best = &pg;
        return *best;
    }

    std::vector<const DifferentialMap*> differentials() const {
        std::vector<const DifferentialMap*> out;
        for (const auto& pg : pages)
            for (const auto& d : pg.differentials) out.push_back(&d);
        return out;
    }

    bool fully_resolved() const {
        for (const auto* d : differentials())
            if (!d->resolved()) return false;
        return true;
    }
};

/// All d_r on one page, source to target, for every source in the grid.
/// Targets outside the grid mark the source as truncated.
inline std::vector<DifferentialMap> page_differentials(Page& page, const DifferentialRules& rules, const Context& ctx) {
    std::vector<DifferentialMap> out;
    const int r = page.r;
    for (auto& [b, src] : page.entries) {
        Bidegree to{b.s + r, b.t - r + 1};
        if (!ctx.is_column(to.s) || to.t < 0) continue;
        auto it = page.entries.find(to);
        if (it == page.entries.end()) {
            // Odd target rows are empty; only a genuine even row outside the grid truncates.
            if (to.t % 2 == 0 && !src.is_zero()) src.truncated = true;
            continue;
        }
        out.push_back(rules.differential(r, src, it->second));
    }
    return out;
}

inline SpectralSequence run(const Context& ctx, const DifferentialRules& rules, EngineOptions options = {}) {
    SpectralSequence ss{ctx, options, {}};
    ss.pages.push_back(build_e2(ctx));
    const auto relevant = ctx.relevant_pages();
    for (std::size_t i = 0; i < relevant.size(); ++i) {
        Page& cur = ss.pages.back();
        cur.r = relevant[i];
        for (auto& [b, e] : cur.entries) e.page = cur.r;
        cur.differentials = page_differentials(cur, rules, ctx);
        const int next_r = i + 1 < relevant.size() ? relevant[i + 1] : kInfinitePage;
        Page next = turn_page(cur, cur.differentials, next_r, ctx.p, options.policy);
        ss.pages.push_back(std::move(next));
    }
    return ss;
}

inline SpectralSequence compute(const Context& ctx, EngineOptions options = {}) {
    StandardRules rules(ctx, options);
    return run(ctx, rules, options);
}

inline SpectralSequence compute(Sequence seq, long p, int n, EngineOptions options = {}, std::optional<int> t_max = std::nullopt) {
    return compute(Context(seq, p, n, t_max), options);
}

/// One named pass/fail check.
struct Check {
    std::string name;
    bool pass = false;
    std::string details;
};

/// d o d = 0: on every page, each composite of two resolved differentials
/// lands in the boundaries of the final target.
inline Check check_d_squared(const SpectralSequence& ss) {
    const Prime& p = ss.ctx.p;
    std::size_t composites = 0;
    for (const auto& pg : ss.pages)
        for (const auto& d1 : pg.differentials)
            for (const auto& d2 : pg.differentials) {
                if (d2.from != d1.to || !d1.resolved() || !d2.resolved()) continue;
                const PageEntry& mid = pg.at(d1.to);
                const PageEntry& end = pg.at(d2.to);
                for (std::size_t j = 0; j < d1.matrix.cols(); ++j) {
                    auto coords = apply_differential(d1, mid, d1.matrix.column(j), p);
                    auto img = d2.matrix.apply(coords);
                    if (!is_boundary(end, img, p))
                        return {"d_squared_zero", false,
                                "d_" + std::to_string(pg.r) + " o d_" + std::to_string(pg.r) + " nonzero at " + d1.from.str()};
                }
                ++composites;
            }
    return {"d_squared_zero", true, std::to_string(composites) + " composites checked"};
}

/// Each differential sends relations of its source into boundaries of its target.
inline Check check_well_defined(const SpectralSequence& ss) {
    const Prime& p = ss.ctx.p;
    for (const auto& pg : ss.pages)
        for (const auto& d : pg.differentials) {
            if (!d.resolved()) continue;
            const PageEntry& src = pg.at(d.from);
            const PageEntry& tgt = pg.at(d.to);
            Matrix images = d.matrix * src.relations;
            for (std::size_t j = 0; j < images.cols(); ++j)
                if (!is_boundary(tgt, images.column(j), p))
                    return {"differentials_well_defined", false, "d_" + std::to_string(d.r) + " at " + d.from.str()};
            // Values must be cycles in the target.
            for (std::size_t j = 0; j < d.matrix.cols(); ++j)
                if (!is_cycle(tgt, d.matrix.column(j), p))
                    return {"differentials_well_defined", false, "image not a cycle at " + d.to.str()};
        }
    return {"differentials_well_defined", true, ""};
}

/// Z_{r+1} inside Z_r and B_r inside B_{r+1} for every entry.
inline Check check_monotone(const SpectralSequence& ss) {
    const Prime& p = ss.ctx.p;
    for (std::size_t i = 0; i + 1 < ss.pages.size(); ++i)
        for (const auto& [b, e] : ss.pages[i].entries) {
            const PageEntry& f = ss.pages[i + 1].at(b);
            for (std::size_t j = 0; j < f.cycles.cols(); ++j)
                if (!is_cycle(e, f.cycles.column(j), p)) return {"pages_monotone", false, "cycles grew at " + b.str()};
            for (std::size_t j = 0; j < e.boundaries.cols(); ++j)
                if (!is_boundary(f, e.boundaries.column(j), p)) return {"pages_monotone", false, "boundaries shrank at " + b.str()};
        }
    return {"pages_monotone", true, ""};
}

/// Every differential has bidegree (r, 1-r).
inline Check check_bidegrees(const SpectralSequence& ss) {
    for (const auto& pg : ss.pages)
        for (const auto& d : pg.differentials)
            if (d.to.s - d.from.s != d.r || d.to.t - d.from.t != 1 - d.r || d.r != pg.r)
                return {"differential_bidegrees", false, d.from.str() + " -> " + d.to.str()};
    return {"differential_bidegrees", true, ""};
}

inline std::vector<Check> self_checks(const SpectralSequence& ss) {
    return {check_bidegrees(ss), check_well_defined(ss), check_d_squared(ss), check_monotone(ss)};
}

} // namespace bpu
