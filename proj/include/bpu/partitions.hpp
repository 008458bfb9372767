#pragma once

#include "bpu/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace bpu {

/// Parts in non-decreasing order: c_{i_1} ... c_{i_l} with i_1 <= ... <= i_l.
using Partition = std::vector<int>;

/// The monomial order on S'_t: fewer factors first; equal length compares
/// the first differing part, smaller part first.
inline bool order_less(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Partitions of `total` with every part <= max_part, ascending in order_less.
inline std::vector<Partition> partitions(int total, int max_part) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int remaining, int min_part) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = min_part; part <= std::min(remaining, max_part); ++part) {
            cur.push_back(part);
            rec(remaining - part, part);
            cur.pop_back();
        }
    };
    if (total == 0) return {Partition{}};
    rec(total, 1);
    std::sort(out.begin(), out.end(), order_less);
    return out;
}

inline Exponents partition_exponents(const Partition& parts, int n) {
    Exponents e(static_cast<std::size_t>(n), 0);
    for (int i : parts) ++e.at(static_cast<std::size_t>(i - 1));
    return e;
}

inline Partition exponents_partition(const Exponents& e) {
    Partition parts;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) parts.push_back(static_cast<int>(i + 1));
    return parts;
}

/// Exponent vectors of total weight `total` in `nvars` variables, lex ascending.
inline std::vector<Exponents> weight_vectors(int total, int nvars) {
    std::vector<Exponents> out;
    Exponents cur(static_cast<std::size_t>(nvars), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
        if (i + 1 == cur.size()) {
            cur[i] = static_cast<std::uint8_t>(remaining);
            out.push_back(cur);
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            cur[i] = static_cast<std::uint8_t>(k);
            rec(i + 1, remaining - k);
        }
        cur[i] = 0;
    };
    if (nvars == 0) return total == 0 ? std::vector<Exponents>{Exponents{}} : std::vector<Exponents>{};
    rec(0, total);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace bpu
