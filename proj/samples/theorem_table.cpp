// Prints the p-primary table of H^s(BPU_n), s <= 2p+8, for a few (p, n).

#include "bpu/bpu.hpp"

#include <iostream>

int main() {
    using namespace bpu;
    for (auto [p, n] : {std::pair{3L, 6}, std::pair{3L, 9}, std::pair{5L, 5}, std::pair{3L, 4}}) {
        auto ss = compute(Context(Sequence::U, p, n));
        std::cout << render_cohomology(assemble_report(ss)) << "\n";
    }
}
