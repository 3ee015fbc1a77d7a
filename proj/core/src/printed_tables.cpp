#include "qg/printed_tables.hpp"

namespace qg {

namespace {

// Masks: bit i-1 is d^i, so 1 = d1, 2 = d2, 4 = d3, 3 = d1d2, 5 = d1d3,
// 6 = d2d3, 7 = d1d2d3.
struct Entry {
    std::uint32_t left, right;
    int num, den;
};

PrintedTable make(int n, std::string name, std::initializer_list<Entry> entries,
                  std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> flagged) {
    PrintedTable t;
    t.n = n;
    t.name = std::move(name);
    for (const auto& e : entries)
        t.terms[{e.left, e.right}] = Scalar(Rational(e.num, e.den));
    for (const auto& k : flagged) t.flagged.insert(k);
    return t;
}

} // namespace

PrintedTable printed_octonion_table() {
    // 1 (x) 1
    // - 1/2 (d1(x)d1 + d2(x)d1 + d3(x)d1 + d2(x)d2 + d3(x)d2 + d3(x)d3
    //        + d1d2(x)d1 + d1d3(x)d1 + d2d3(x)d1 + d2d3(x)d2 + d2(x)d1d2
    //        + d3(x)d1d3 + d3(x)d2d3 + d1d2d3(x)d1 + d2d3(x)d1d2)
    // - 1/4 (-d1(x)d2d3 + d2(x)d1d3 + d3(x)d1d2 - d1(x)d1d2d3 + d2(x)d1d2d3
    //        + d3(x)d1d2d3 + d1d2(x)d1d2 + d1d2(x)d1d3 - d1d2(x)d2d3
    //        + d1d3(x)d1d3 + d2d3(x)d1d3 + d2d3(x)d2d3 + d1d2d3(x)d1d2
    //        + d1d2d3(x)d1d3 + d2d3(x)d1d2d3)
    // - 1/8 d1d2d3(x)d1d2d3
    return make(3, "octonion",
                {
                    {0, 0, 1, 1},
                    {1, 1, -1, 2},
                    {2, 1, -1, 2},
                    {4, 1, -1, 2},
                    {2, 2, -1, 2},
                    {4, 2, -1, 2},
                    {4, 4, -1, 2},
                    {3, 1, -1, 2},
                    {5, 1, -1, 2},
                    {6, 1, -1, 2},
                    {6, 2, -1, 2},
                    {2, 3, -1, 2},
                    {4, 5, -1, 2},
                    {4, 6, -1, 2},
                    {7, 1, -1, 2},
                    {6, 3, -1, 2},
                    {1, 6, 1, 4},
                    {2, 5, -1, 4},
                    {4, 3, -1, 4},
                    {1, 7, 1, 4},
                    {2, 7, -1, 4},
                    {4, 7, -1, 4},
                    {3, 3, -1, 4},
                    {3, 5, -1, 4},
                    {3, 6, 1, 4},
                    {5, 5, -1, 4},
                    {6, 5, -1, 4},
                    {6, 6, -1, 4},
                    {7, 3, -1, 4},
                    {7, 5, -1, 4},
                    {6, 7, -1, 4},
                    {7, 7, -1, 8},
                },
                {});
}

PrintedTable printed_clifford_table() {
    // 1 (x) 1
    // - 1/2 (d1(x)d1 + d2(x)d2 + d3(x)d3 + d3(x)d2 + d2d3(x)d2 + 1(x)d1d2
    //        + d1(x)d1d2 + d2(x)d1d2 + d3(x)d1d2 + d3(x)d2d3 + d2d3(x)d1d2)
    // - 1/4 (d3(x)d1d2d3 + d1d2(x)d1d2 + d1d3(x)d1d2 - d1d3(x)d1d3
    //        + d2d3(x)d2d3 + d2d3(x)d1d2d3 + d1d2d3(x)d1d2)
    // - 1/8 d1d2d3(x)d1d2d3
    // The 1 (x) d1d2 entry is flagged: unit preservation (F(0,b) = 1) forces
    // every 1 (x) d^T coefficient with T != 0 to vanish, so it cannot belong
    // to the expansion of any normalized cochain.
    return make(3, "clifford-3",
                {
                    {0, 0, 1, 1},
                    {1, 1, -1, 2},
                    {2, 2, -1, 2},
                    {4, 4, -1, 2},
                    {4, 2, -1, 2},
                    {6, 2, -1, 2},
                    {0, 3, -1, 2},
                    {1, 3, -1, 2},
                    {2, 3, -1, 2},
                    {4, 3, -1, 2},
                    {4, 6, -1, 2},
                    {6, 3, -1, 2},
                    {4, 7, -1, 4},
                    {3, 3, -1, 4},
                    {5, 3, -1, 4},
                    {5, 5, 1, 4},
                    {6, 6, -1, 4},
                    {6, 7, -1, 4},
                    {7, 3, -1, 4},
                    {7, 7, -1, 8},
                },
                {{0, 3}});
}

BidiffOperator PrintedTable::as_operator() const {
    BidiffOperator op;
    op.n = n;
    for (const auto& [key, c] : terms) {
        if (c.is_zero()) continue;
        op.terms[{key.second, key.first}] = c; // right display factor acts on f
    }
    return op;
}

std::vector<TableDiffEntry> diff_printed(const BidiffOperator& recomputed,
                                         const PrintedTable& printed) {
    BidiffOperator ref = printed.as_operator();
    std::vector<TableDiffEntry> diff;
    std::uint32_t size = 1u << printed.n;
    for (std::uint32_t s = 0; s < size; ++s)
        for (std::uint32_t t = 0; t < size; ++t) {
            Scalar ours = recomputed.coeff(s, t);
            Scalar theirs = ref.coeff(s, t);
            if (ours == theirs) continue;
            // a flagged display key (L,R) lands at operator key (R,L)
            bool flagged = printed.flagged.count({t, s}) > 0;
            diff.push_back({s, t, ours, theirs, flagged});
        }
    return diff;
}

} // namespace qg
