#ifndef QG_PRINTED_TABLES_HPP
#define QG_PRINTED_TABLES_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qg/quasialg.hpp"

namespace qg {

/// Reference expansion of the bullet product as a bidifferential operator,
/// transcribed verbatim from earlier computer-algebra output and bundled as
/// fixture data. The recomputed star_expand operator is the ground truth;
/// these tables exist so mismatches can be diffed and reported reproducibly
/// rather than silently patched.
struct PrintedTable {
    int n = 0;
    std::string name;
    /// Terms keyed in display order (left monomial mask, right monomial mask);
    /// bit i-1 of a mask stands for the finite difference d^i.
    std::map<std::pair<std::uint32_t, std::uint32_t>, Scalar> terms;
    /// Display keys flagged as suspected transcription errors in the source
    /// (a normalized cochain forces the corresponding coefficient to zero).
    std::set<std::pair<std::uint32_t, std::uint32_t>> flagged;

    /// The display pairs monomials with the right-hand tensor factor acting
    /// on the first function: a printed term d^L (x) d^R is the operator term
    /// with d^R applied to f and d^L applied to g. This reading is pinned by
    /// the octonion table, which matches the recomputed operator exactly
    /// under it and under no other factor order.
    BidiffOperator as_operator() const;
};

/// The 31-term octonion expansion (n = 3).
PrintedTable printed_octonion_table();

/// The Clifford n = 3 expansion, including the flagged 1 (x) d^1 d^2 entry.
PrintedTable printed_clifford_table();

/// One mismatched coefficient between recomputation and a reference table.
struct TableDiffEntry {
    std::uint32_t left = 0;  ///< operator order: mask acting on f
    std::uint32_t right = 0; ///< operator order: mask acting on g
    Scalar recomputed;
    Scalar printed;
    bool flagged = false; ///< true if the table marks this entry as suspect
};

/// Structured diff of a recomputed operator against a reference table
/// (through as_operator); empty exactly when the two agree term by term.
/// Entries are ordered by (left, right) mask.
std::vector<TableDiffEntry> diff_printed(const BidiffOperator& recomputed,
                                         const PrintedTable& printed);

} // namespace qg

#endif
