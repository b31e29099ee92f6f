#pragma once

#include "scc/types.hpp"

namespace scc {

/// Kullback-Leibler divergence in bits between two contingency tables.
///
/// value is nonnegative and zero only when the tables agree on their
/// common support; it is +infinity when the implied table assigns zero
/// mass to a cell the true table populates.
struct DivergenceBits {
    double value;

    bool is_finite() const;
};

/// D(true || implied) = sum over cells of a*log2(a/b), with 0*log2(0/b)
/// read as 0 and a > 0 against b = 0 giving +infinity. Measures the extra
/// bits per observation paid for encoding draws from the true table with
/// a code built for the implied one.
DivergenceBits kl_divergence(const ContingencyTable& true_table,
                             const ContingencyTable& implied_table);

} // namespace scc
