#include "scc/divergence.hpp"

#include <cmath>
#include <limits>

namespace scc {

namespace {

// Both tables are normalized to 1e-12, so the true divergence is bounded
// below by about -1.5e-12; anything in that band is rounding noise on a
// genuinely zero divergence.
constexpr double kNoiseFloor = -4e-12;

} // namespace

bool DivergenceBits::is_finite() const { return std::isfinite(value); }

DivergenceBits kl_divergence(const ContingencyTable& true_table,
                             const ContingencyTable& implied_table) {
    const double a[4] = {true_table.tp, true_table.fp, true_table.fn,
                         true_table.tn};
    const double b[4] = {implied_table.tp, implied_table.fp, implied_table.fn,
                         implied_table.tn};
    double bits = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (a[i] == 0.0) {
            continue;
        }
        if (b[i] == 0.0) {
            return DivergenceBits{std::numeric_limits<double>::infinity()};
        }
        bits += a[i] * std::log2(a[i] / b[i]);
    }
    if (bits < 0.0 && bits > kNoiseFloor) {
        bits = 0.0;
    }
    return DivergenceBits{bits};
}

} // namespace scc
