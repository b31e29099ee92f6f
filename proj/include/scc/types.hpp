#pragma once

#include <optional>

#include "scc/errors.hpp"

namespace scc {

/// Joint probabilities of a binary marker T against a binary outcome D.
///
/// Cells are population probability masses, not counts: tp = P(T=1,D=1),
/// fp = P(T=1,D=0), fn = P(T=0,D=1), tn = P(T=0,D=0). The constructor
/// enforces cells in [0,1] and a total mass of 1. Sums that drift from 1
/// by at most 1e-9 (e.g. values that went through decimal text) are
/// renormalized; larger deviations are rejected.
struct ContingencyTable {
    double tp;
    double fp;
    double fn;
    double tn;

    ContingencyTable(double tp, double fp, double fn, double tn);

    /// P(T=1), the marker positivity.
    double positivity() const { return tp + fp; }

    /// P(D=1), the outcome prevalence.
    double prevalence() const { return tp + fn; }

    /// Accepted deviation of the cell sum from 1 without renormalizing.
    static constexpr double kSumTolerance = 1e-12;
    /// Maximum deviation repaired by renormalization.
    static constexpr double kRenormTolerance = 1e-9;
};

/// Bernoulli parameters of the three independent causes: the marker T,
/// the universal cause U and the alternative cause V.
struct CauseProbabilities {
    double p_t;
    double p_u;
    double p_v;

    CauseProbabilities(double p_t, double p_u, double p_v);

    /// True when any component sits exactly on 0 or 1. Boundary values
    /// are representable but several operations require the open cube.
    bool degenerate() const;
};

/// The four classical performance metrics plus prevalence.
///
/// A metric whose defining denominator is zero is carried as an empty
/// optional, never as a silent zero.
struct PerformanceMetrics {
    std::optional<double> se;  ///< sensitivity  P(T=1|D=1)
    std::optional<double> sp;  ///< specificity  P(T=0|D=0)
    std::optional<double> ppv; ///< positive predictive value P(D=1|T=1)
    std::optional<double> npv; ///< negative predictive value P(D=0|T=0)
    double prevalence = 0.0;   ///< P(D=1)
};

/// Unwraps an optional metric or throws UndefinedMetric naming it.
double require_metric(const std::optional<double>& metric, const char* name);

/// The per-metric quantities that must stay constant across a family of
/// populations for that metric to be transportable.
///
/// ppv_index and npv_index exist for every cause triple; se_index needs
/// p_t > 0 and sp_index needs p_t < 1 and p_u*p_v < 1.
struct StabilityIndices {
    double ppv_index;                ///< P_U
    double npv_index;                ///< P_U * P_V
    std::optional<double> se_index;  ///< P_V (1-P_T) / P_T
    std::optional<double> sp_index;  ///< P_T (1-P_U) / [(1-P_T)(1-P_U P_V)]

    /// Accessors that throw UndefinedIndex when the index does not exist.
    double require_se_index() const;
    double require_sp_index() const;
};

/// Linear risk equation P(D=1|T) = intercept + slope * T for a binary
/// marker; intercept = 1-NPV, slope = PPV-(1-NPV).
struct RiskEquation {
    double intercept;
    double slope;

    /// Predicted outcome risk for marker value T in {0,1}.
    double at(bool marker_positive) const {
        return marker_positive ? intercept + slope : intercept;
    }
};

} // namespace scc
