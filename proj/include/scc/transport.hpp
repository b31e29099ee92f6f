#pragma once

#include <optional>

#include "scc/core.hpp"
#include "scc/types.hpp"

namespace scc {

enum class TransportMethod {
    predictive_values, ///< hold PPV and NPV, take the target's P(T=1)
    accuracy,          ///< hold SE and SP, take the target's prevalence
    proportional_odds, ///< one common odds ratio on all three causes
};

/// Short stable token for a method ("pv", "acc", "po").
const char* method_token(TransportMethod method);

/// The single piece of target-population information a transport used.
struct TargetInput {
    enum class Kind { marker_positivity, prevalence };
    Kind kind;
    double value;
};

/// A transported marker: the contingency table implied in the target
/// population plus how it was obtained.
struct TransportResult {
    ContingencyTable implied_table;
    TransportMethod method;
    std::optional<double> fitted_odds_ratio; ///< proportional odds only
    TargetInput target_input;
};

/// Transports by predictive values: the target table is P(T) from the
/// target combined with the source's PPV and NPV. PPV and NPV of the
/// implied table equal the source's; SE/SP generally move.
TransportResult transport_by_predictive_values(const PerformanceMetrics& source,
                                               double target_p_t);

/// Transports by accuracy: Bayes' rule combines the source's SE and SP
/// with the target prevalence. SE/SP of the implied table equal the
/// source's; predictive values generally move.
TransportResult transport_by_accuracy(const PerformanceMetrics& source,
                                      double target_prevalence);

/// The likelihood-ratio form of prevalence adjustment, which is the same
/// update as transport_by_accuracy written on the logit scale.
struct LogitAdjustment {
    double positive_lr;            ///< SE/(1-SP)
    double negative_lr;            ///< (1-SE)/SP
    double adjusted_ppv;           ///< logit^-1(logit(pi*) + log LR+)
    double adjusted_one_minus_npv; ///< logit^-1(logit(pi*) + log LR-)
};

/// Computes both likelihood ratios and the prevalence-adjusted predictive
/// values. Requires se, sp and the target prevalence strictly inside
/// (0,1); boundary accuracy throws DegenerateAccuracy.
LogitAdjustment logit_adjustment_check(const PerformanceMetrics& source,
                                       double target_prevalence);

/// Applies an odds ratio to a probability: p -> p*x / (1 - p + p*x).
/// Identity at x = 1; strictly increasing in p and x on the open interval.
double apply_odds_ratio(double p, double x);

/// Applies the same odds ratio to all three cause probabilities.
CauseProbabilities apply_odds_ratio(const CauseProbabilities& causes, double x);

/// Prevalence of the population obtained by shifting all three causes by
/// the odds ratio x. Strictly increasing in x with limits 0 and 1, so any
/// target prevalence in (0,1) is hit by exactly one x.
double proportional_odds_objective(const CauseProbabilities& causes, double x);

/// Default tolerance on the prevalence scale for the odds-ratio solver.
inline constexpr double kDefaultSolverTol = 1e-10;

/// Finds the unique x > 0 with proportional_odds_objective(causes, x) =
/// target_prevalence. Brackets geometrically outward from x = 1 (factor
/// 4, at most 64 expansions), then bisects; the returned x satisfies
/// |f(x) - target| <= tol and the bracket is additionally narrowed to
/// ~1e-13 relative so downstream tables carry full precision.
double solve_common_odds_ratio(const CauseProbabilities& causes,
                               double target_prevalence,
                               double tol = kDefaultSolverTol);

/// Coefficients of the cubic a*x^3 + b*x^2 + c*x + d whose positive real
/// root is the common odds ratio. Kept as an algebraic cross-check of the
/// iterative solver, not as the production path.
struct CubicCoefficients {
    double a;
    double b;
    double c;
    double d;

    double eval(double x) const { return ((a * x + b) * x + c) * x + d; }
};

CubicCoefficients cubic_coefficients(const CauseProbabilities& causes,
                                     double target_prevalence);

/// The unique positive real root of a cubic with a > 0 and d < 0, found
/// in closed form and polished by Newton steps.
double positive_cubic_root(const CubicCoefficients& q);

/// Transports by the proportional-odds assumption: solves for the common
/// odds ratio, shifts all three causes by it and rebuilds the table.
TransportResult transport_proportional_odds(const CauseProbabilities& source,
                                            double target_prevalence,
                                            double tol = kDefaultSolverTol);

} // namespace scc
