#pragma once

#include "scc/types.hpp"

namespace scc {

// Outcome model for a prognostic marker: D = (T or V) and U, with T, U, V
// independent Bernoulli within a population. The three cause probabilities
// and the 2x2 marker-by-outcome table carry the same three degrees of
// freedom, so the mapping below is a bijection wherever both sides exist.

/// Builds the contingency table implied by independent causes.
///
/// tp = P_T*P_U, fp = P_T*(1-P_U), fn = (1-P_T)*P_U*P_V and tn the
/// complement (1-P_T)*(1-P_U*P_V). Total on the closed unit cube.
ContingencyTable causes_to_table(const CauseProbabilities& causes);

/// Recovers cause probabilities from a contingency table.
///
/// P_T = tp+fp, P_U = tp/P_T, P_V = fn/[(1-P_T)*P_U]. Throws
/// DegenerateMarker when P_T = 0 and DegenerateUniversalCause when the
/// P_V denominator vanishes or the recovered P_V exceeds 1 (a table that
/// no independent-cause population can produce).
CauseProbabilities table_to_causes(const ContingencyTable& table);

/// Computes SE, SP, PPV, NPV and prevalence from a table. Metrics with a
/// zero denominator come back as empty optionals.
PerformanceMetrics metrics(const ContingencyTable& table);

/// Outcome prevalence P_U*(P_T + P_V - P_T*P_V) implied by the causes.
///
/// Evaluated through the same arithmetic as causes_to_table, so the
/// result equals tp+fn of that table bit for bit.
double prevalence_from_causes(const CauseProbabilities& causes);

/// The transportability conditions per metric: a metric stays constant
/// across a family of populations exactly when its index does.
StabilityIndices stability_indices(const CauseProbabilities& causes);

/// Risk equation P(D=1|T) = (1-NPV) + [PPV-(1-NPV)]*T. Requires ppv and
/// npv to be defined.
RiskEquation risk_equation(const PerformanceMetrics& m);

/// Contingency table of the swapped-logic setup D = (T and V) or U with
/// independent causes. Dual to causes_to_table: complementing all three
/// causes there and swapping tp<->tn, fp<->fn lands on this table.
ContingencyTable symmetric_setup_table(const CauseProbabilities& causes);

} // namespace scc
