#include "scc/core.hpp"

#include <cmath>
#include <string>

namespace scc {

namespace {

// Guard for float noise when a table encodes a boundary population
// (true P_V = 1 can read back as 1 + few ulp).
constexpr double kConsistencySlack = 1e-12;

std::optional<double> ratio(double numerator, double denominator) {
    if (denominator == 0.0) {
        return std::nullopt;
    }
    return numerator / denominator;
}

} // namespace

ContingencyTable causes_to_table(const CauseProbabilities& causes) {
    const double tp = causes.p_t * causes.p_u;
    const double fp = causes.p_t * (1.0 - causes.p_u);
    const double fn = (1.0 - causes.p_t) * causes.p_u * causes.p_v;
    // Product form keeps the cell nonnegative; the sum then lands within a
    // few ulp of 1, which the table constructor accepts unchanged.
    const double tn = (1.0 - causes.p_t) * (1.0 - causes.p_u * causes.p_v);
    return ContingencyTable(tp, fp, fn, tn);
}

CauseProbabilities table_to_causes(const ContingencyTable& table) {
    const double p_t = table.tp + table.fp;
    if (p_t == 0.0) {
        throw DegenerateMarker("marker positivity tp+fp is 0, P_U is undefined");
    }
    const double p_u = table.tp / p_t;
    const double denom = (1.0 - p_t) * p_u;
    if (denom == 0.0) {
        if (table.fn > 0.0) {
            throw DegenerateUniversalCause(
                "fn > 0 with (1-P_T)*P_U = 0: table is inconsistent with "
                "independent causes");
        }
        throw DegenerateUniversalCause("(1-P_T)*P_U = 0, P_V is undefined");
    }
    double p_v = table.fn / denom;
    if (p_v > 1.0 + kConsistencySlack) {
        throw DegenerateUniversalCause(
            "recovered P_V = " + std::to_string(p_v) +
            " exceeds 1: table is inconsistent with independent causes");
    }
    if (p_v > 1.0) {
        p_v = 1.0;
    }
    return CauseProbabilities(p_t, p_u, p_v);
}

PerformanceMetrics metrics(const ContingencyTable& table) {
    PerformanceMetrics m;
    m.se = ratio(table.tp, table.tp + table.fn);
    m.sp = ratio(table.tn, table.fp + table.tn);
    m.ppv = ratio(table.tp, table.tp + table.fp);
    m.npv = ratio(table.tn, table.fn + table.tn);
    m.prevalence = table.prevalence();
    return m;
}

double prevalence_from_causes(const CauseProbabilities& causes) {
    return causes_to_table(causes).prevalence();
}

StabilityIndices stability_indices(const CauseProbabilities& causes) {
    StabilityIndices idx{causes.p_u, causes.p_u * causes.p_v, std::nullopt,
                         std::nullopt};
    if (causes.p_t > 0.0) {
        idx.se_index = causes.p_v * (1.0 - causes.p_t) / causes.p_t;
    }
    const double sp_denom = (1.0 - causes.p_t) * (1.0 - causes.p_u * causes.p_v);
    if (sp_denom > 0.0) {
        idx.sp_index = causes.p_t * (1.0 - causes.p_u) / sp_denom;
    }
    return idx;
}

RiskEquation risk_equation(const PerformanceMetrics& m) {
    const double ppv = require_metric(m.ppv, "ppv");
    const double npv = require_metric(m.npv, "npv");
    const double intercept = 1.0 - npv;
    return RiskEquation{intercept, ppv - intercept};
}

ContingencyTable symmetric_setup_table(const CauseProbabilities& causes) {
    const double miss = (1.0 - causes.p_u) * (1.0 - causes.p_v); // neither U nor V
    const double tp = causes.p_t * (1.0 - miss);
    const double fp = causes.p_t * miss;
    const double fn = (1.0 - causes.p_t) * causes.p_u;
    const double tn = (1.0 - causes.p_t) * (1.0 - causes.p_u);
    return ContingencyTable(tp, fp, fn, tn);
}

} // namespace scc
