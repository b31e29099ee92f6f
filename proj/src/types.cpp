#include "scc/types.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace scc {

namespace {

std::string short_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

bool in_unit_interval(double v) {
    // NaN fails both comparisons.
    return v >= 0.0 && v <= 1.0;
}

} // namespace

ContingencyTable::ContingencyTable(double tp_, double fp_, double fn_, double tn_)
    : tp(tp_), fp(fp_), fn(fn_), tn(tn_) {
    const double cells[4] = {tp, fp, fn, tn};
    const char* names[4] = {"tp", "fp", "fn", "tn"};
    for (int i = 0; i < 4; ++i) {
        if (!(cells[i] >= 0.0) || !(cells[i] <= 1.0 + kRenormTolerance)) {
            throw InvalidTable(std::string(names[i]) + " = " + short_num(cells[i]) +
                               " is outside [0,1]");
        }
    }
    const double sum = tp + fp + fn + tn;
    const double deviation = std::abs(sum - 1.0);
    if (deviation > kRenormTolerance) {
        throw InvalidTable("cells sum to " + short_num(sum) +
                           " (must be 1 within " + short_num(kRenormTolerance) + ")");
    }
    if (deviation > kSumTolerance || tp > 1.0 || fp > 1.0 || fn > 1.0 || tn > 1.0) {
        tp /= sum;
        fp /= sum;
        fn /= sum;
        tn /= sum;
    }
}

CauseProbabilities::CauseProbabilities(double p_t_, double p_u_, double p_v_)
    : p_t(p_t_), p_u(p_u_), p_v(p_v_) {
    const double values[3] = {p_t, p_u, p_v};
    const char* names[3] = {"p_t", "p_u", "p_v"};
    for (int i = 0; i < 3; ++i) {
        if (!in_unit_interval(values[i])) {
            throw InvalidProbability(std::string(names[i]) + " = " +
                                     short_num(values[i]) + " is outside [0,1]");
        }
    }
}

bool CauseProbabilities::degenerate() const {
    return p_t == 0.0 || p_t == 1.0 || p_u == 0.0 || p_u == 1.0 || p_v == 0.0 ||
           p_v == 1.0;
}

double require_metric(const std::optional<double>& metric, const char* name) {
    if (!metric) {
        throw UndefinedMetric(std::string(name) + " is undefined (zero denominator)");
    }
    return *metric;
}

double StabilityIndices::require_se_index() const {
    if (!se_index) {
        throw UndefinedIndex("se_index is undefined (requires p_t > 0)");
    }
    return *se_index;
}

double StabilityIndices::require_sp_index() const {
    if (!sp_index) {
        throw UndefinedIndex("sp_index is undefined (requires p_t < 1 and p_u*p_v < 1)");
    }
    return *sp_index;
}

} // namespace scc
