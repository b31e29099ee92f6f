#include "scc/transport.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scc {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_unit_interval(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw InvalidProbability(std::string(name) + " must lie in [0,1]");
    }
}

void check_open_interval(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
        throw TargetOutOfRange(std::string(name) + " must lie strictly in (0,1)");
    }
}

void check_nondegenerate(const CauseProbabilities& causes) {
    if (causes.degenerate()) {
        throw DegenerateCauses(
            "all cause probabilities must lie strictly in (0,1) for "
            "odds-ratio shifting");
    }
}

void check_positive_finite(double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw Error(std::string(name) + " must be positive and finite");
    }
}

} // namespace

const char* method_token(TransportMethod method) {
    switch (method) {
    case TransportMethod::predictive_values:
        return "pv";
    case TransportMethod::accuracy:
        return "acc";
    case TransportMethod::proportional_odds:
        return "po";
    }
    return "?";
}

TransportResult transport_by_predictive_values(const PerformanceMetrics& source,
                                               double target_p_t) {
    check_unit_interval(target_p_t, "target_p_t");
    const double ppv = require_metric(source.ppv, "ppv");
    const double npv = require_metric(source.npv, "npv");
    const double tp = target_p_t * ppv;
    const double fp = target_p_t * (1.0 - ppv);
    const double fn = (1.0 - target_p_t) * (1.0 - npv);
    const double tn = (1.0 - target_p_t) * npv;
    return TransportResult{
        ContingencyTable(tp, fp, fn, tn),
        TransportMethod::predictive_values,
        std::nullopt,
        TargetInput{TargetInput::Kind::marker_positivity, target_p_t}};
}

TransportResult transport_by_accuracy(const PerformanceMetrics& source,
                                      double target_prevalence) {
    check_unit_interval(target_prevalence, "target_prevalence");
    const double se = require_metric(source.se, "se");
    const double sp = require_metric(source.sp, "sp");
    const double tp = target_prevalence * se;
    const double fn = target_prevalence * (1.0 - se);
    const double fp = (1.0 - target_prevalence) * (1.0 - sp);
    const double tn = (1.0 - target_prevalence) * sp;
    return TransportResult{
        ContingencyTable(tp, fp, fn, tn),
        TransportMethod::accuracy,
        std::nullopt,
        TargetInput{TargetInput::Kind::prevalence, target_prevalence}};
}

LogitAdjustment logit_adjustment_check(const PerformanceMetrics& source,
                                       double target_prevalence) {
    const double se = require_metric(source.se, "se");
    const double sp = require_metric(source.sp, "sp");
    if (se == 0.0 || se == 1.0 || sp == 0.0 || sp == 1.0) {
        throw DegenerateAccuracy(
            "se and sp must lie strictly in (0,1): a likelihood ratio of 0 "
            "or infinity has no logit");
    }
    check_open_interval(target_prevalence, "target_prevalence");

    LogitAdjustment adj{};
    adj.positive_lr = se / (1.0 - sp);
    adj.negative_lr = (1.0 - se) / sp;
    // Work on the odds scale; adding log(LR) to the logit is the same as
    // multiplying the prevalence odds by the LR.
    const double prior_odds = target_prevalence / (1.0 - target_prevalence);
    const double pos_odds = prior_odds * adj.positive_lr;
    const double neg_odds = prior_odds * adj.negative_lr;
    adj.adjusted_ppv = pos_odds / (1.0 + pos_odds);
    adj.adjusted_one_minus_npv = neg_odds / (1.0 + neg_odds);
    return adj;
}

double apply_odds_ratio(double p, double x) {
    check_unit_interval(p, "p");
    check_positive_finite(x, "odds ratio x");
    return p * x / (1.0 - p + p * x);
}

CauseProbabilities apply_odds_ratio(const CauseProbabilities& causes, double x) {
    return CauseProbabilities(apply_odds_ratio(causes.p_t, x),
                              apply_odds_ratio(causes.p_u, x),
                              apply_odds_ratio(causes.p_v, x));
}

double proportional_odds_objective(const CauseProbabilities& causes, double x) {
    check_nondegenerate(causes);
    check_positive_finite(x, "odds ratio x");
    return prevalence_from_causes(apply_odds_ratio(causes, x));
}

double solve_common_odds_ratio(const CauseProbabilities& causes,
                               double target_prevalence, double tol) {
    check_nondegenerate(causes);
    check_open_interval(target_prevalence, "target_prevalence");
    check_positive_finite(tol, "tol");

    const auto f = [&](double x) {
        return prevalence_from_causes(apply_odds_ratio(causes, x));
    };

    // Bracket the root by geometric expansion away from the identity.
    double lo = 1.0;
    double hi = 1.0;
    const double f1 = f(1.0);
    if (f1 == target_prevalence) {
        return 1.0;
    }
    constexpr int kMaxExpansions = 64;
    constexpr double kExpansionFactor = 4.0;
    if (f1 < target_prevalence) {
        int i = 0;
        do {
            if (++i > kMaxExpansions) {
                throw SolverFailure("failed to bracket the odds ratio above x=1");
            }
            hi *= kExpansionFactor;
        } while (f(hi) < target_prevalence);
    } else {
        int i = 0;
        do {
            if (++i > kMaxExpansions) {
                throw SolverFailure("failed to bracket the odds ratio below x=1");
            }
            lo /= kExpansionFactor;
        } while (f(lo) > target_prevalence);
    }

    // Bisection on a strictly increasing objective. Runs past the
    // prevalence tolerance until the bracket itself is tight, so the
    // returned x is accurate to ~1e-13 relative, not just tol in f.
    constexpr int kMaxIterations = 200;
    constexpr double kRelWidth = 1e-13;
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < kMaxIterations; ++i) {
        mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break; // bracket narrowed to adjacent floats
        }
        const double fm = f(mid);
        if (fm < target_prevalence) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (std::abs(fm - target_prevalence) <= tol && hi - lo <= kRelWidth * mid) {
            return mid;
        }
    }
    if (std::abs(f(mid) - target_prevalence) <= tol) {
        return mid;
    }
    throw SolverFailure("bisection did not reach the prevalence tolerance");
}

CubicCoefficients cubic_coefficients(const CauseProbabilities& causes,
                                     double target_prevalence) {
    check_nondegenerate(causes);
    check_open_interval(target_prevalence, "target_prevalence");
    const double pt = causes.p_t;
    const double pu = causes.p_u;
    const double pv = causes.p_v;
    const double pi = target_prevalence;
    const double tuv = pt * pu * pv;
    CubicCoefficients q{};
    q.a = (1.0 - pi) * tuv;
    q.b = (3.0 * pi - 2.0) * tuv - pi * (pt * pu + pt * pv + pu * pv) + pt * pu +
          pu * pv;
    q.c = -pi * (3.0 * tuv - 2.0 * pt * pu - 2.0 * pt * pv - 2.0 * pu * pv + pt +
                 pu + pv);
    q.d = -pi * (1.0 - pt) * (1.0 - pu) * (1.0 - pv);
    return q;
}

double positive_cubic_root(const CubicCoefficients& q) {
    if (!(q.a > 0.0) || !(q.d < 0.0)) {
        throw SolverFailure("cubic is not in the a > 0, d < 0 form that "
                            "guarantees a positive root");
    }
    // Reduce to the depressed cubic t^3 + p*t + r via x = t - B/3.
    const double B = q.b / q.a;
    const double C = q.c / q.a;
    const double D = q.d / q.a;
    const double p = C - B * B / 3.0;
    const double r = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
    const double shift = -B / 3.0;
    const double disc = r * r / 4.0 + p * p * p / 27.0;

    double root = -1.0;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        const double t = std::cbrt(-r / 2.0 + s) + std::cbrt(-r / 2.0 - s);
        root = t + shift;
    } else {
        // Three real roots; exactly one can be positive here.
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * r / (p * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            const double t = m * std::cos(theta - 2.0 * kPi * k / 3.0);
            const double x = t + shift;
            if (x > 0.0 && x > root) {
                root = x;
            }
        }
    }
    if (!(root > 0.0) || !std::isfinite(root)) {
        throw SolverFailure("no positive real root found for the cubic");
    }
    // Newton polish to machine precision; closed forms lose a few digits.
    for (int i = 0; i < 4; ++i) {
        const double value = q.eval(root);
        const double slope = (3.0 * q.a * root + 2.0 * q.b) * root + q.c;
        if (slope == 0.0) {
            break;
        }
        const double next = root - value / slope;
        if (!(next > 0.0) || !std::isfinite(next)) {
            break;
        }
        root = next;
    }
    return root;
}

TransportResult transport_proportional_odds(const CauseProbabilities& source,
                                            double target_prevalence,
                                            double tol) {
    const double x = solve_common_odds_ratio(source, target_prevalence, tol);
    const CauseProbabilities shifted = apply_odds_ratio(source, x);
    return TransportResult{
        causes_to_table(shifted),
        TransportMethod::proportional_odds,
        x,
        TargetInput{TargetInput::Kind::prevalence, target_prevalence}};
}

} // namespace scc
