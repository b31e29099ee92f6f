#pragma once

#include <stdexcept>
#include <string>

namespace scc {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A probability argument lies outside [0,1] (or is NaN).
class InvalidProbability : public Error {
public:
    explicit InvalidProbability(const std::string& msg)
        : Error("InvalidProbability: " + msg) {}
};

/// Contingency-table cells violate the joint-distribution invariants.
class InvalidTable : public Error {
public:
    explicit InvalidTable(const std::string& msg)
        : Error("InvalidTable: " + msg) {}
};

/// Marker positivity TP+FP is zero, so P_U cannot be recovered.
class DegenerateMarker : public Error {
public:
    explicit DegenerateMarker(const std::string& msg)
        : Error("DegenerateMarker: " + msg) {}
};

/// P_V is undefined (zero denominator) or exceeds 1, meaning the table
/// cannot arise from independent causes in this outcome model.
class DegenerateUniversalCause : public Error {
public:
    explicit DegenerateUniversalCause(const std::string& msg)
        : Error("DegenerateUniversalCause: " + msg) {}
};

/// A required performance metric is undefined (zero denominator).
class UndefinedMetric : public Error {
public:
    explicit UndefinedMetric(const std::string& msg)
        : Error("UndefinedMetric: " + msg) {}
};

/// A stability index is undefined for these cause probabilities.
class UndefinedIndex : public Error {
public:
    explicit UndefinedIndex(const std::string& msg)
        : Error("UndefinedIndex: " + msg) {}
};

/// Sensitivity or specificity sits at 0 or 1, so likelihood ratios are
/// zero or infinite and the logit adjustment is unusable.
class DegenerateAccuracy : public Error {
public:
    explicit DegenerateAccuracy(const std::string& msg)
        : Error("DegenerateAccuracy: " + msg) {}
};

/// A cause probability sits at 0 or 1 where an odds-ratio shift needs
/// the open interval.
class DegenerateCauses : public Error {
public:
    explicit DegenerateCauses(const std::string& msg)
        : Error("DegenerateCauses: " + msg) {}
};

/// Target prevalence outside the attainable open interval (0,1).
class TargetOutOfRange : public Error {
public:
    explicit TargetOutOfRange(const std::string& msg)
        : Error("TargetOutOfRange: " + msg) {}
};

/// Scenario not usable with the requested operation.
class UnsupportedScenario : public Error {
public:
    explicit UnsupportedScenario(const std::string& msg)
        : Error("UnsupportedScenario: " + msg) {}
};

/// The root finder failed to bracket or converge. Distinct from the
/// validation errors above: callers map this to a numeric-failure exit.
class SolverFailure : public Error {
public:
    explicit SolverFailure(const std::string& msg)
        : Error("SolverFailure: " + msg) {}
};

} // namespace scc
