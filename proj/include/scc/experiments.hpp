#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scc/divergence.hpp"
#include "scc/popgen.hpp"
#include "scc/transport.hpp"

namespace scc {

/// One row of the five-population worked example: a population (given or
/// implied), its table and its performance metrics.
struct WorkedExampleRow {
    std::string description;
    CauseProbabilities causes;
    ContingencyTable table;
    PerformanceMetrics performance;
    std::optional<double> fitted_odds_ratio;
};

/// Recomputes the worked example from first principles: a source
/// population {0.25, 0.75, 0.5}, a target {1/3, 0.8, 2/3}, and the three
/// transports of the source marker into the target (predictive values
/// take the target's P_T; accuracy and proportional odds its prevalence).
std::vector<WorkedExampleRow> reproduce_worked_example();

/// One grid point of an odds-ratio sweep with the downstream metrics.
struct SweepRow {
    double odds_ratio;
    double prevalence;
    double se;
    double sp;
    double ppv;
    double npv;
};

/// Shifts the scenario's varying causes by each odds ratio and evaluates
/// the table and metrics. Rows come back in grid order; prevalence is
/// strictly increasing in the odds ratio whenever any cause varies.
std::vector<SweepRow> prevalence_sweep(const Scenario& scenario,
                                       std::span<const double> or_grid);

/// Log-spaced grid from or_min to or_max inclusive with `steps` points.
std::vector<double> log_spaced_grid(double or_min, double or_max, int steps);

/// Information loss of one transport method on one simulated pair.
struct SimRecord {
    std::int64_t pair_index;
    TransportMethod method;
    double d_kl_bits; ///< nonnegative, may be +infinity
    double target_prevalence;
    std::optional<double> fitted_or;
};

/// Per-method summary over a simulation run. Statistics cover the finite
/// divergences only; infinite and skipped draws are counted separately
/// (n + n_skipped equals the number of pairs).
struct MethodSummary {
    TransportMethod method;
    std::int64_t n = 0;          ///< scored records (finite or infinite)
    std::int64_t n_infinite = 0;
    std::int64_t n_skipped = 0;  ///< degenerate draws, recorded not fatal
    double mean_bits = 0.0;
    double median_bits = 0.0;
    double p25_bits = 0.0;
    double p75_bits = 0.0;
};

struct SimResult {
    std::vector<SimRecord> records; ///< ordered by pair index, then method
    std::vector<MethodSummary> summary;
};

/// Draws n_pairs independent (source, target) populations, transports the
/// source marker into each target by all three methods, and scores each
/// implied table against the true target table with the KL divergence.
/// Fully reproducible from the master seed.
SimResult information_loss_sim(const Scenario& scenario, std::int64_t n_pairs,
                               std::uint64_t master_seed);

} // namespace scc
