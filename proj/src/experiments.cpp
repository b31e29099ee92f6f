#include "scc/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace scc {

namespace {

// Linearly interpolated quantile of a sorted sample (the usual "type 7").
double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) {
        return std::nan("");
    }
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t idx = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(idx);
    if (idx + 1 < sorted.size()) {
        return sorted[idx] * (1.0 - frac) + sorted[idx + 1] * frac;
    }
    return sorted[idx];
}

WorkedExampleRow make_row(std::string description, const CauseProbabilities& c,
                          const ContingencyTable& table,
                          std::optional<double> fitted_or = std::nullopt) {
    return WorkedExampleRow{std::move(description), c, table, metrics(table),
                            fitted_or};
}

} // namespace

std::vector<WorkedExampleRow> reproduce_worked_example() {
    const CauseProbabilities source(0.25, 0.75, 0.5);
    const CauseProbabilities target(1.0 / 3.0, 0.8, 2.0 / 3.0);
    const ContingencyTable source_table = causes_to_table(source);
    const ContingencyTable target_table = causes_to_table(target);
    const PerformanceMetrics source_metrics = metrics(source_table);
    const double target_prev = prevalence_from_causes(target);

    const TransportResult pv =
        transport_by_predictive_values(source_metrics, target.p_t);
    const TransportResult acc =
        transport_by_accuracy(source_metrics, target_prev);
    const TransportResult po =
        transport_proportional_odds(source, target_prev);

    std::vector<WorkedExampleRow> rows;
    rows.push_back(make_row("Source population", source, source_table));
    rows.push_back(make_row("Target population", target, target_table));
    rows.push_back(make_row("By predictive values",
                            table_to_causes(pv.implied_table), pv.implied_table));
    rows.push_back(make_row("By accuracy", table_to_causes(acc.implied_table),
                            acc.implied_table));
    rows.push_back(make_row("Proportional odds",
                            table_to_causes(po.implied_table), po.implied_table,
                            po.fitted_odds_ratio));
    return rows;
}

std::vector<SweepRow> prevalence_sweep(const Scenario& scenario,
                                       std::span<const double> or_grid) {
    const auto shifted = odds_ratio_sweep(scenario, or_grid);
    std::vector<SweepRow> rows;
    rows.reserve(shifted.size());
    for (const auto& [odds_ratio, causes] : shifted) {
        const ContingencyTable table = causes_to_table(causes);
        const PerformanceMetrics m = metrics(table);
        rows.push_back(SweepRow{odds_ratio, m.prevalence,
                                require_metric(m.se, "se"),
                                require_metric(m.sp, "sp"),
                                require_metric(m.ppv, "ppv"),
                                require_metric(m.npv, "npv")});
    }
    return rows;
}

std::vector<double> log_spaced_grid(double or_min, double or_max, int steps) {
    if (!(or_min > 0.0) || !(or_max > 0.0) || !std::isfinite(or_min) ||
        !std::isfinite(or_max)) {
        throw Error("odds-ratio grid bounds must be positive and finite");
    }
    if (or_max < or_min) {
        throw Error("odds-ratio grid needs or_min <= or_max");
    }
    if (steps < 1) {
        throw Error("odds-ratio grid needs at least one step");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(steps));
    if (steps == 1) {
        grid.push_back(or_min);
        return grid;
    }
    const double log_min = std::log(or_min);
    const double log_max = std::log(or_max);
    for (int i = 0; i < steps; ++i) {
        const double w = static_cast<double>(i) / static_cast<double>(steps - 1);
        grid.push_back(std::exp(log_min + w * (log_max - log_min)));
    }
    return grid;
}

SimResult information_loss_sim(const Scenario& scenario, std::int64_t n_pairs,
                               std::uint64_t master_seed) {
    scenario.validate();
    if (n_pairs < 1) {
        throw Error("information_loss_sim needs n_pairs >= 1");
    }

    constexpr TransportMethod kMethods[3] = {TransportMethod::predictive_values,
                                             TransportMethod::accuracy,
                                             TransportMethod::proportional_odds};
    SimResult result;
    result.records.reserve(static_cast<std::size_t>(n_pairs) * 3);
    std::vector<std::vector<double>> finite_bits(3);
    std::int64_t n_infinite[3] = {0, 0, 0};
    std::int64_t n_skipped[3] = {0, 0, 0};

    for (std::int64_t i = 0; i < n_pairs; ++i) {
        const SeededStream pair_stream{master_seed,
                                       static_cast<std::uint64_t>(i)};
        const auto [source, target] =
            sample_population_pair(scenario, pair_stream);
        const ContingencyTable target_table = causes_to_table(target);
        const PerformanceMetrics source_metrics =
            metrics(causes_to_table(source));
        const double target_prev = prevalence_from_causes(target);

        for (int m = 0; m < 3; ++m) {
            std::optional<TransportResult> transported;
            try {
                switch (kMethods[m]) {
                case TransportMethod::predictive_values:
                    transported =
                        transport_by_predictive_values(source_metrics, target.p_t);
                    break;
                case TransportMethod::accuracy:
                    transported =
                        transport_by_accuracy(source_metrics, target_prev);
                    break;
                case TransportMethod::proportional_odds:
                    transported = transport_proportional_odds(source, target_prev);
                    break;
                }
            } catch (const Error&) {
                // Degenerate draw for this method; count it and move on.
                ++n_skipped[m];
                continue;
            }
            const DivergenceBits d =
                kl_divergence(target_table, transported->implied_table);
            result.records.push_back(SimRecord{i, kMethods[m], d.value,
                                               target_prev,
                                               transported->fitted_odds_ratio});
            if (d.is_finite()) {
                finite_bits[m].push_back(d.value);
            } else {
                ++n_infinite[m];
            }
        }
    }

    for (int m = 0; m < 3; ++m) {
        MethodSummary s;
        s.method = kMethods[m];
        s.n = static_cast<std::int64_t>(finite_bits[m].size()) + n_infinite[m];
        s.n_infinite = n_infinite[m];
        s.n_skipped = n_skipped[m];
        auto& values = finite_bits[m];
        std::sort(values.begin(), values.end());
        double sum = 0.0;
        for (double v : values) {
            sum += v;
        }
        s.mean_bits = values.empty() ? std::nan("")
                                     : sum / static_cast<double>(values.size());
        s.median_bits = quantile_sorted(values, 0.5);
        s.p25_bits = quantile_sorted(values, 0.25);
        s.p75_bits = quantile_sorted(values, 0.75);
        result.summary.push_back(s);
    }
    return result;
}

} // namespace scc
