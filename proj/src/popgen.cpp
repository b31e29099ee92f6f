#include "scc/popgen.hpp"

#include <array>
#include <cmath>

#include "scc/transport.hpp"

namespace scc {

namespace {

// Lower Cholesky factor of the 3x3 equicorrelation matrix, positive
// definite for rho in [0,1).
std::array<std::array<double, 3>, 3> equicorrelation_cholesky(double rho) {
    std::array<std::array<double, 3>, 3> lower{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = (i == j) ? 1.0 : rho;
            for (std::size_t k = 0; k < j; ++k) {
                sum -= lower[i][k] * lower[j][k];
            }
            if (i == j) {
                lower[i][j] = std::sqrt(sum);
            } else {
                lower[i][j] = sum / lower[j][j];
            }
        }
    }
    return lower;
}

} // namespace

bool Scenario::varies_t() const {
    switch (kind) {
    case ScenarioKind::vary_t:
    case ScenarioKind::vary_tu:
    case ScenarioKind::vary_tv:
    case ScenarioKind::vary_all:
    case ScenarioKind::max_entropy:
        return true;
    default:
        return false;
    }
}

bool Scenario::varies_u() const {
    switch (kind) {
    case ScenarioKind::vary_u:
    case ScenarioKind::vary_tu:
    case ScenarioKind::vary_uv:
    case ScenarioKind::vary_all:
    case ScenarioKind::max_entropy:
        return true;
    default:
        return false;
    }
}

bool Scenario::varies_v() const {
    switch (kind) {
    case ScenarioKind::vary_v:
    case ScenarioKind::vary_tv:
    case ScenarioKind::vary_uv:
    case ScenarioKind::vary_all:
    case ScenarioKind::max_entropy:
        return true;
    default:
        return false;
    }
}

void Scenario::validate() const {
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw InvalidProbability("scenario rho must lie in [0,1]");
    }
    if (base.degenerate()) {
        throw DegenerateCauses("scenario base must lie strictly inside (0,1)^3");
    }
}

std::vector<std::pair<double, CauseProbabilities>>
odds_ratio_sweep(const Scenario& scenario, std::span<const double> or_values) {
    scenario.validate();
    if (scenario.kind == ScenarioKind::max_entropy) {
        throw UnsupportedScenario(
            "max_entropy has no odds-ratio parameterization to sweep");
    }
    std::vector<std::pair<double, CauseProbabilities>> rows;
    rows.reserve(or_values.size());
    for (double odds_ratio : or_values) {
        const double t = scenario.varies_t()
                             ? apply_odds_ratio(scenario.base.p_t, odds_ratio)
                             : scenario.base.p_t;
        const double u = scenario.varies_u()
                             ? apply_odds_ratio(scenario.base.p_u, odds_ratio)
                             : scenario.base.p_u;
        const double v = scenario.varies_v()
                             ? apply_odds_ratio(scenario.base.p_v, odds_ratio)
                             : scenario.base.p_v;
        rows.emplace_back(odds_ratio, CauseProbabilities(t, u, v));
    }
    return rows;
}

CauseProbabilities sample_causes(const Scenario& scenario,
                                 const SeededStream& stream) {
    scenario.validate();
    auto engine = stream.engine();

    if (scenario.kind == ScenarioKind::max_entropy) {
        const double t = engine.uniform_open01();
        const double u = engine.uniform_open01();
        const double v = engine.uniform_open01();
        return CauseProbabilities(t, u, v);
    }

    if (scenario.kind == ScenarioKind::vary_all) {
        std::array<double, 3> z{};
        if (scenario.rho == 1.0) {
            // Rank-one case: one latent deviate drives all three causes.
            z.fill(engine.standard_normal());
        } else {
            std::array<double, 3> w{};
            for (auto& wi : w) {
                wi = engine.standard_normal();
            }
            const auto lower = equicorrelation_cholesky(scenario.rho);
            for (std::size_t i = 0; i < 3; ++i) {
                double zi = 0.0;
                for (std::size_t k = 0; k <= i; ++k) {
                    zi += lower[i][k] * w[k];
                }
                z[i] = zi;
            }
        }
        return CauseProbabilities(logistic(z[0]), logistic(z[1]), logistic(z[2]));
    }

    // Partial scenarios: draws consumed in T, U, V order.
    const double t = scenario.varies_t() ? logistic(engine.standard_normal())
                                         : scenario.base.p_t;
    const double u = scenario.varies_u() ? logistic(engine.standard_normal())
                                         : scenario.base.p_u;
    const double v = scenario.varies_v() ? logistic(engine.standard_normal())
                                         : scenario.base.p_v;
    return CauseProbabilities(t, u, v);
}

std::pair<CauseProbabilities, CauseProbabilities>
sample_population_pair(const Scenario& scenario, const SeededStream& stream) {
    return {sample_causes(scenario, stream.child(0)),
            sample_causes(scenario, stream.child(1))};
}

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double logit(double p) { return std::log(p / (1.0 - p)); }

} // namespace scc
