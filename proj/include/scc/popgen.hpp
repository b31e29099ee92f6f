#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "scc/rng.hpp"
#include "scc/types.hpp"

namespace scc {

/// Which cause probabilities move between populations.
enum class ScenarioKind {
    vary_t,
    vary_u,
    vary_v,
    vary_tu,
    vary_tv,
    vary_uv,
    vary_all,     ///< all three, with equicorrelated latent logits
    max_entropy,  ///< all three independent uniform on (0,1)
};

/// A population-generating mechanism: which causes vary around a fixed
/// base triple, and for vary_all, how strongly their latent logits are
/// correlated within one population draw.
struct Scenario {
    ScenarioKind kind = ScenarioKind::vary_all;
    double rho = 0.0; ///< latent equicorrelation, used by vary_all only
    CauseProbabilities base{0.25, 0.75, 0.5};

    bool varies_t() const;
    bool varies_u() const;
    bool varies_v() const;

    /// Throws on rho outside [0,1] or a degenerate base.
    void validate() const;
};

/// Addressable randomness: a (master seed, substream index) pair pins an
/// entire draw sequence, independent of evaluation order or threading.
struct SeededStream {
    std::uint64_t master_seed = 0;
    std::uint64_t substream_index = 0;

    rng::Xoshiro256PlusPlus engine() const {
        return rng::Xoshiro256PlusPlus(master_seed, substream_index);
    }

    /// Derived substream; slots 0 and 1 of index i map to 2i and 2i+1.
    SeededStream child(std::uint64_t slot) const {
        return SeededStream{master_seed, 2 * substream_index + slot};
    }
};

/// Applies each odds ratio to exactly the varying components of the base
/// triple. Deterministic counterpart of sample_causes; rejects
/// max_entropy, which has no odds-ratio parameterization.
std::vector<std::pair<double, CauseProbabilities>>
odds_ratio_sweep(const Scenario& scenario, std::span<const double> or_values);

/// Draws one population. Varying components are standard logit-normal,
/// logistic(z) with z ~ N(0,1); fixed components stay at the base. For
/// vary_all the three z share pairwise correlation rho (Cholesky of the
/// equicorrelation matrix; rho = 1 collapses to a single shared z). For
/// max_entropy all components are independent uniform on (0,1).
CauseProbabilities sample_causes(const Scenario& scenario,
                                 const SeededStream& stream);

/// Draws an independent (source, target) pair of populations from the
/// same scenario using child substreams of `stream`.
std::pair<CauseProbabilities, CauseProbabilities>
sample_population_pair(const Scenario& scenario, const SeededStream& stream);

/// logistic(z) = 1/(1+exp(-z)); strictly inside (0,1) for finite z.
double logistic(double z);

/// log(p/(1-p)), the inverse of logistic.
double logit(double p);

} // namespace scc
