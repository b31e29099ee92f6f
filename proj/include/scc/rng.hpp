#pragma once

#include <array>
#include <cstdint>

namespace scc::rng {

// Generator scheme "v1", pinned for reproducibility. A (master seed,
// substream index) pair fully determines the draw sequence, so any pair
// of indices can be evaluated in any order or thread and still produce
// identical results:
//
//   state0   = master_seed XOR (substream_index + 1) * 0xD1B54A32D192ED03
//   state[i] = splitmix64(state0 advanced i+1 times),  i = 0..3
//   engine   = xoshiro256++ over state[0..3]
//
// Uniforms take the top 52 bits plus a half-ulp offset, giving doubles
// strictly inside (0,1). Normals are the inverse normal CDF (Wichura's
// PPND16 rational approximations) applied to one uniform each.

/// Advances a SplitMix64 state and returns the next output.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// xoshiro256++ with substream seeding as described above.
class Xoshiro256PlusPlus {
public:
    Xoshiro256PlusPlus(std::uint64_t master_seed, std::uint64_t substream_index);

    std::uint64_t next();

    /// Uniform double in the open interval (0,1).
    double uniform_open01();

    /// Standard normal deviate via the inverse CDF of uniform_open01().
    double standard_normal();

private:
    std::array<std::uint64_t, 4> state_;
};

/// Inverse of the standard normal CDF, accurate to roughly 1e-16 relative
/// for p in (0,1).
double inverse_normal_cdf(double p);

} // namespace scc::rng
