#pragma once

#include <cstdint>
#include <random>

namespace noma_uav {

using Rng = std::mt19937_64;

/// Purpose tag mixed into the seed so every (UAV, purpose) pair gets its own stream.
enum class StreamPurpose : std::uint32_t {
  mobility = 1,
  fading = 2,
};

/// Independent generator for one UAV and purpose, derived from the run seed.
/// Schemes compared on the same seed therefore see identical trajectories and fading.
Rng make_stream(std::uint64_t run_seed, std::uint64_t uav_id, StreamPurpose purpose);

// The distributions below are written out instead of using <random>'s adaptors
// because those are implementation-defined; CSV output must be identical across
// standard libraries for the same seed.

/// Uniform on [0, 1) with 53 random bits.
double uniform01(Rng& rng);

/// Uniform on [lo, hi).
double uniform(Rng& rng, double lo, double hi);

/// Unit-mean exponential variate, strictly positive.
double unit_exponential(Rng& rng);

} // namespace noma_uav
