#include "noma_uav/random.hpp"

#include <cmath>

namespace noma_uav {

Rng make_stream(std::uint64_t run_seed, std::uint64_t uav_id, StreamPurpose purpose)
{
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(run_seed), hi(run_seed), lo(uav_id), hi(uav_id),
                    static_cast<std::uint32_t>(purpose)};
  return Rng(seq);
}

double uniform01(Rng& rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(Rng& rng, double lo, double hi)
{
  return lo + (hi - lo) * uniform01(rng);
}

double unit_exponential(Rng& rng)
{
  // 1 - u lies in (0, 1], so the log is finite and the result is >= 0; exclude
  // the exact zero so gains stay strictly positive.
  double x = 0.0;
  do {
    x = -std::log1p(-uniform01(rng));
  } while (x <= 0.0);
  return x;
}

} // namespace noma_uav
