#pragma once

#include <cstdint>

namespace gtbound {

/// Counter-based seed derivation (SplitMix64 finaliser) so each chunk or
/// trial gets an independent stream regardless of which thread runs it.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (a + 1) + 0xBF58476D1CE4E5B9ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Execution policy for the data-parallel kernels. `serial` runs the
/// reference loop; both produce bit-identical results.
enum class Exec { serial, parallel };

int max_threads();
/// Applies GTBOUND_THREADS from the environment when set; returns the
/// thread count in effect.
int configure_threads_from_env();

}  // namespace gtbound
