#pragma once

#include <cstdint>
#include <random>

namespace gocoexist {

/// One independent pseudo-random stream. Not thread-safe; give each thread
/// its own stream.
using RngStream = std::mt19937_64;

/// Purpose tags for stream derivation. Every random quantity in a run is drawn
/// from a stream keyed by (master seed, tag, index...), so results do not
/// depend on evaluation order or thread count.
enum class StreamTag : std::uint64_t {
  channel = 1,
  compute_delay = 2,
  batch_difficulty = 3,
  packet_errors = 4,
  validation = 5,
  oracle_table = 6,
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stream-splitting rule: seed = mix(mix(mix(master ^ tag) + a) + b), with a
/// golden-ratio increment between stages.
std::uint64_t derive_seed(std::uint64_t master, StreamTag tag, std::uint64_t a = 0,
                          std::uint64_t b = 0) noexcept;

RngStream make_stream(std::uint64_t master, StreamTag tag, std::uint64_t a = 0,
                      std::uint64_t b = 0);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(RngStream& rng) noexcept;

}  // namespace gocoexist
