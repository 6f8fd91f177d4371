#include "gocoexist/rng.hpp"

namespace gocoexist {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, StreamTag tag, std::uint64_t a,
                          std::uint64_t b) noexcept {
  std::uint64_t s = mix64(master ^ (static_cast<std::uint64_t>(tag) * kGolden));
  s = mix64(s + a * kGolden + 1);
  s = mix64(s + b * kGolden + 2);
  return s;
}

RngStream make_stream(std::uint64_t master, StreamTag tag, std::uint64_t a, std::uint64_t b) {
  return RngStream(derive_seed(master, tag, a, b));
}

double uniform01(RngStream& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace gocoexist
