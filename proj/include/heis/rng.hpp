#pragma once

// Reproducible random streams. Every consumer derives its own stream from
// the root seed and a stream id, so results never depend on how work is
// scheduled across threads.

#include <cstdint>
#include <random>

namespace heis {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  return splitmix64(splitmix64(root) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Stream ids used across the library.
enum class Stream : std::uint64_t {
  kBallTemplate = 1,
  kDomain = 2,
  kSweep = 3,
  kCompetitors = 4,
  kMonotonicity = 5,
  kProjectionSup = 6,
  kDomination = 7,
  kGradient = 8,
};

class Rng {
public:
  Rng(std::uint64_t root, std::uint64_t stream) : engine_(derive_seed(root, stream)) {}
  Rng(std::uint64_t root, Stream stream) : Rng(root, static_cast<std::uint64_t>(stream)) {}

  // Uniform on [0, 1) from the top 53 bits; identical on every platform
  // (std::uniform_real_distribution is not).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t next() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

}  // namespace heis
