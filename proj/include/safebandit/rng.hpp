#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace safebandit {

/// Deterministic random stream. Identical seeds give identical draw sequences
/// on every platform: only the raw engine output is used, never the
/// implementation-defined std:: distributions.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1); never returns 0, for use under logarithms.
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via the Marsaglia polar method.
  double normal();

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  has_spare_ = true;
  return u * m;
}

/// SplitMix64 finalizer; used to derive independent seeds from counters.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// FNV-1a; stable across compilers, unlike std::hash.
constexpr std::uint64_t stable_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed for one (agent, trial, purpose) triple. Keyed on the agent label so
/// adding or reordering agents never perturbs another agent's streams.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view agent_id,
                                    std::uint64_t trial_index, std::uint64_t purpose) {
  std::uint64_t h = mix64(base_seed ^ stable_hash(agent_id));
  h = mix64(h ^ trial_index);
  return mix64(h ^ (purpose * 0xd6e8feb86659fd93ULL));
}

}  // namespace safebandit
