#pragma once

// Seed derivation and the random engines used by every sampler.
//
// Output is bit-stable across compilers and standard libraries: the engine is
// xoshiro256++ and normals come from the Marsaglia polar method, so nothing
// here depends on implementation-defined std:: distributions.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace hdvar {

/// SplitMix64 output function.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Identifies one independent random stream.
///
/// The derived seed depends only on the three fields, so results do not
/// depend on which thread (or in which order) a replication is evaluated.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::string scenario_id;
  std::uint64_t replication_index = 0;

  [[nodiscard]] std::uint64_t stream_seed() const noexcept {
    std::uint64_t s = splitmix64_mix(master_seed);
    s = splitmix64_mix(s ^ fnv1a64(scenario_id));
    s = splitmix64_mix(s ^ (replication_index + 0x9E3779B97F4A7C15ULL));
    return s;
  }

  /// Same master seed and index, label extended with "/suffix".
  [[nodiscard]] SeedSpec sub(std::string_view suffix) const {
    SeedSpec out = *this;
    out.scenario_id.append("/").append(suffix);
    return out;
  }

  [[nodiscard]] SeedSpec with_index(std::uint64_t r) const {
    SeedSpec out = *this;
    out.replication_index = r;
    return out;
  }
};

/// xoshiro256++ (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(std::uint64_t seed) noexcept {
    std::uint64_t x = seed;
    for (auto& w : s_) {
      x += 0x9E3779B97F4A7C15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      w = z ^ (z >> 31);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

/// Standard normal stream for one SeedSpec.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) noexcept : engine_(seed) {}
  explicit NormalStream(const SeedSpec& spec) noexcept
      : engine_(spec.stream_seed()) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Marsaglia polar method; the second variate of each pair is cached.
  double normal() noexcept {
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
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  double operator()() noexcept { return normal(); }

 private:
  Xoshiro256pp engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hdvar
