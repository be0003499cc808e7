/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cmath>
#include <cstdint>

namespace hetx {

// All randomness in the library flows through this self-contained generator so
// that results are bit-identical across platforms and thread counts. Streams
// are derived from a (master seed, stream index) pair; evaluation order never
// matters.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Collision-resistant derivation of a per-stream seed from (master, index).
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t state = master ^ (0x9E3779B97F4A7C15ull * (index + 1));
  std::uint64_t a = splitmix64(state);
  std::uint64_t b = splitmix64(state);
  return a ^ (b >> 1);
}

// xoshiro256** (Blackman/Vigna), seeded through splitmix64.
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t st = seed;
    for (auto& w : s_) w = splitmix64(st);
    has_normal_ = false;
    cached_normal_ = 0.0;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on the open interval (0,1); never returns 0 or 1.
  double uniform_open() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  // Standard normal via Box-Muller; consumes exactly two uniforms per pair.
  double normal() {
    if (has_normal_) {
      has_normal_ = false;
      return cached_normal_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    cached_normal_ = radius * std::sin(angle);
    has_normal_ = true;
    return radius * std::cos(angle);
  }

  double rademacher() { return (next_u64() & 1ull) ? 1.0 : -1.0; }

  // Frechet(1) via inverse c.d.f.; the open-interval uniform keeps it finite.
  double frechet1() { return -1.0 / std::log(uniform_open()); }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
  bool has_normal_;
  double cached_normal_;
};

inline Rng make_stream(std::uint64_t master, std::uint64_t index) {
  return Rng(derive_stream_seed(master, index));
}

} // namespace hetx
