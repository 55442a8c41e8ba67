// Deterministic seeded random streams.
//
// Every stochastic quantity in the library is drawn from a stream derived
// from (seed, indices..., label) by a SplitMix64-style avalanche. Distinct
// labels or indices give statistically independent streams, and a stream's
// output depends only on its key, never on scheduling or thread count.

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <string_view>

namespace cgpoly {

// SplitMix64 finalizer (Stafford mix13). Full-avalanche 64-bit mixing.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

constexpr std::uint64_t hash_label(std::string_view label) {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// SplitMix64 output sequence from a mixed 64-bit state.
class RngStream {
  public:
    explicit RngStream(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform on the open interval (0,1); never returns an endpoint, so
    // log() and inverse-CDF transforms are always finite.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard exponential.
    double exponential() { return -std::log(uniform01()); }

    // Standard normal, Box-Muller cosine branch (two uniforms per draw).
    double normal() {
        const double u = uniform01();
        const double v = uniform01();
        return std::sqrt(-2.0 * std::log(u)) *
               std::cos(2.0 * std::numbers::pi * v);
    }

  private:
    std::uint64_t state_;
};

// Stream keyed by (seed, replica index, label). The avalanche runs over the
// concatenated words, so neighbouring indices land in unrelated states.
inline RngStream derive_substream(std::uint64_t seed, std::uint64_t index,
                                  std::string_view label) {
    std::uint64_t s = mix64(seed ^ 0x6a09e667f3bcc909ULL);
    s = mix64(s ^ hash_label(label));
    s = mix64(s ^ index);
    return RngStream(s);
}

// Variant with an arbitrary index path, e.g. (time, row) for environment
// slices or (replica, step) for chain draws.
inline RngStream derive_substream(std::uint64_t seed,
                                  std::initializer_list<std::uint64_t> indices,
                                  std::string_view label) {
    std::uint64_t s = mix64(seed ^ 0x6a09e667f3bcc909ULL);
    s = mix64(s ^ hash_label(label));
    for (std::uint64_t idx : indices) s = mix64(s ^ idx);
    return RngStream(s);
}

} // namespace cgpoly
