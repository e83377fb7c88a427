#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <vector>

namespace rewrap {

/// Deterministic 64-bit generator (splitmix64). The draw sequence is fully
/// specified by this header, so seeded runs reproduce bit-identically across
/// platforms. Independent streams are derived by hashing a (seed, tag) pair;
/// changing the tag never perturbs sibling streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 random mantissa bits.
    double uniform();

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);

    /// Standard normal via Box-Muller; consumes two uniforms per pair.
    double normal();

    /// splitmix64 finalizer; used as the stream-derivation hash.
    static std::uint64_t mix(std::uint64_t x);

    /// Stream seed for (seed, tag). tag is hashed with FNV-1a 64.
    static std::uint64_t derive(std::uint64_t seed, std::string_view tag);

    /// Stream seed for a composite key (seed, p0, p1, ...).
    static std::uint64_t derive(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> parts);

private:
    std::uint64_t state_;
    bool has_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

/// Uniformly random k-subset of {0,...,n-1}, returned sorted ascending.
/// Partial Fisher-Yates; consumes exactly k draws.
std::vector<int> sample_without_replacement(int n, int k, Rng& rng);

}  // namespace rewrap
