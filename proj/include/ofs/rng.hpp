#pragma once

#include <cstdint>
#include <random>

namespace ofs {

/// SplitMix64 finalizer; used for seed derivation, not as a stream generator.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace seed_salt {
// Domain separation constants so engine, topology and strategy streams
// never collide for the same (master, stream, index) triple.
constexpr std::uint64_t kEngine = 0x656e67696e653031ULL;
constexpr std::uint64_t kTopology = 0x746f706f6c6f6779ULL;
constexpr std::uint64_t kStrategy = 0x7374726174656779ULL;
} // namespace seed_salt

/// Derives an independent 64-bit seed from a master seed, a salt and a
/// (stream, index) pair, e.g. (island_id, iteration).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt,
                                 std::uint64_t stream, std::uint64_t index) {
    std::uint64_t h = splitmix64(master ^ salt);
    h = splitmix64(h ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    h = splitmix64(h ^ (0xc2b2ae3d27d4eb4fULL * (index + 1)));
    return h;
}

/// Seeded generator with fully specified output mapping.
///
/// mt19937_64 is bit-exact across platforms by the standard; the
/// [0,1) mapping below avoids std::uniform_real_distribution, whose
/// output is implementation-defined, so identical seeds give identical
/// streams on every build.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1) with 53 bits of randomness.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform index in [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

    bool coin() { return uniform01() < 0.5; }

  private:
    std::mt19937_64 gen_;
};

} // namespace ofs
