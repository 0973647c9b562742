#pragma once

#include <cstdint>
#include <vector>

namespace gametree {

/// Deterministic, portable uniform random source.
///
/// The generator is splitmix64; bounded draws use rejection sampling so the
/// stream of values is identical on every platform. Parallel runs derive
/// independent streams with derived(master_seed, run_index):
///   stream_seed = mix(mix(run_index + GOLDEN) ^ master_seed)
/// so serial and parallel execution consume identical per-run streams.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : state_(mix(seed + kGolden)) {}

    /// Independent stream for run `index` under `master` seed.
    static RandomSource derived(std::uint64_t master, std::uint64_t index) {
        return RandomSource(mix(index + kGolden) ^ master);
    }

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix(state_);
    }

    /// Uniform draw in {0, ..., n-1}, unbiased via rejection.
    std::uint32_t uniform_int(std::uint32_t n) {
        const std::uint64_t threshold = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
        for (;;) {
            std::uint64_t v = next_u64();
            if (v < threshold) return static_cast<std::uint32_t>(v % n);
        }
    }

    /// Uniformly random permutation of {0, ..., n-1} (Fisher-Yates).
    std::vector<std::uint32_t> permutation(std::uint32_t n) {
        std::vector<std::uint32_t> p(n);
        for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
        for (std::uint32_t i = n; i > 1; --i) {
            std::uint32_t j = uniform_int(i);
            std::swap(p[i - 1], p[j]);
        }
        return p;
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace gametree
