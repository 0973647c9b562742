#pragma once

#include <cstdint>

namespace gametree {

/// Resource limits for the exact and randomized computations.
/// All caps are positive; defaults cover every desk-scale experiment.
struct Caps {
    /// Largest leaf count accepted for direct tree evaluation (4^12).
    std::uint64_t max_eval_leaves = 16'777'216;
    /// Largest n for which the 2^n exhaustive input scan is allowed.
    std::uint64_t max_exhaustive_n = 16;
    /// Cap on leaf count of an exact-PMF computation and on the number of
    /// entries a bivariate recursion level may hold.
    std::uint64_t max_pmf_support = 200'000;
    /// Branching-process population guard (individuals per generation).
    std::uint64_t max_population = 100'000'000;
};

} // namespace gametree
