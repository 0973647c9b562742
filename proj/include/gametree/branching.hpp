#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gametree/caps.hpp"
#include "gametree/rng.hpp"

namespace gametree {

/// Generation of the 2-type process: counts only, no genealogy.
struct Population {
    std::uint64_t type0 = 0;
    std::uint64_t type1 = 0;
    std::uint64_t total() const { return type0 + type1; }
    bool operator==(const Population&) const = default;
};

/// One offspring draw. A type-1 individual spawns m type-1 children plus
/// the sum of m uniform{0..m-1} coins of type 0. A type-0 individual draws
/// U0 uniform{0..m-1}, spawns U0 type-1 children and m plus the sum of U0
/// further coins of type 0. Coins are consumed from the rng in that order.
Population offspring(int type, int m, RandomSource& rng);

/// k generations from a single individual of the start type. Within a
/// generation, type-0 parents reproduce first, then type-1 parents.
/// Throws CapExceeded when a generation's size passes caps.max_population.
Population simulate(int m, int k, int start, RandomSource& rng, const Caps& caps = {});

struct MonteCarloStats {
    int m = 2, k = 0, start = 1;
    std::uint64_t runs = 0;
    std::uint64_t seed = 0;
    double mean = 0;
    double variance = 0;                  // sample variance, 0 for runs < 2
    /// t -> empirical frequency of (total - E C)/n^alpha > t.
    std::map<double, double> empirical_tail;
};

/// Independent simulations with per-run derived seeds (run r uses
/// RandomSource::derived(seed, r)), aggregated with Welford's recurrence.
MonteCarloStats monte_carlo(int m, int k, int start, std::uint64_t runs,
                            std::uint64_t seed,
                            const std::vector<double>& t_grid = {0.25, 0.5, 0.75, 1.0,
                                                                 1.5, 2.0},
                            const Caps& caps = {});

nlohmann::json to_json(const MonteCarloStats& stats);
std::string to_csv(const MonteCarloStats& stats);

} // namespace gametree
