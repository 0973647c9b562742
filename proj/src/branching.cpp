#include "gametree/branching.hpp"

#include <sstream>
#include <stdexcept>

#include "gametree/analytics.hpp"
#include "gametree/errors.hpp"

namespace gametree {

Population offspring(int type, int m, RandomSource& rng) {
    if (m < 2) throw std::invalid_argument("arity must be >= 2");
    if (type != 0 && type != 1) throw std::invalid_argument("type must be 0 or 1");
    const auto n = static_cast<std::uint32_t>(m);
    Population out;
    if (type == 1) {
        out.type1 = static_cast<std::uint64_t>(m);
        for (int r = 0; r < m; ++r) out.type0 += rng.uniform_int(n);
    } else {
        const std::uint32_t u0 = rng.uniform_int(n);
        out.type1 = u0;
        out.type0 = static_cast<std::uint64_t>(m);
        for (std::uint32_t r = 0; r < u0; ++r) out.type0 += rng.uniform_int(n);
    }
    return out;
}

Population simulate(int m, int k, int start, RandomSource& rng, const Caps& caps) {
    if (k < 0) throw std::invalid_argument("generations must be >= 0");
    if (start != 0 && start != 1) throw std::invalid_argument("start must be 0 or 1");
    Population pop;
    (start == 0 ? pop.type0 : pop.type1) = 1;
    for (int gen = 0; gen < k; ++gen) {
        if (pop.total() > caps.max_population)
            throw CapExceeded("max_population: generation exceeds " +
                              std::to_string(caps.max_population));
        Population next;
        for (std::uint64_t i = 0; i < pop.type0; ++i) {
            Population o = offspring(0, m, rng);
            next.type0 += o.type0;
            next.type1 += o.type1;
        }
        for (std::uint64_t i = 0; i < pop.type1; ++i) {
            Population o = offspring(1, m, rng);
            next.type0 += o.type0;
            next.type1 += o.type1;
        }
        pop = next;
    }
    if (pop.total() > caps.max_population)
        throw CapExceeded("max_population: generation exceeds " +
                          std::to_string(caps.max_population));
    return pop;
}

MonteCarloStats monte_carlo(int m, int k, int start, std::uint64_t runs,
                            std::uint64_t seed, const std::vector<double>& t_grid,
                            const Caps& caps) {
    if (runs < 1) throw std::invalid_argument("runs must be >= 1");

    MonteCarloStats stats;
    stats.m = m;
    stats.k = k;
    stats.start = start;
    stats.runs = runs;
    stats.seed = seed;

    const Rational ec = expected_cost(m, k, start);
    const double expected =
        static_cast<double>(Real(boost::multiprecision::numerator(ec)) /
                            Real(boost::multiprecision::denominator(ec)));
    // n^alpha = lambda1^k exactly.
    const SpectralData sd = spectral(m);
    const double n_alpha = static_cast<double>(pow(sd.lambda1, k));

    std::map<double, std::uint64_t> exceed;
    for (double t : t_grid) exceed[t] = 0;

    double mean = 0, m2 = 0;
    for (std::uint64_t r = 0; r < runs; ++r) {
        RandomSource rng = RandomSource::derived(seed, r);
        const double total =
            static_cast<double>(simulate(m, k, start, rng, caps).total());
        const double delta = total - mean;
        mean += delta / static_cast<double>(r + 1);
        m2 += delta * (total - mean);
        const double rescaled = (total - expected) / n_alpha;
        for (auto& [t, cnt] : exceed)
            if (rescaled > t) ++cnt;
    }
    stats.mean = mean;
    stats.variance = runs > 1 ? m2 / static_cast<double>(runs - 1) : 0.0;
    for (const auto& [t, cnt] : exceed)
        stats.empirical_tail[t] =
            static_cast<double>(cnt) / static_cast<double>(runs);
    return stats;
}

nlohmann::json to_json(const MonteCarloStats& stats) {
    nlohmann::json tail = nlohmann::json::object();
    for (const auto& [t, f] : stats.empirical_tail) {
        std::ostringstream key;
        key << t;
        tail[key.str()] = f;
    }
    return nlohmann::json{{"m", stats.m},
                          {"k", stats.k},
                          {"start", stats.start},
                          {"runs", stats.runs},
                          {"seed", stats.seed},
                          {"mean", stats.mean},
                          {"variance", stats.variance},
                          {"empirical_tail", tail}};
}

std::string to_csv(const MonteCarloStats& stats) {
    std::ostringstream os;
    os << "m,k,start,runs,seed,mean,variance\n"
       << stats.m << "," << stats.k << "," << stats.start << "," << stats.runs << ","
       << stats.seed << "," << stats.mean << "," << stats.variance << "\n"
       << "t,frequency\n";
    for (const auto& [t, f] : stats.empirical_tail) os << t << "," << f << "\n";
    return os.str();
}

} // namespace gametree
