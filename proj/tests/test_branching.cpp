#include <doctest.h>

#include <cmath>

#include "gametree/analytics.hpp"
#include "gametree/branching.hpp"
#include "gametree/errors.hpp"
#include "gametree/exact_dist.hpp"
#include "gametree/worst_case.hpp"

using namespace gametree;

namespace {

double to_double(const Rational& r) {
    return static_cast<double>(Real(boost::multiprecision::numerator(r)) /
                               Real(boost::multiprecision::denominator(r)));
}

} // namespace

TEST_CASE("offspring laws at m=2") {
    RandomSource rng(1);
    const int N = 100000;

    SUBCASE("type 1: two type-1 children, 0/1/2 type-0") {
        int c0 = 0, c1 = 0, c2 = 0;
        for (int i = 0; i < N; ++i) {
            const Population o = offspring(1, 2, rng);
            CHECK(o.type1 == 2);
            REQUIRE(o.type0 <= 2);
            (o.type0 == 0 ? c0 : o.type0 == 1 ? c1 : c2)++;
        }
        // 4 standard errors around 1/4, 1/2, 1/4.
        const double se = 4 * std::sqrt(0.25 / N);
        CHECK(std::abs(c0 / double(N) - 0.25) < se);
        CHECK(std::abs(c1 / double(N) - 0.50) < 4 * std::sqrt(0.25 / N));
        CHECK(std::abs(c2 / double(N) - 0.25) < se);
    }

    SUBCASE("type 0: (0,2) w.p. 1/2, (1,2) w.p. 1/4, (1,3) w.p. 1/4") {
        int n02 = 0, n12 = 0, n13 = 0;
        for (int i = 0; i < N; ++i) {
            const Population o = offspring(0, 2, rng);
            if (o.type1 == 0 && o.type0 == 2) ++n02;
            else if (o.type1 == 1 && o.type0 == 2) ++n12;
            else if (o.type1 == 1 && o.type0 == 3) ++n13;
            else FAIL("impossible offspring");
        }
        const double se = 4 * std::sqrt(0.25 / N);
        CHECK(std::abs(n02 / double(N) - 0.50) < se);
        CHECK(std::abs(n12 / double(N) - 0.25) < se);
        CHECK(std::abs(n13 / double(N) - 0.25) < se);
    }
}

TEST_CASE("offspring law at m=3, type 1") {
    RandomSource rng(2);
    const int N = 100000;
    double sum = 0;
    for (int i = 0; i < N; ++i) {
        const Population o = offspring(1, 3, rng);
        CHECK(o.type1 == 3);
        REQUIRE(o.type0 <= 6);
        sum += static_cast<double>(o.type0);
    }
    // Mean 3, variance 3 * 2/3 = 2 -> SE = sqrt(2/N).
    CHECK(std::abs(sum / N - 3.0) < 4 * std::sqrt(2.0 / N));
}

TEST_CASE("empirical mean offspring matrix matches the mean matrix") {
    const int N = 100000;
    for (int m : {2, 3}) {
        const MeanMatrix M = mean_matrix(m);
        for (int type = 0; type <= 1; ++type) {
            RandomSource rng(100 + static_cast<std::uint64_t>(10 * m + type));
            double s0 = 0, s1 = 0, sq0 = 0, sq1 = 0;
            for (int i = 0; i < N; ++i) {
                const Population o = offspring(type, m, rng);
                s0 += static_cast<double>(o.type0);
                s1 += static_cast<double>(o.type1);
                sq0 += static_cast<double>(o.type0) * static_cast<double>(o.type0);
                sq1 += static_cast<double>(o.type1) * static_cast<double>(o.type1);
            }
            const double m0 = s0 / N, m1 = s1 / N;
            const double sd0 = std::sqrt(std::max(sq0 / N - m0 * m0, 1e-12));
            const double sd1 = std::sqrt(std::max(sq1 / N - m1 * m1, 1e-12));
            const double e0 = to_double(type == 0 ? M.a00 : M.a01);
            const double e1 = to_double(type == 0 ? M.a10 : M.a11);
            CHECK(std::abs(m0 - e0) < 4 * sd0 / std::sqrt(double(N)) + 1e-9);
            CHECK(std::abs(m1 - e1) < 4 * sd1 / std::sqrt(double(N)) + 1e-9);
        }
    }
}

TEST_CASE("simulate basics") {
    RandomSource rng(3);
    SUBCASE("zero generations") {
        CHECK(simulate(2, 0, 1, rng) == Population{0, 1});
        CHECK(simulate(2, 0, 0, rng) == Population{1, 0});
    }
    SUBCASE("one generation totals live on {2,3,4}") {
        for (int i = 0; i < 2000; ++i) {
            const auto t = simulate(2, 1, 1, rng).total();
            CHECK(t >= 2);
            CHECK(t <= 4);
        }
    }
    SUBCASE("population cap") {
        Caps tight;
        tight.max_population = 10;
        RandomSource r2(4);
        CHECK_THROWS_AS(simulate(2, 6, 1, r2, tight), CapExceeded);
    }
}

TEST_CASE("one-generation totals match the exact law within 4 SE") {
    const int N = 100000;
    for (int start = 0; start <= 1; ++start) {
        const CostPMF exact = exact_cost_pmf(worst_input(2, 1, start));
        std::map<std::uint64_t, int> counts;
        for (int i = 0; i < N; ++i) {
            RandomSource rng = RandomSource::derived(777, static_cast<std::uint64_t>(i + start * N));
            ++counts[simulate(2, 1, start, rng).total()];
        }
        for (const auto& [cost, pr] : exact.p) {
            const double p = to_double(pr);
            const double freq = counts[cost] / double(N);
            CHECK(std::abs(freq - p) < 4 * std::sqrt(p * (1 - p) / N));
        }
    }
}

TEST_CASE("monte carlo statistics") {
    SUBCASE("mean within 4 SE of the exact mean, k=1") {
        const MonteCarloStats stats = monte_carlo(2, 1, 1, 100000, 42);
        // Exact law has mean 3 and variance 1/2.
        CHECK(std::abs(stats.mean - 3.0) < 4 * std::sqrt(0.5 / 100000));
        CHECK(stats.variance == doctest::Approx(0.5).epsilon(0.05));
    }
    SUBCASE("mean within 4 SE at k=3") {
        const MonteCarloStats stats = monte_carlo(2, 3, 1, 50000, 9);
        const double expect = to_double(expected_cost(2, 3, 1));
        const double se = std::sqrt(stats.variance / 50000);
        CHECK(std::abs(stats.mean - expect) < 4 * se);
    }
    SUBCASE("single run degenerates to the draw") {
        const MonteCarloStats stats = monte_carlo(2, 2, 1, 1, 5);
        CHECK(stats.variance == 0);
        RandomSource rng = RandomSource::derived(5, 0);
        CHECK(stats.mean ==
              static_cast<double>(simulate(2, 2, 1, rng).total()));
    }
    SUBCASE("reproducible and serializable") {
        const MonteCarloStats a = monte_carlo(2, 2, 1, 2000, 31);
        const MonteCarloStats b = monte_carlo(2, 2, 1, 2000, 31);
        CHECK(a.mean == b.mean);
        CHECK(a.variance == b.variance);
        CHECK(a.empirical_tail == b.empirical_tail);
        const auto j = to_json(a);
        CHECK(j.at("seed") == 31);
        CHECK(j.at("runs") == 2000);
        CHECK(to_csv(a).find("2000,31") != std::string::npos);
    }
    SUBCASE("tail frequencies lie in [0,1] and decrease in t") {
        const MonteCarloStats stats = monte_carlo(2, 4, 1, 20000, 8);
        double prev = 1.0;
        for (const auto& [t, f] : stats.empirical_tail) {
            CHECK(f >= 0.0);
            CHECK(f <= prev);
            prev = f;
        }
    }
}
