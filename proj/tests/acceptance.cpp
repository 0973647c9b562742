// Acceptance gate: each criterion prints exactly one PASS/FAIL line.
// Run with no arguments for the full gate (exit code = number of failures)
// or with --criterion N for a single criterion (exit 0/1).

#include <chrono>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "gametree/analytics.hpp"
#include "gametree/branching.hpp"
#include "gametree/exact_dist.hpp"
#include "gametree/rng.hpp"
#include "gametree/worst_case.hpp"

using namespace gametree;

namespace {

double to_double(const Rational& r) {
    return static_cast<double>(Real(boost::multiprecision::numerator(r)) /
                               Real(boost::multiprecision::denominator(r)));
}

struct Criterion {
    int id;
    const char* title;
    bool (*run)(std::string& detail);
};

// 1. Closed-form mean identity and agreement with the exact laws.
bool crit1(std::string& detail) {
    const SpectralData sd = spectral(2);
    Real l1p = 1, l2p = 1;
    for (int k = 0; k <= 10; ++k) {
        const Rational ec = expected_cost(2, k, 1);
        const Real exact = Real(boost::multiprecision::numerator(ec)) /
                           Real(boost::multiprecision::denominator(ec));
        if (abs(sd.c1 * l1p - sd.c2 * l2p - exact) > Real("1e-9")) {
            detail = "closed form deviates at k=" + std::to_string(k);
            return false;
        }
        l1p *= sd.lambda1;
        l2p *= sd.lambda2;
    }
    for (int k = 1; k <= 3; ++k)
        if (exact_cost_pmf(worst_input(2, k, 1)).mean() != expected_cost(2, k, 1)) {
            detail = "pmf mean mismatch at k=" + std::to_string(k);
            return false;
        }
    detail = "E C matches c1*l1^k - c2*l2^k for k=0..10 and the exact laws for k<=3";
    return true;
}

// 2. Small-case exact laws.
bool crit2(std::string& detail) {
    const TreeShape shape = TreeShape::make(2, 1);
    const CostPMF a = exact_cost_pmf(LeafVector::from_string(shape, "0101"));
    const CostPMF b = exact_cost_pmf(LeafVector::from_string(shape, "0001"));
    CostPMF ea, eb;
    ea.p = {{2, Rational(1) / 4}, {3, Rational(1) / 2}, {4, Rational(1) / 4}};
    eb.p = {{2, Rational(1) / 2}, {3, Rational(1) / 4}, {4, Rational(1) / 4}};
    if (a != ea || b != eb) {
        detail = "exact k=1 laws differ from the enumeration oracle values";
        return false;
    }
    detail = "laws on 0101 and 0001 equal {1/4,1/2,1/4} and {1/2,1/4,1/4}";
    return true;
}

// 3. Exhaustive stochastic dominance.
bool crit3(std::string& detail) {
    std::ostringstream os;
    for (auto [m, k] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        const WorstCaseReport rep = verify_worst_case(m, k);
        if (!rep.ok()) {
            detail = "dominance violations at m=" + std::to_string(m) +
                     ", k=" + std::to_string(k) + ": " + rep.violations.front();
            return false;
        }
        os << rep.inputs_checked << " ";
    }
    detail = "no violation over " + os.str() + "inputs (m,k = 2,1 / 3,1 / 2,2)";
    return true;
}

// Chi-square goodness of fit of sampled totals against an exact law,
// pooling adjacent support points until every expected count is >= 5.
bool chi_square_ok(const CostPMF& exact, const std::map<std::uint64_t, int>& counts,
                   int n, double significance, double& stat_out, double& cut_out) {
    std::vector<double> expected, observed;
    double e_acc = 0, o_acc = 0;
    for (const auto& [cost, pr] : exact.p) {
        e_acc += to_double(pr) * n;
        auto it = counts.find(cost);
        o_acc += it == counts.end() ? 0 : it->second;
        if (e_acc >= 5) {
            expected.push_back(e_acc);
            observed.push_back(o_acc);
            e_acc = o_acc = 0;
        }
    }
    if (e_acc > 0 && !expected.empty()) {
        expected.back() += e_acc;
        observed.back() += o_acc;
    }
    double stat = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const double diff = observed[i] - expected[i];
        stat += diff * diff / expected[i];
    }
    boost::math::chi_squared dist(static_cast<double>(expected.size() - 1));
    const double cut = boost::math::quantile(dist, 1 - significance);
    stat_out = stat;
    cut_out = cut;
    return stat <= cut;
}

// 4. Coupled-recursion marginals and Monte Carlo goodness of fit.
bool crit4(std::string& detail) {
    for (int k = 1; k <= 3; ++k) {
        const BivariatePMF z = z_recursion_pmf(2, k);
        if (z.marginal(1) != exact_cost_pmf(worst_input(2, k, 1)) ||
            z.marginal(0) != exact_cost_pmf(worst_input(2, k, 0))) {
            detail = "recursion marginal mismatch at k=" + std::to_string(k);
            return false;
        }
    }
    const int runs = 100000;
    std::ostringstream os;
    for (int k = 1; k <= 3; ++k) {
        const CostPMF exact = exact_cost_pmf(worst_input(2, k, 1));
        std::map<std::uint64_t, int> counts;
        for (int r = 0; r < runs; ++r) {
            RandomSource rng = RandomSource::derived(20240 + static_cast<std::uint64_t>(k),
                                                     static_cast<std::uint64_t>(r));
            ++counts[simulate(2, k, 1, rng).total()];
        }
        double stat = 0, cut = 0;
        if (!chi_square_ok(exact, counts, runs, 1e-3, stat, cut)) {
            std::ostringstream fail;
            fail << "chi-square rejected at k=" << k << " (stat " << stat << " > "
                 << cut << ")";
            detail = fail.str();
            return false;
        }
        os << "k=" << k << " stat " << std::fixed << std::setprecision(1) << stat
           << " < cut " << cut << "; ";
    }
    detail = "marginals exact for k<=3; GOF at 1e-3: " + os.str();
    return true;
}

// 5. Full published table of alpha_m, d_m, kappa_m.
bool crit5(std::string& detail) {
    const std::vector<int> ms = {2,  3,  4,  5,  6,  7,  8,  9,  10, 11, 12,
                                 13, 14, 15, 16, 17, 20, 30, 40, 50, 100};
    const std::vector<double> alpha_ref = {
        0.754, 0.759, 0.765, 0.769, 0.774, 0.778, 0.781, 0.785, 0.788, 0.790, 0.793,
        0.795, 0.798, 0.800, 0.802, 0.804, 0.809, 0.821, 0.830, 0.837, 0.856};
    const std::vector<double> d_ref = {
        0.0938, 0.0847, 0.0782, 0.0731, 0.0689, 0.0652, 0.0619, 0.0590, 0.0564,
        0.0541, 0.0519, 0.0499, 0.0481, 0.0464, 0.0448, 0.0433, 0.0394, 0.0304,
        0.0247, 0.0209, 0.0117};
    const std::vector<double> kappa_ref = {
        4.060, 4.154, 4.247, 4.336, 4.419, 4.497, 4.571, 4.641, 4.707, 4.769, 4.829,
        4.886, 4.940, 4.993, 5.043, 5.091, 5.226, 5.596, 5.885, 6.123, 6.928};

    const auto rows = table1(ms);
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (std::abs(rows[i].alpha - alpha_ref[i]) > 0.001 ||
            std::abs(rows[i].kappa - kappa_ref[i]) > 0.001 ||
            std::abs(rows[i].d - d_ref[i]) > 0.0005) {
            std::ostringstream fail;
            fail << "m=" << ms[i] << ": got (" << rows[i].alpha << ", " << rows[i].d
                 << ", " << rows[i].kappa << "), published (" << alpha_ref[i] << ", "
                 << d_ref[i] << ", " << kappa_ref[i] << ")";
            detail = fail.str();
            return false;
        }
    }
    detail = "all 21 rows match within +-0.001 (alpha, kappa) and +-0.0005 (d)";
    return true;
}

// 6. Exact variance recursion converges to the fixed-point constant.
bool crit6(std::string& detail) {
    const VarianceResult vr = variance_constant(2, 20);
    const double at20 = static_cast<double>(vr.levels[19].normalized_var1);
    const double d = static_cast<double>(vr.d);
    if (std::abs(at20 / d - 1.0) > 0.01) {
        detail = "k=20 normalized variance " + std::to_string(at20) +
                 " not within 1% of d=" + std::to_string(d);
        return false;
    }
    // The approach is driven by two eigenmodes and briefly flattens where
    // they cancel (around k=7); past that it contracts at lambda2/lambda1
    // per level. Check the geometric regime, k = 10..20.
    double prev = 1;
    for (std::size_t i = 1; i < vr.levels.size(); ++i) {
        const double diff = std::abs(static_cast<double>(
            vr.levels[i].normalized_var1 - vr.levels[i - 1].normalized_var1));
        if (i >= 9 && diff >= 0.7 * prev) {
            detail = "successive differences stopped shrinking at k=" +
                     std::to_string(vr.levels[i].k);
            return false;
        }
        prev = diff;
    }
    std::ostringstream os;
    os << "Var/lambda1^(2k) at k=20 is " << std::setprecision(6) << at20
       << ", fixed point d = " << d << ", differences shrink geometrically";
    detail = os.str();
    return true;
}

// 7. Toll-term sup ratio against the documented value 104/77.
bool crit7(std::string& detail) {
    const TollMoments tm = toll_moments(2);
    const double ratio = static_cast<double>(tm.ratio);
    const double target = 104.0 / 77.0;
    const double psi1 = (std::exp(1.53) - 2.53) / 1.53;
    const bool psi_ok = psi1 >= target;
    const bool ratio_ok = std::abs(ratio - target) <= 1e-9;
    std::ostringstream os;
    os << std::setprecision(10) << "computed sup ratio " << ratio
       << " (limit-direction variant " << static_cast<double>(tm.ratio_limit)
       << ") vs documented 104/77 = " << target << "; Psi_1(1.53) = " << psi1
       << (psi_ok ? " >= 104/77 holds" : " < 104/77");
    detail = os.str();
    return ratio_ok && psi_ok;
}

// 8. Monte Carlo tail frequencies against the explicit Chernoff bound.
bool crit8(std::string& detail) {
    const int m = 2, k = 6, runs = 100000;
    const double expect = to_double(expected_cost(m, k, 1));
    const double n_alpha = static_cast<double>(pow(spectral(m).lambda1, k));

    int exceed_half = 0, exceed_one = 0;
    for (int r = 0; r < runs; ++r) {
        RandomSource rng = RandomSource::derived(424242, static_cast<std::uint64_t>(r));
        const double rescaled =
            (static_cast<double>(simulate(m, k, 1, rng).total()) - expect) / n_alpha;
        if (rescaled > 0.5) ++exceed_half;
        if (rescaled > 1.0) ++exceed_one;
    }
    std::ostringstream os;
    for (auto [t, count] : {std::pair{0.5, exceed_half}, {1.0, exceed_one}}) {
        const double freq = count / static_cast<double>(runs);
        const double bound = static_cast<double>(tail_bound(m, 3.0, t));
        const double slack = 4 * std::sqrt(bound * (1 - bound) / runs);
        if (freq > bound + slack) {
            std::ostringstream fail;
            fail << "empirical tail " << freq << " at t=" << t << " exceeds bound "
                 << bound;
            detail = fail.str();
            return false;
        }
        os << "t=" << t << ": " << freq << " <= " << std::setprecision(4) << bound
           << "; ";
    }
    for (double q = 1.34; q < 2.0; q += 0.05) {
        const TailConstants tc = mgf_constant(m, q);
        if (!(tc.K > 0) || !std::isfinite(static_cast<double>(tc.K)) || !(tc.L > 0) ||
            !std::isfinite(static_cast<double>(tc.L))) {
            detail = "K or L not finite/positive at q=" + std::to_string(q);
            return false;
        }
    }
    detail = os.str() + "K_q, L_kappa finite and positive across q in (1/alpha, 2)";
    return true;
}

const Criterion kCriteria[] = {
    {1, "closed-form mean", crit1},
    {2, "small-case exact laws", crit2},
    {3, "exhaustive stochastic dominance", crit3},
    {4, "recursion/branching consistency", crit4},
    {5, "published constants table", crit5},
    {6, "variance convergence", crit6},
    {7, "toll-term sup ratio", crit7},
    {8, "tail bound sanity", crit8},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) only = std::atoi(argv[2]);
    else if (argc != 1) {
        std::cerr << "usage: acceptance [--criterion N]\n";
        return 2;
    }

    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        const bool ok = c.run(detail);
        const auto secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title
                  << ", " << std::fixed << std::setprecision(1) << secs
                  << "s): " << detail << "\n";
        std::cout.unsetf(std::ios::fixed);
        if (!ok) ++failures;
    }
    return failures;
}
