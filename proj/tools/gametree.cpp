#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gametree/analytics.hpp"
#include "gametree/branching.hpp"
#include "gametree/caps.hpp"
#include "gametree/errors.hpp"
#include "gametree/exact_dist.hpp"
#include "gametree/pmf.hpp"
#include "gametree/rng.hpp"
#include "gametree/tree.hpp"
#include "gametree/worst_case.hpp"

namespace {

using nlohmann::json;
using namespace gametree;

constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitNumeric = 4;

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

std::string fmt(const Real& x) { return fmt(static_cast<double>(x)); }

struct Options {
    std::string format = "text";
    Caps caps;
    int m = 2, k = 1, root = 1, start = 1, k_max = 5;
    std::uint64_t seed = 0, runs = 10000;
    double kappa = 3.0, t = 1.0, q = 1.5;
    std::string input;
    std::vector<int> m_list;
    bool record_reads = false;
    bool have_q = false;
};

void print_pmf(const CostPMF& pmf, const std::string& format) {
    if (format == "json") {
        std::cout << to_json(pmf).dump() << "\n";
    } else if (format == "csv") {
        std::cout << to_csv(pmf);
    } else {
        for (const auto& [c, pr] : pmf.p)
            std::cout << c << ": " << rational_to_string(pr) << "\n";
    }
}

int cmd_evaluate(const Options& o) {
    const TreeShape shape = TreeShape::make(o.m, o.k, o.caps);
    const LeafVector v = LeafVector::from_string(shape, o.input);
    RandomSource rng(o.seed);
    const EvalOutcome out = snir_eval(v, rng, o.record_reads);
    if (o.format == "json") {
        json j{{"root_bit", out.root_bit},
               {"leaves_read", out.leaves_read},
               {"seed", o.seed}};
        if (out.read_set) j["read_set"] = *out.read_set;
        std::cout << j.dump() << "\n";
    } else if (o.format == "csv") {
        std::cout << "root_bit,leaves_read,seed\n"
                  << out.root_bit << "," << out.leaves_read << "," << o.seed << "\n";
    } else {
        std::cout << "root_bit: " << out.root_bit << "\nleaves_read: " << out.leaves_read
                  << "\nseed: " << o.seed << "\n";
        if (out.read_set) {
            std::cout << "read_set:";
            for (auto i : *out.read_set) std::cout << " " << i;
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_worst_input(const Options& o) {
    const LeafVector v = worst_input(o.m, o.k, o.root, o.caps);
    if (o.format == "json") {
        std::cout << json{{"m", o.m}, {"k", o.k}, {"root", o.root},
                          {"input", v.to_string()}}
                         .dump()
                  << "\n";
    } else if (o.format == "csv") {
        std::cout << "m,k,root,input\n"
                  << o.m << "," << o.k << "," << o.root << "," << v.to_string() << "\n";
    } else {
        std::cout << v.to_string() << "\n";
    }
    return 0;
}

int cmd_exact_pmf(const Options& o) {
    const TreeShape shape = TreeShape::make(o.m, o.k, o.caps);
    const LeafVector v = o.input.empty()
                             ? worst_input(o.m, o.k, o.root, o.caps)
                             : LeafVector::from_string(shape, o.input);
    print_pmf(exact_cost_pmf(v, o.caps), o.format);
    return 0;
}

int cmd_dominance(const Options& o) {
    const WorstCaseReport rep = verify_worst_case(o.m, o.k, o.caps);
    if (o.format == "json") {
        std::cout << json{{"m", rep.m},
                          {"k", rep.k},
                          {"inputs_checked", rep.inputs_checked},
                          {"root0_count", rep.root0_count},
                          {"root1_count", rep.root1_count},
                          {"violations", rep.violations},
                          {"maximizers_root1", rep.maximizers_root1},
                          {"maximizers_root0", rep.maximizers_root0},
                          {"ok", rep.ok()}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "inputs_checked: " << rep.inputs_checked
                  << "\nroot0_count: " << rep.root0_count
                  << "\nviolations: " << rep.violations.size() << "\n";
        for (const auto& s : rep.violations) std::cout << "  " << s << "\n";
        std::cout << "result: " << (rep.ok() ? "no violation" : "VIOLATION") << "\n";
    }
    return rep.ok() ? 0 : 1;
}

int cmd_simulate(const Options& o) {
    RandomSource rng(o.seed);
    const Population pop = simulate(o.m, o.k, o.start, rng, o.caps);
    if (o.format == "json") {
        std::cout << json{{"type0", pop.type0}, {"type1", pop.type1},
                          {"total", pop.total()}, {"seed", o.seed}}
                         .dump()
                  << "\n";
    } else if (o.format == "csv") {
        std::cout << "type0,type1,total,seed\n"
                  << pop.type0 << "," << pop.type1 << "," << pop.total() << ","
                  << o.seed << "\n";
    } else {
        std::cout << "type0: " << pop.type0 << "\ntype1: " << pop.type1
                  << "\ntotal: " << pop.total() << "\nseed: " << o.seed << "\n";
    }
    return 0;
}

int cmd_monte_carlo(const Options& o) {
    const MonteCarloStats stats =
        monte_carlo(o.m, o.k, o.start, o.runs, o.seed, {0.25, 0.5, 0.75, 1.0, 1.5, 2.0},
                    o.caps);
    if (o.format == "json") {
        std::cout << to_json(stats).dump() << "\n";
    } else if (o.format == "csv") {
        std::cout << to_csv(stats);
    } else {
        std::cout << "runs: " << stats.runs << "\nseed: " << stats.seed
                  << "\nmean: " << fmt(stats.mean)
                  << "\nvariance: " << fmt(stats.variance) << "\nempirical_tail:\n";
        for (const auto& [t, f] : stats.empirical_tail)
            std::cout << "  t=" << t << ": " << fmt(f) << "\n";
    }
    return 0;
}

int cmd_constants(const Options& o) {
    const SpectralData sd = spectral(o.m);
    const VarianceResult vr = variance_constant(o.m, 0);
    const TollMoments tm = toll_moments(o.m);
    const double q = o.have_q ? o.q : 1.5;
    const TailConstants tc = mgf_constant(o.m, q);
    if (o.format == "json") {
        std::cout
            << json{{"m", o.m},
                    {"lambda1", fmt(sd.lambda1)},
                    {"lambda2", fmt(sd.lambda2)},
                    {"alpha", fmt(sd.alpha)},
                    {"beta", fmt(sd.beta)},
                    {"c0", fmt(sd.c0)},
                    {"c1", fmt(sd.c1)},
                    {"c2", fmt(sd.c2)},
                    {"d", fmt(vr.d)},
                    {"toll_sup_mean_sq", fmt(tm.sup_mean_sq)},
                    {"toll_sup_ess", fmt(tm.sup_ess)},
                    {"toll_ratio", fmt(tm.ratio)},
                    {"q", q},
                    {"K", fmt(tc.K)},
                    {"kappa", fmt(tc.kappa)},
                    {"L", fmt(tc.L)}}
                   .dump()
            << "\n";
    } else {
        std::cout << "m: " << o.m << "\n"
                  << "lambda1: " << fmt(sd.lambda1) << "  (closed-form)\n"
                  << "lambda2: " << fmt(sd.lambda2) << "  (closed-form)\n"
                  << "alpha: " << fmt(sd.alpha) << "  (closed-form)\n"
                  << "beta: " << fmt(sd.beta) << "  (closed-form)\n"
                  << "c0: " << fmt(sd.c0) << "  (closed-form)\n"
                  << "c1: " << fmt(sd.c1) << "  (closed-form)\n"
                  << "c2: " << fmt(sd.c2) << "  (closed-form)\n"
                  << "d: " << fmt(vr.d) << "  (fixed-point)\n"
                  << "toll_sup_mean_sq: " << fmt(tm.sup_mean_sq) << "  (scanned-sup)\n"
                  << "toll_sup_ess: " << fmt(tm.sup_ess) << "  (scanned-sup)\n"
                  << "toll_ratio: " << fmt(tm.ratio) << "  (scanned-sup)\n"
                  << "q: " << q << "\n"
                  << "K: " << fmt(tc.K) << "  (scanned-sup)\n"
                  << "kappa: " << fmt(tc.kappa) << "\n"
                  << "L: " << fmt(tc.L) << "  (scanned-sup)\n";
        if (o.m > 2)
            std::cout << "note: tail constants for m > 2 reuse the binary derivation "
                         "with the m-ary toll term (derived by analogy)\n";
    }
    return 0;
}

int cmd_table1(const Options& o) {
    std::vector<int> ms = o.m_list;
    if (ms.empty())
        ms = {2,  3,  4,  5,  6,  7,  8,  9,  10, 11, 12,
              13, 14, 15, 16, 17, 20, 30, 40, 50, 100};
    const auto rows = table1(ms);
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"m", r.m}, {"alpha", r.alpha}, {"d", r.d},
                           {"kappa", r.kappa}});
        std::cout << arr.dump() << "\n";
    } else if (o.format == "csv") {
        std::cout << "m,alpha,d,kappa\n";
        for (const auto& r : rows)
            std::cout << r.m << "," << fmt(r.alpha) << "," << fmt(r.d) << ","
                      << fmt(r.kappa) << "\n";
    } else {
        std::cout << std::left << std::setw(6) << "m" << std::setw(10) << "alpha"
                  << std::setw(10) << "d" << std::setw(10) << "kappa" << "\n";
        for (const auto& r : rows) {
            std::ostringstream line;
            line << std::left << std::setw(6) << r.m << std::setw(10) << std::fixed
                 << std::setprecision(3) << r.alpha << std::setw(10)
                 << std::setprecision(4) << r.d << std::setw(10)
                 << std::setprecision(3) << r.kappa;
            std::cout << line.str() << "\n";
        }
    }
    return 0;
}

int cmd_tail_bound(const Options& o) {
    const Real bound = tail_bound(o.m, o.kappa, o.t);
    if (o.format == "json") {
        std::cout << json{{"m", o.m}, {"kappa", o.kappa}, {"t", o.t},
                          {"bound", fmt(bound)}}
                         .dump()
                  << "\n";
    } else if (o.format == "csv") {
        std::cout << "m,kappa,t,bound\n"
                  << o.m << "," << o.kappa << "," << o.t << "," << fmt(bound) << "\n";
    } else {
        std::cout << "bound: " << fmt(bound) << "\n";
    }
    return 0;
}

int cmd_converge(const Options& o) {
    const auto steps = convergence_diagnostics(o.m, o.k_max, o.caps);
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& s : steps) {
            json j{{"k", s.k}, {"rescaled_mean", s.rescaled_mean}};
            if (s.kolmogorov) j["kolmogorov"] = *s.kolmogorov;
            if (s.wasserstein) j["wasserstein"] = *s.wasserstein;
            arr.push_back(j);
        }
        std::cout << arr.dump() << "\n";
    } else if (o.format == "csv") {
        std::cout << "k,rescaled_mean,kolmogorov,wasserstein\n";
        for (const auto& s : steps) {
            std::cout << s.k << "," << fmt(s.rescaled_mean) << ",";
            if (s.kolmogorov) std::cout << fmt(*s.kolmogorov);
            std::cout << ",";
            if (s.wasserstein) std::cout << fmt(*s.wasserstein);
            std::cout << "\n";
        }
    } else {
        for (const auto& s : steps) {
            std::cout << "k=" << s.k << " rescaled_mean=" << fmt(s.rescaled_mean);
            if (s.kolmogorov) std::cout << " kolmogorov=" << fmt(*s.kolmogorov);
            if (s.wasserstein) std::cout << " wasserstein=" << fmt(*s.wasserstein);
            std::cout << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Randomized AND/OR game-tree evaluation: exact laws, "
                 "branching-process simulation and tail constants"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--max-eval-leaves", o.caps.max_eval_leaves)
        ->envname("GAMETREE_MAX_EVAL_LEAVES");
    app.add_option("--max-exhaustive-n", o.caps.max_exhaustive_n)
        ->envname("GAMETREE_MAX_EXHAUSTIVE_N");
    app.add_option("--max-pmf-support", o.caps.max_pmf_support)
        ->envname("GAMETREE_MAX_PMF_SUPPORT");
    app.add_option("--max-population", o.caps.max_population)
        ->envname("GAMETREE_MAX_POPULATION");

    auto add_mk = [&](CLI::App* sub) {
        sub->add_option("--m", o.m, "Arity")->check(CLI::Range(2, 1000000));
        sub->add_option("--k", o.k, "Half height")->check(CLI::Range(0, 64));
    };

    auto* ev = app.add_subcommand("evaluate", "One randomized evaluation of an input");
    add_mk(ev);
    ev->add_option("--input", o.input, "Leaf bits, left to right")->required();
    ev->add_option("--seed", o.seed);
    ev->add_flag("--record-reads", o.record_reads);

    auto* wi = app.add_subcommand("worst-input", "Recursive worst-case input");
    add_mk(wi);
    wi->add_option("--root", o.root)->check(CLI::Range(0, 1));

    auto* ep = app.add_subcommand("exact-pmf", "Exact cost PMF of an input");
    add_mk(ep);
    ep->add_option("--input", o.input, "Leaf bits; omit to use the worst input");
    ep->add_option("--root", o.root, "Worst-input root when --input is omitted")
        ->check(CLI::Range(0, 1));

    auto* dom = app.add_subcommand(
        "dominance", "Exhaustive stochastic-dominance scan; exit 0 iff no violation");
    add_mk(dom);

    auto* sim = app.add_subcommand("simulate", "One branching-process trajectory");
    add_mk(sim);
    sim->add_option("--start", o.start)->check(CLI::Range(0, 1));
    sim->add_option("--seed", o.seed);

    auto* mc = app.add_subcommand("monte-carlo", "Repeated simulation with statistics");
    add_mk(mc);
    mc->add_option("--start", o.start)->check(CLI::Range(0, 1));
    mc->add_option("--runs", o.runs)->check(CLI::Range(std::uint64_t{1},
                                                       std::uint64_t{100000000}));
    mc->add_option("--seed", o.seed);

    auto* co = app.add_subcommand("constants", "Spectral and tail constants");
    co->add_option("--m", o.m)->check(CLI::Range(2, 1000000));
    co->add_option("--q", o.q, "MGF exponent in (1/alpha, 2)")
        ->check(CLI::Range(1.0, 2.0));

    auto* t1 = app.add_subcommand("table1", "alpha_m, d_m, kappa_m table");
    t1->add_option("--m", o.m_list, "Arities (default: the full published set)");

    auto* tb = app.add_subcommand("tail-bound", "exp(-L t^kappa) upper tail bound");
    tb->add_option("--m", o.m)->check(CLI::Range(2, 1000000));
    tb->add_option("--kappa", o.kappa)->required();
    tb->add_option("--t", o.t)->required();

    auto* cv = app.add_subcommand("converge", "Rescaled-law convergence diagnostics");
    cv->add_option("--m", o.m)->check(CLI::Range(2, 1000000));
    cv->add_option("--k-max", o.k_max)->check(CLI::Range(1, 32));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*ev) return cmd_evaluate(o);
        if (*wi) return cmd_worst_input(o);
        if (*ep) return cmd_exact_pmf(o);
        if (*dom) return cmd_dominance(o);
        if (*sim) return cmd_simulate(o);
        if (*mc) return cmd_monte_carlo(o);
        if (*co) {
            o.have_q = co->count("--q") > 0;
            return cmd_constants(o);
        }
        if (*t1) return cmd_table1(o);
        if (*tb) return cmd_tail_bound(o);
        if (*cv) return cmd_converge(o);
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
