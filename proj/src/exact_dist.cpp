#include "gametree/exact_dist.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "gametree/analytics.hpp"
#include "gametree/errors.hpp"
#include "gametree/worst_case.hpp"

namespace gametree {

namespace {

// The bottom-up PMF computation is shared between the exact (rational) and
// the fast float mode used by the large-k diagnostics, so it is templated on
// the probability type.
template <class P>
using BasicPmf = std::map<std::uint64_t, P>;

template <class P>
BasicPmf<P> conv(const BasicPmf<P>& a, const BasicPmf<P>& b) {
    BasicPmf<P> out;
    for (const auto& [ca, pa] : a)
        for (const auto& [cb, pb] : b) out[ca + cb] += pa * pb;
    return out;
}

template <class P>
struct BasicNode {
    int value = 0;
    BasicPmf<P> pmf;
};

std::uint64_t factorial(int m) {
    std::uint64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

// Law of the cost at an internal node: enumerate the m! equiprobable child
// orders, walk each prefix until the node's value is determined, and
// convolve the costs of the children actually evaluated.
template <class P>
BasicNode<P> compose(const std::vector<BasicNode<P>>& children, bool is_and,
                     const P& order_weight) {
    const int m = static_cast<int>(children.size());
    const int stop_value = is_and ? 0 : 1;
    BasicNode<P> out;
    out.value = is_and ? 1 : 0;
    for (const auto& ch : children)
        if (ch.value == stop_value) out.value = stop_value;

    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    do {
        BasicPmf<P> prefix{{0, P(1)}};
        for (int idx : order) {
            prefix = conv(prefix, children[static_cast<std::size_t>(idx)].pmf);
            if (children[static_cast<std::size_t>(idx)].value == stop_value) break;
        }
        for (const auto& [c, pr] : prefix) out.pmf[c] += order_weight * pr;
    } while (std::next_permutation(order.begin(), order.end()));
    return out;
}

// Recursive evaluation over the implicit tree. Subtrees with at most 63
// leaves are memoized by their packed bit pattern; since the tree height is
// even, the AND/OR label of a node is determined by its span alone, so the
// key (marker bit | bits) identifies the distribution.
template <class P>
BasicNode<P> node_rec(const LeafVector& v, std::uint64_t lo, std::uint64_t span,
                      const P& order_weight,
                      std::map<std::uint64_t, BasicNode<P>>& memo) {
    if (span == 1) return BasicNode<P>{v.bits[lo], {{1, P(1)}}};

    const bool memoizable = span < 64;
    std::uint64_t key = 0;
    if (memoizable) {
        key = std::uint64_t{1} << span;
        for (std::uint64_t i = 0; i < span; ++i)
            key |= static_cast<std::uint64_t>(v.bits[lo + i]) << i;
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    const int m = v.shape.arity;
    const std::uint64_t child_span = span / static_cast<std::uint64_t>(m);
    // span = m^j; the node is AND iff j is even.
    int j = 0;
    for (std::uint64_t s = span; s > 1; s /= static_cast<std::uint64_t>(m)) ++j;
    const bool is_and = j % 2 == 0;

    std::vector<BasicNode<P>> children;
    children.reserve(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c)
        children.push_back(node_rec(v, lo + static_cast<std::uint64_t>(c) * child_span,
                                    child_span, order_weight, memo));
    BasicNode<P> out = compose(children, is_and, order_weight);
    if (memoizable) memo.emplace(key, out);
    return out;
}

void check_pmf_input(const LeafVector& v, const Caps& caps) {
    if (v.shape.arity > 6)
        throw CapExceeded("exact PMFs enumerate child orders; arity is limited to 6");
    if (v.shape.leaf_count > caps.max_pmf_support)
        throw CapExceeded("max_pmf_support: leaf count exceeds " +
                          std::to_string(caps.max_pmf_support));
}

} // namespace

struct ExactDistEngine::Impl {
    Caps caps;
    std::map<std::uint64_t, BasicNode<Rational>> memo;
};

ExactDistEngine::ExactDistEngine(const Caps& caps) : impl_(new Impl{caps, {}}) {}
ExactDistEngine::~ExactDistEngine() = default;
ExactDistEngine::ExactDistEngine(ExactDistEngine&&) noexcept = default;
ExactDistEngine& ExactDistEngine::operator=(ExactDistEngine&&) noexcept = default;

CostPMF ExactDistEngine::cost_pmf(const LeafVector& v) {
    check_pmf_input(v, impl_->caps);
    const Rational w = Rational(1) / Rational(factorial(v.shape.arity));
    auto node = node_rec<Rational>(v, 0, v.shape.leaf_count, w, impl_->memo);
    return CostPMF{std::move(node.pmf)};
}

CostPMF exact_cost_pmf(const LeafVector& v, const Caps& caps) {
    ExactDistEngine engine(caps);
    return engine.cost_pmf(v);
}

BivariatePMF z_recursion_pmf(int m, int k, const Caps& caps) {
    if (m < 2) throw std::invalid_argument("arity must be >= 2");
    if (k < 0) throw std::invalid_argument("half_height must be >= 0");

    // PMF of the sum of j uniform{0..m-1} coins, for j = 0..m-1.
    std::vector<std::vector<Rational>> usum(static_cast<std::size_t>(m));
    usum[0] = {Rational(1)};
    for (int j = 1; j < m; ++j) {
        const auto& prev = usum[static_cast<std::size_t>(j - 1)];
        std::vector<Rational> cur(prev.size() + static_cast<std::size_t>(m - 1),
                                  Rational(0));
        for (std::size_t s = 0; s < prev.size(); ++s)
            for (int u = 0; u < m; ++u) cur[s + static_cast<std::size_t>(u)] +=
                prev[s] / m;
        usum[static_cast<std::size_t>(j)] = std::move(cur);
    }

    BivariatePMF level = BivariatePMF::point(1, 1);
    const int proj_max = (m - 1) * (m - 1);
    for (int step = 0; step < k; ++step) {
        // Building blocks from the previous level's law L:
        //   base  = L^{*m}                       (the m identity copies)
        //   swapped = L pushed through (z0,z1) -> (z1,z0)
        //   to0 / to1 = coordinate-0 marginal placed on coordinate 0 / 1
        BivariatePMF base = level;
        for (int i = 1; i < m; ++i) base = convolve(base, level);

        BivariatePMF swapped;
        for (const auto& [key, pr] : level.p) swapped.p[{key.second, key.first}] += pr;

        const CostPMF marg0 = level.marginal(0);
        BivariatePMF to0, to1;
        for (const auto& [c, pr] : marg0.p) {
            to0.p[{c, 0}] = pr;
            to1.p[{0, c}] = pr;
        }

        std::vector<BivariatePMF> swap_pow(static_cast<std::size_t>(m));
        std::vector<BivariatePMF> to0_pow(static_cast<std::size_t>(proj_max) + 1);
        std::vector<BivariatePMF> to1_pow(static_cast<std::size_t>(proj_max) + 1);
        swap_pow[0] = to0_pow[0] = to1_pow[0] = BivariatePMF::point(0, 0);
        for (int i = 1; i < m; ++i) swap_pow[i] = convolve(swap_pow[i - 1], swapped);
        for (int i = 1; i <= proj_max; ++i) {
            to0_pow[i] = convolve(to0_pow[i - 1], to0);
            to1_pow[i] = convolve(to1_pow[i - 1], to1);
        }

        // One level of the coupled recursion, grouped by the value u of the
        // type-selecting coin, the sum s1 of the first u coins (copies read
        // into coordinate 0) and the sum s2 of the remaining m-1-u coins.
        BivariatePMF next;
        for (int u = 0; u < m; ++u) {
            const auto& d1 = usum[static_cast<std::size_t>(u)];
            const auto& d2 = usum[static_cast<std::size_t>(m - 1 - u)];
            for (std::size_t s1 = 0; s1 < d1.size(); ++s1) {
                if (d1[s1] == 0) continue;
                for (std::size_t s2 = 0; s2 < d2.size(); ++s2) {
                    if (d2[s2] == 0) continue;
                    const int extra1 = proj_max - static_cast<int>(s1) -
                                       static_cast<int>(s2);
                    const Rational w = d1[s1] * d2[s2] / m;
                    BivariatePMF contrib = convolve(base, swap_pow[u]);
                    contrib = convolve(contrib, to0_pow[s1]);
                    contrib = convolve(contrib, to1_pow[static_cast<std::size_t>(extra1)]);
                    next.add_weighted(contrib, w);
                }
            }
        }
        if (next.p.size() > caps.max_pmf_support)
            throw CapExceeded("max_pmf_support: joint support exceeds " +
                              std::to_string(caps.max_pmf_support));
        level = std::move(next);
    }
    return level;
}

WorstCaseReport verify_worst_case(int m, int k, const Caps& caps) {
    const TreeShape shape = TreeShape::make(m, k, caps);
    const std::uint64_t n = shape.leaf_count;
    if (n > caps.max_exhaustive_n || n > 63)
        throw CapExceeded("max_exhaustive_n: 2^n scan needs n <= " +
                          std::to_string(std::min<std::uint64_t>(caps.max_exhaustive_n, 63)));

    ExactDistEngine engine(caps);
    const LeafVector v1 = worst_input(m, k, 1, caps);
    const LeafVector v0 = worst_input(m, k, 0, caps);
    const CostPMF top1 = engine.cost_pmf(v1);
    const CostPMF top0 = engine.cost_pmf(v0);

    WorstCaseReport report;
    report.m = m;
    report.k = k;
    constexpr std::size_t kMaxListed = 16;
    std::vector<std::uint8_t> bits(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::uint64_t i = 0; i < n; ++i)
            bits[i] = static_cast<std::uint8_t>((mask >> i) & 1);
        const LeafVector v = LeafVector::make(shape, bits);
        const CostPMF pmf = engine.cost_pmf(v);
        const int rv = root_value(v);
        ++report.inputs_checked;
        (rv == 0 ? report.root0_count : report.root1_count) += 1;

        if (!dominates(pmf, top1))
            report.violations.push_back(v.to_string() + " not dominated by root-1 worst input");
        else if (pmf == top1 && report.maximizers_root1.size() < kMaxListed)
            report.maximizers_root1.push_back(v.to_string());
        if (rv == 0) {
            if (!dominates(pmf, top0))
                report.violations.push_back(v.to_string() +
                                            " not dominated by root-0 worst input");
            else if (pmf == top0 && report.maximizers_root0.size() < kMaxListed)
                report.maximizers_root0.push_back(v.to_string());
        }
    }
    return report;
}

std::vector<ConvergenceStep> convergence_diagnostics(int m, int k_max, const Caps& caps) {
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    const double alpha = static_cast<double>(spectral(m).alpha);

    std::vector<ConvergenceStep> steps;
    std::map<std::uint64_t, BasicNode<double>> memo;
    const double w = 1.0 / static_cast<double>(factorial(m));

    // (x, probability) support points of the previous rescaled law.
    std::vector<std::pair<double, double>> prev;
    for (int k = 1; k <= k_max; ++k) {
        const LeafVector v = worst_input(m, k, 1, caps);
        check_pmf_input(v, caps);
        // Float mode: the coordinate-1 marginal of the coupled recursion is
        // exactly the cost law of the root-1 worst input, computed here
        // bottom-up in doubles for speed at large k.
        auto node = node_rec<double>(v, 0, v.shape.leaf_count, w, memo);
        const double scale =
            std::pow(static_cast<double>(v.shape.leaf_count), -alpha);

        std::vector<std::pair<double, double>> cur;
        cur.reserve(node.pmf.size());
        double mean = 0;
        for (const auto& [c, pr] : node.pmf) {
            cur.emplace_back(static_cast<double>(c) * scale, pr);
            mean += static_cast<double>(c) * scale * pr;
        }

        ConvergenceStep step;
        step.k = k;
        step.rescaled_mean = mean;
        if (!prev.empty()) {
            // Merge-walk both supports, tracking the two CDFs.
            double f_cur = 0, f_prev = 0, ks = 0, w1 = 0;
            std::size_t i = 0, j = 0;
            double x = 0;
            bool have_x = false;
            while (i < cur.size() || j < prev.size()) {
                double nx = i < cur.size() && (j >= prev.size() || cur[i].first <= prev[j].first)
                                ? cur[i].first
                                : prev[j].first;
                if (have_x) w1 += std::abs(f_cur - f_prev) * (nx - x);
                while (i < cur.size() && cur[i].first <= nx) f_cur += cur[i++].second;
                while (j < prev.size() && prev[j].first <= nx) f_prev += prev[j++].second;
                ks = std::max(ks, std::abs(f_cur - f_prev));
                x = nx;
                have_x = true;
            }
            step.kolmogorov = ks;
            step.wasserstein = w1;
        }
        steps.push_back(step);
        prev = std::move(cur);
    }
    return steps;
}

} // namespace gametree
