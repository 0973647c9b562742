#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gametree/caps.hpp"
#include "gametree/pmf.hpp"
#include "gametree/tree.hpp"

namespace gametree {

/// Exact cost-distribution engine. Subtree PMFs are memoized by their leaf
/// pattern, so scans over many inputs (and the self-similar worst inputs)
/// share almost all of the work. An engine instance is not thread-safe;
/// use one per worker.
class ExactDistEngine {
public:
    explicit ExactDistEngine(const Caps& caps = {});
    ~ExactDistEngine();
    ExactDistEngine(ExactDistEngine&&) noexcept;
    ExactDistEngine& operator=(ExactDistEngine&&) noexcept;

    /// PMF of the number of leaves read on input v: point mass at 1 for a
    /// leaf; for an internal node, the law of the total cost under a
    /// uniformly random child order with early stopping, the children's
    /// costs being independent.
    CostPMF cost_pmf(const LeafVector& v);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper around ExactDistEngine.
CostPMF exact_cost_pmf(const LeafVector& v, const Caps& caps = {});

/// Exact joint law of the (root-0, root-1) cost pair after k coupled
/// recursion levels: level 0 is a point mass at (1,1); every level draws one
/// set of child-order coins and feeds it to both coordinates, convolving
/// independent copies of the previous level.
BivariatePMF z_recursion_pmf(int m, int k, const Caps& caps = {});

/// Exhaustive stochastic-dominance scan over all 2^n inputs.
struct WorstCaseReport {
    int m = 0, k = 0;
    std::uint64_t inputs_checked = 0;
    std::uint64_t root0_count = 0, root1_count = 0;
    std::vector<std::string> violations;       // expected empty
    std::vector<std::string> maximizers_root1; // inputs whose law equals the root-1 maximum
    std::vector<std::string> maximizers_root0;
    bool ok() const { return violations.empty(); }
};

/// Checks that every input is dominated (in stochastic order) by the
/// recursive root-1 worst input, and every root-0 input by the root-0 one.
WorstCaseReport verify_worst_case(int m, int k, const Caps& caps = {});

/// Distance between consecutive rescaled cost laws of the worst inputs.
struct ConvergenceStep {
    int k = 0;
    double rescaled_mean = 0;                // E C / n^alpha at this level
    std::optional<double> kolmogorov;        // vs level k-1, absent for the first level
    std::optional<double> wasserstein;
};

std::vector<ConvergenceStep> convergence_diagnostics(int m, int k_max, const Caps& caps = {});

} // namespace gametree
