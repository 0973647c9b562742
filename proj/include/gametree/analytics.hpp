#pragma once

#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "gametree/pmf.hpp"

namespace gametree {

/// High-precision real type for spectral data and limit constants.
using Real = boost::multiprecision::cpp_bin_float_50;

/// 2x2 mean offspring matrix, exact rationals. Column j holds the expected
/// (type-0, type-1) offspring of a type-j individual.
struct MeanMatrix {
    Rational a00, a01, a10, a11;
    Rational det() const { return a00 * a11 - a01 * a10; }
};

/// [[m + ((m-1)/2)^2, m(m-1)/2], [(m-1)/2, m]].
MeanMatrix mean_matrix(int m);

/// Expected total cost after k recursion levels: (1,1) M^k e_start,
/// exact rational via repeated matrix-vector products.
Rational expected_cost(int m, int k, int start);

/// Eigenvalues and limit-mean constants of the mean matrix.
/// lambda1 > lambda2 > 0, lambda1*lambda2 = m^2; alpha = log lambda1 / (2 log m),
/// beta likewise for lambda2 (taken positive; see expected-cost identity
/// E C = c1 lambda1^k - c2 lambda2^k with c2 = c1 - 1).
struct SpectralData {
    int m = 2;
    Real lambda1, lambda2;
    Real alpha, beta;
    Real c0, c1, c2;
};

SpectralData spectral(int m);

/// Exact first and second moments of the coupled cost pair per level.
struct MomentLevel {
    int k = 0;
    Rational mean0, mean1;          // E Z_{n,0}, E Z_{n,1}
    Rational var1;                  // Var Z_{n,1}, exact
    Real normalized_var1;           // Var Z_{n,1} / lambda1^{2k}
};

struct VarianceResult {
    Real d;                         // limit of normalized_var1 (fixed point)
    std::vector<MomentLevel> levels;
};

/// Propagates E Z and E[Z Z^T] exactly through the recursion for
/// k = 1..levels, and solves the 3-unknown linear fixed-point system for the
/// limit second moment to obtain d = S11 - c1^2.
VarianceResult variance_constant(int m, int levels = 20);

/// Normalized toll-term moments, b_n = (T - E T) mu_{k-1} / lambda1^k where
/// T is the random per-level coefficient matrix. Sups are taken over
/// k = 1..k_max with a convergence stopping rule.
struct TollMoments {
    Real sup_mean_sq;   // sup_k E ||b_n||^2
    Real sup_ess;       // sup_k ess-sup ||b_n||
    Real ratio;         // sup_ess^2 / sup_mean_sq
    Real ratio_limit;   // same ratio with the limit direction (c0, c1)
    int k_at_mean = 0, k_at_ess = 0;
};

TollMoments toll_moments(int m, int k_max = 60);

/// Explicit MGF / tail-exponent constants.
struct TailConstants {
    Real q, c;          // c is the Psi overlap constant, 1.53
    Real xi;            // 1 - m^{2(1-q alpha)}
    Real psi_q;         // (e^c - 1 - c)/c^q
    Real sup_mean_sq, sup_ess;
    Real K;             // K_q
    Real kappa;         // q/(q-1)
    Real L;             // K^{1-kappa} (kappa-1)^{kappa-1} / kappa^kappa
};

/// Valid for q in (1/alpha_m, 2); throws std::invalid_argument outside.
TailConstants mgf_constant(int m, double q);

/// exp(-L_kappa t^kappa), kappa in (2, 1/(1-alpha_m)); t > 0.
Real tail_bound(int m, double kappa, double t);

struct Table1Row {
    int m;
    double alpha, d, kappa;         // kappa = 1/(1-alpha)
};

std::vector<Table1Row> table1(const std::vector<int>& ms);

} // namespace gametree
