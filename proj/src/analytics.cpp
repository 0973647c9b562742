#include "gametree/analytics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "gametree/errors.hpp"

namespace gametree {

namespace {

// Symmetric 2x2 rational matrix, stored as the three free entries.
struct Sym2 {
    Rational x00, x01, x11;
};

// Moments of the uniform{0,..,m-1} coin and of the per-level random
// coefficient matrix T = [[m+P, U0], [Q, m]], where U0, U_1..U_{m-1} are
// i.i.d. uniform coins, P = sum_{r<=U0} U_r and Q = U0 + sum_r (m-1-U_r).
struct CoinMoments {
    Rational u1, u2;                      // E U, E U^2
    Rational eP, eP2, ePU0, ePQ;          // mixed moments of P
    Rational eQ, eQ2, eU0Q;
    // g[ac][bd] = E[T_ac T_bd], indexed by flattened entry (00,01,10,11).
    Rational g0000, g0001, g0101, g0010, g0011, g0110, g0111, g1010, g1011, g1111;
};

CoinMoments coin_moments(int m) {
    CoinMoments c;
    const Rational M = m;
    c.u1 = Rational(m - 1) / 2;
    c.u2 = Rational((m - 1) * (2 * m - 1)) / 6;
    const Rational& u1 = c.u1;
    const Rational& u2 = c.u2;
    c.eP = u1 * u1;
    c.eP2 = u1 * u2 + (u2 - u1) * u1 * u1;
    c.ePU0 = u1 * u2;
    c.ePQ = Rational(m - 1) * u1 * u1 + Rational(m - 2) * u1 * u1 * u1;
    c.eQ = M * u1;
    c.eQ2 = M * u2 + M * (M - 1) * u1 * u1;
    c.eU0Q = u2 + Rational(m - 1) * u1 * u1;
    c.g0000 = M * M + 2 * M * c.eP + c.eP2;
    c.g0001 = M * u1 + c.ePU0;
    c.g0101 = u2;
    c.g0010 = M * M * u1 + c.ePQ;
    c.g0011 = M * (M + c.eP);
    c.g0110 = c.eU0Q;
    c.g0111 = M * u1;
    c.g1010 = c.eQ2;
    c.g1011 = M * M * u1;
    c.g1111 = M * M;
    return c;
}

// Sum over the independent copies of E[A X A^T]: the m identity copies,
// the swap copies (one per unit of U0) and the rank-one projection copies.
Sym2 phi(const Sym2& x, int m, const CoinMoments& c) {
    const Rational u1 = c.u1;
    const Rational proj1 = Rational((m - 1) * (m - 1)) / 2;  // E (#z0->coord1 copies)
    Sym2 out;
    out.x00 = Rational(m) * x.x00 + u1 * x.x11 + u1 * u1 * x.x00;
    out.x01 = Rational(m) * x.x01 + u1 * x.x01;
    out.x11 = Rational(m) * x.x11 + u1 * x.x00 + proj1 * x.x00;
    return out;
}

// E[T Y T^T] for symmetric Y.
Sym2 theta(const Sym2& y, const CoinMoments& c) {
    Sym2 out;
    out.x00 = c.g0000 * y.x00 + 2 * c.g0001 * y.x01 + c.g0101 * y.x11;
    out.x01 = c.g0010 * y.x00 + (c.g0011 + c.g0110) * y.x01 + c.g0111 * y.x11;
    out.x11 = c.g1010 * y.x00 + 2 * c.g1011 * y.x01 + c.g1111 * y.x11;
    return out;
}

Real to_real(const Rational& r) {
    return Real(boost::multiprecision::numerator(r)) /
           Real(boost::multiprecision::denominator(r));
}

// Solves a 3x3 linear system by Gaussian elimination with partial pivoting.
std::array<Real, 3> solve3(std::array<std::array<Real, 3>, 3> a, std::array<Real, 3> b) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
        if (a[piv][col] == 0) throw NumericError("singular second-moment system");
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < 3; ++r) {
            Real f = a[r][col] / a[col][col];
            for (int cc = col; cc < 3; ++cc) a[r][cc] -= f * a[col][cc];
            b[r] -= f * b[col];
        }
    }
    std::array<Real, 3> x{};
    for (int r = 2; r >= 0; --r) {
        Real s = b[r];
        for (int cc = r + 1; cc < 3; ++cc) s -= a[r][cc] * x[cc];
        x[r] = s / a[r][r];
    }
    return x;
}

} // namespace

MeanMatrix mean_matrix(int m) {
    if (m < 2) throw std::invalid_argument("arity must be >= 2");
    const Rational half = Rational(m - 1) / 2;
    return MeanMatrix{Rational(m) + half * half, Rational(m) * half, half, Rational(m)};
}

Rational expected_cost(int m, int k, int start) {
    if (k < 0) throw std::invalid_argument("half_height must be >= 0");
    if (start != 0 && start != 1) throw std::invalid_argument("start must be 0 or 1");
    const MeanMatrix M = mean_matrix(m);
    Rational v0 = start == 0 ? 1 : 0, v1 = start == 1 ? 1 : 0;
    for (int i = 0; i < k; ++i) {
        Rational n0 = M.a00 * v0 + M.a01 * v1;
        Rational n1 = M.a10 * v0 + M.a11 * v1;
        v0 = n0;
        v1 = n1;
    }
    return v0 + v1;
}

SpectralData spectral(int m) {
    const MeanMatrix M = mean_matrix(m);
    SpectralData sd;
    sd.m = m;
    const Real tr = to_real(M.a00 + M.a11);
    const Real s = sqrt(Real(16 * m + (m - 1) * (m - 1)));
    const Real gap = Real(m - 1) * s / 4;     // lambda1 - lambda2
    sd.lambda1 = (tr + gap) / 2;
    sd.lambda2 = (tr - gap) / 2;
    const Real log_m2 = 2 * log(Real(m));
    sd.alpha = log(sd.lambda1) / log_m2;
    sd.beta = log(sd.lambda2) / log_m2;
    sd.c0 = Real(1) / 2 + Real(m + 3) / (2 * s);
    sd.c1 = Real(1) / 2 + Real(3 * m + 1) / (2 * s);
    sd.c2 = sd.c1 - 1;
    return sd;
}

VarianceResult variance_constant(int m, int levels) {
    const CoinMoments cm = coin_moments(m);
    const MeanMatrix M = mean_matrix(m);
    const SpectralData sd = spectral(m);

    VarianceResult out;
    out.levels.reserve(static_cast<std::size_t>(levels));

    // Exact per-level recursion from the point mass at (1,1):
    //   mu' = E[T] mu,   S' = Phi(S - mu mu^T) + Theta(mu mu^T).
    Rational mu0 = 1, mu1 = 1;
    Sym2 S{1, 1, 1};
    Real lam_pow = 1;
    for (int k = 1; k <= levels; ++k) {
        Sym2 mm{mu0 * mu0, mu0 * mu1, mu1 * mu1};
        Sym2 cov{S.x00 - mm.x00, S.x01 - mm.x01, S.x11 - mm.x11};
        Sym2 Sn = phi(cov, m, cm);
        Sym2 Tn = theta(mm, cm);
        S = Sym2{Sn.x00 + Tn.x00, Sn.x01 + Tn.x01, Sn.x11 + Tn.x11};
        Rational n0 = M.a00 * mu0 + M.a10 * mu1;   // E[T] = M^T
        Rational n1 = M.a01 * mu0 + M.a11 * mu1;
        mu0 = n0;
        mu1 = n1;
        lam_pow *= sd.lambda1 * sd.lambda1;
        MomentLevel lvl;
        lvl.k = k;
        lvl.mean0 = mu0;
        lvl.mean1 = mu1;
        lvl.var1 = S.x11 - mu1 * mu1;
        lvl.normalized_var1 = to_real(lvl.var1) / lam_pow;
        out.levels.push_back(std::move(lvl));
    }

    // Fixed point of the normalized second moment:
    //   S = lambda1^{-2} [Phi(S - mu mu^T) + Theta(mu mu^T)],  mu = (c0, c1),
    // linear in the three free entries of S.
    const Real il2 = 1 / (sd.lambda1 * sd.lambda1);
    // Real-coefficient images of Phi on the basis vectors.
    auto phi_real = [&](int basis) {
        Sym2 e{basis == 0 ? 1 : 0, basis == 1 ? 1 : 0, basis == 2 ? 1 : 0};
        Sym2 img = phi(e, m, cm);
        return std::array<Real, 3>{to_real(img.x00), to_real(img.x01), to_real(img.x11)};
    };
    std::array<std::array<Real, 3>, 3> A{};
    for (int b = 0; b < 3; ++b) {
        auto col = phi_real(b);
        for (int r = 0; r < 3; ++r) A[r][b] = (r == b ? Real(1) : Real(0)) - il2 * col[r];
    }
    // Right side: lambda1^{-2} (Theta - Phi)(mu mu^T) evaluated in Real.
    const Real mu_[3] = {sd.c0 * sd.c0, sd.c0 * sd.c1, sd.c1 * sd.c1};
    auto apply = [&](auto&& op) {
        std::array<Real, 3> res{0, 0, 0};
        for (int b = 0; b < 3; ++b) {
            Sym2 e{b == 0 ? 1 : 0, b == 1 ? 1 : 0, b == 2 ? 1 : 0};
            Sym2 img = op(e);
            const Real w = mu_[b];
            res[0] += w * to_real(img.x00);
            res[1] += w * to_real(img.x01);
            res[2] += w * to_real(img.x11);
        }
        return res;
    };
    auto th = apply([&](const Sym2& e) { return theta(e, cm); });
    auto ph = apply([&](const Sym2& e) { return phi(e, m, cm); });
    std::array<Real, 3> rhs{il2 * (th[0] - ph[0]), il2 * (th[1] - ph[1]),
                            il2 * (th[2] - ph[2])};
    auto sol = solve3(A, rhs);
    out.d = sol[2] - sd.c1 * sd.c1;
    return out;
}

TollMoments toll_moments(int m, int k_max) {
    const CoinMoments cm = coin_moments(m);
    const MeanMatrix M = mean_matrix(m);
    const SpectralData sd = spectral(m);
    const Rational u1 = cm.u1;

    // G = E[(T - E T)^T (T - E T)] = E[T^T T] - M M^T (E T = M^T).
    const Rational G00 = cm.g0000 + cm.g1010 - (M.a00 * M.a00 + M.a01 * M.a01);
    const Rational G01 = cm.g0001 + cm.g1011 - (M.a00 * M.a10 + M.a01 * M.a11);
    const Rational G11 = cm.g0101 + cm.g1111 - (M.a10 * M.a10 + M.a11 * M.a11);

    // ess-sup ||(T - E T) mu|| over the coin outcomes, grouped by
    // (U0, sum of the first U0 coins, sum of the rest).
    auto ess_sup_sq = [&](const Real& m0, const Real& m1) {
        Real best = 0;
        for (int u = 0; u < m; ++u)
            for (int s1 = 0; s1 <= u * (m - 1); ++s1)
                for (int s2 = 0; s2 <= (m - 1 - u) * (m - 1); ++s2) {
                    const Real d00 = Real(s1) - to_real(u1 * u1);
                    const Real d01 = Real(u) - to_real(u1);
                    const int q = u + (m - 1) * (m - 1) - s1 - s2;
                    const Real d10 = Real(q) - to_real(Rational(m) * u1);
                    const Real r0 = d00 * m0 + d01 * m1;
                    const Real r1 = d10 * m0;
                    const Real nsq = r0 * r0 + r1 * r1;
                    if (nsq > best) best = nsq;
                }
        return best;
    };

    TollMoments out;
    out.sup_mean_sq = 0;
    out.sup_ess = 0;
    Rational mu0 = 1, mu1 = 1;
    Real lam_pow = sd.lambda1;      // lambda1^k at k = 1
    Real prev_mean = -1, prev_ess = -1;
    bool converged = false;
    for (int k = 1; k <= k_max; ++k) {
        const Rational quad = G00 * mu0 * mu0 + 2 * G01 * mu0 * mu1 + G11 * mu1 * mu1;
        const Real mean_sq = to_real(quad) / (lam_pow * lam_pow);
        const Real ess = sqrt(ess_sup_sq(to_real(mu0), to_real(mu1))) / lam_pow;
        if (mean_sq > out.sup_mean_sq) {
            out.sup_mean_sq = mean_sq;
            out.k_at_mean = k;
        }
        if (ess > out.sup_ess) {
            out.sup_ess = ess;
            out.k_at_ess = k;
        }
        if (prev_mean >= 0 && abs(mean_sq - prev_mean) < Real("1e-12") &&
            abs(ess - prev_ess) < Real("1e-12")) {
            converged = true;
            break;
        }
        prev_mean = mean_sq;
        prev_ess = ess;
        Rational n0 = M.a00 * mu0 + M.a10 * mu1;
        Rational n1 = M.a01 * mu0 + M.a11 * mu1;
        mu0 = n0;
        mu1 = n1;
        lam_pow *= sd.lambda1;
    }
    if (!converged)
        throw NumericError("toll-moment scan did not converge within k_max levels");
    out.ratio = out.sup_ess * out.sup_ess / out.sup_mean_sq;

    // Same ratio along the limit direction (c0, c1); the common scale cancels.
    {
        const Real m0 = sd.c0, m1 = sd.c1;
        const Real quad = to_real(G00) * m0 * m0 + 2 * to_real(G01) * m0 * m1 +
                          to_real(G11) * m1 * m1;
        out.ratio_limit = ess_sup_sq(m0, m1) / quad;
    }
    return out;
}

TailConstants mgf_constant(int m, double q) {
    const SpectralData sd = spectral(m);
    const double alpha = static_cast<double>(sd.alpha);
    if (!(q > 1.0 / alpha && q < 2.0))
        throw std::invalid_argument("q must lie in (1/alpha, 2)");
    const TollMoments tm = toll_moments(m);

    TailConstants tc;
    tc.q = q;
    tc.c = Real("1.53");
    tc.xi = 1 - pow(Real(m), 2 * (1 - Real(q) * sd.alpha));
    tc.psi_q = (exp(tc.c) - 1 - tc.c) / pow(tc.c, Real(q));
    tc.sup_mean_sq = tm.sup_mean_sq;
    tc.sup_ess = tm.sup_ess;
    tc.K = tc.sup_mean_sq / pow(tc.sup_ess, 2 - Real(q)) * tc.psi_q / tc.xi;
    tc.kappa = Real(q) / (Real(q) - 1);
    tc.L = pow(tc.K, 1 - tc.kappa) * pow(tc.kappa - 1, tc.kappa - 1) /
           pow(tc.kappa, tc.kappa);
    return tc;
}

Real tail_bound(int m, double kappa, double t) {
    const SpectralData sd = spectral(m);
    const double kappa_max = static_cast<double>(1 / (1 - sd.alpha));
    if (!(kappa > 2.0 && kappa < kappa_max))
        throw std::invalid_argument("kappa must lie in (2, 1/(1-alpha))");
    if (!(t > 0)) throw std::invalid_argument("t must be positive");
    const TailConstants tc = mgf_constant(m, kappa / (kappa - 1));
    return exp(-tc.L * pow(Real(t), Real(kappa)));
}

std::vector<Table1Row> table1(const std::vector<int>& ms) {
    std::vector<Table1Row> rows;
    rows.reserve(ms.size());
    for (int m : ms) {
        const SpectralData sd = spectral(m);
        const VarianceResult vr = variance_constant(m, 0);
        rows.push_back(Table1Row{m, static_cast<double>(sd.alpha),
                                 static_cast<double>(vr.d),
                                 static_cast<double>(1 / (1 - sd.alpha))});
    }
    return rows;
}

} // namespace gametree
