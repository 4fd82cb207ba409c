#pragma once

#include <cstdint>
#include <string>

#include "qpt/partitions.hpp"

namespace qpt {

// Two readings of the generalized binomial coefficient used in the g_k terms
// for real upper index. `falling_factorial` is binom(x, m) = x(x-1)...(x-m+1)/m!;
// `shifted_inline` drops one factor: binom(x, m) read as x(x-1)...(x-m+2)/(m-1)!.
// The numeric oracle picks falling_factorial; shifted_inline is kept so the
// disagreement is pinned by a test rather than silently resolved.
enum class BinomialConvention { falling_factorial, shifted_inline };

double generalized_binomial(double x, int m,
                            BinomialConvention conv = BinomialConvention::falling_factorial);

// g_k(eps, r, q), one candidate term of the closed-form soundness minimum;
// total on its domain, defined for real k.
double g_k(double epsilon, int r, double q, double k,
           BinomialConvention conv = BinomialConvention::falling_factorial);

enum class BetaArgmin { floor_z_term, ceil_z_term, d_minus_r_term, oracle_interior };

std::string beta_argmin_name(BetaArgmin t);

struct BetaResult {
    double epsilon = 0;
    int r = 0;
    int d = 0;
    double beta = 0;
    double z = 0;  // r*eps/(1-eps)
    BetaArgmin argmin_term = BetaArgmin::floor_z_term;
    double witness_k = 0;
    double witness_q = 0;
    Spectrum witness_spectrum;
};

// Soundness beta(eps) of the (r+1)-copy rank test, closed form:
// 1 - min of the three g-terms, with the witness spectrum reconstructed from
// the minimizing (k, q). Requires 1 <= r < d and 0 < eps <= 1 - r/d.
BetaResult beta_closed_form(double epsilon, int r, int d,
                            BinomialConvention conv = BinomialConvention::falling_factorial);

// r = 1 special case, piecewise in omega = 1-eps (valid for omega in [1/d, 1)).
double beta_r1(double epsilon, int d);

// limit eps -> 1, d -> infinity: 1 - 1/(r+1)!
double beta_limit_large_eps(int r);

// d -> infinity limit of the third closed-form term: eps^r (r+1-eps*r)/(r+1)!
double beta_third_term_limit(double epsilon, int r);

// e_k(alpha), elementary symmetric polynomial; e_k = s_(1^k).
template <class T>
T elementary_symmetric(int k, const SpectrumT<T>& alpha) {
    if (k < 0) throw domain_error("elementary_symmetric requires k >= 0");
    if (k > alpha.d()) return scalar_from_int<T>(0);
    std::vector<T> e(static_cast<std::size_t>(k) + 1, scalar_from_int<T>(0));
    e[0] = scalar_from_int<T>(1);
    for (const T& a : alpha.probs)
        for (int j = std::min<int>(k, alpha.d()); j >= 1; --j)
            e[static_cast<std::size_t>(j)] = T(e[static_cast<std::size_t>(j)] + a * e[static_cast<std::size_t>(j) - 1]);
    return e[static_cast<std::size_t>(k)];
}

struct OracleParams {
    int q_points = 2048;               // interior grid points per k, plus exact endpoints
    long long random_samples = 10000;  // random eps-far spectra cross-check
    std::uint64_t seed = 20240901;
    double tolerance = 1e-9;           // random samples must not beat the family by more
};

// Independent minimization of e_{r+1} over the extremal spectrum family,
// with a random-spectrum sweep that must not beat the family minimum.
BetaResult beta_numeric_oracle(double epsilon, int r, int d, const OracleParams& params = {});

struct FewCopyComplexity {
    long long rounds = 0;
    long long total_copies = 0;
    double per_round_beta = 0;
};

// Number of (r+1)-copy rounds k with beta(eps)^k <= target, using the
// d->infinity per-round soundness; requires 0 < eps < 1/(r+2).
FewCopyComplexity copy_complexity_few_copy(double epsilon, int r, double target_soundness);

}  // namespace qpt
