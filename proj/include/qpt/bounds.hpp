#pragma once

#include "qpt/partitions.hpp"
#include "qpt/wss.hpp"

namespace qpt {

// c_2 is fixed in the three-letter subsequence bound; c_1 is only known to
// exist in (0, 1/2], so scans report an empirical window instead.
inline constexpr double kThreeLetterC2 = 22.0;

// Pr[LDS(w) <= 2] for i.i.d. letters with weights (1-x-y, x, y), via the
// generic Schur sum over two-row shapes. Requires t <= y <= x <= (1-y)/2
// shape: 1-x-y >= x >= y >= 0.
template <class T>
T prob_lds_le2_exact(int n_letters, const T& x, const T& y) {
    if (n_letters < 1) throw domain_error("prob_lds_le2_exact requires N >= 1");
    const T zero = scalar_from_int<T>(0);
    const T first = T(scalar_from_int<T>(1) - x - y);
    if (y < zero || x < y || first < x)
        throw domain_error("prob_lds_le2_exact requires 1-x-y >= x >= y >= 0");
    SpectrumT<T> spec;
    spec.probs = {first, x, y};
    return accept_prob_rank_test_exact(spec, n_letters, 2);
}

// Same probability at x = y = t from the explicit tableau counts
// (i+1)(N-2j+1) for i <= j and (j+1)(N-i-j+1) for i > j; the independent
// second code path.
template <class T>
T prob_lds_le2_ssyt_counts(int n_letters, const T& t) {
    if (n_letters < 1) throw domain_error("prob_lds_le2_ssyt_counts requires N >= 1");
    const T zero = scalar_from_int<T>(0);
    const T one = scalar_from_int<T>(1);
    const T first = T(one - t - t);
    if (t < zero || first < t) throw domain_error("prob_lds_le2_ssyt_counts requires 0 <= t <= 1/3");

    const int n = n_letters;
    // powers of (1-2t) and t
    std::vector<T> pow_first(static_cast<std::size_t>(n) + 1), pow_t(static_cast<std::size_t>(n) + 1);
    pow_first[0] = one;
    pow_t[0] = one;
    for (int i = 1; i <= n; ++i) {
        pow_first[static_cast<std::size_t>(i)] = T(pow_first[static_cast<std::size_t>(i) - 1] * first);
        pow_t[static_cast<std::size_t>(i)] = T(pow_t[static_cast<std::size_t>(i) - 1] * t);
    }
    T total = zero;
    for (int j = 0; j <= n / 2; ++j) {
        const BigInt dj = dim_symmetric_irrep(Partition(j == 0 ? std::vector<int>{n}
                                                               : std::vector<int>{n - j, j}));
        T sj = zero;
        for (int i = 0; i <= n - j; ++i) {
            const long long count = (i <= j) ? static_cast<long long>(i + 1) * (n - 2 * j + 1)
                                             : static_cast<long long>(j + 1) * (n - i - j + 1);
            if (count <= 0) continue;
            sj = T(sj + scalar_from_int<T>(count) * pow_first[static_cast<std::size_t>(i)] *
                            pow_t[static_cast<std::size_t>(n - i)]);
        }
        total = T(total + scalar_from_bigint<T>(dj) * sj);
    }
    return total;
}

struct SubsequenceBoundCheck {
    double exact = 0;      // Pr[cba subsequence] = 1 - Pr[LDS <= 2] at x = y = t
    double bound = 0;      // N^2 t^2 / 4 - c_2 t
    bool satisfied = false;
};

// Reports, never asserts: callers decide what window to scan.
SubsequenceBoundCheck subsequence_bound_check(int n_letters, double t);

// Largest c1' = max(N t) over a grid for which the bound holds everywhere;
// grid points with N t <= window are scanned.
double empirical_c1_window(int max_n, int t_points, double window = 0.5);

// true iff partial sums of p dominate those of q (after zero-padding).
template <class T>
bool majorization_check(const SpectrumT<T>& p, const SpectrumT<T>& q) {
    const int d = std::max(p.d(), q.d());
    T sp = scalar_from_int<T>(0), sq = scalar_from_int<T>(0);
    for (int i = 0; i < d; ++i) {
        if (i < p.d()) sp = T(sp + p.probs[static_cast<std::size_t>(i)]);
        if (i < q.d()) sq = T(sq + q.probs[static_cast<std::size_t>(i)]);
        if (sp < sq) return false;
    }
    return true;
}

// exp(-mu t^2 / (2+t))
double chernoff_tail(double mu, double t);

struct Prod2Budget {
    long long n0 = 0;     // product-test phase, ceil(C * n1 / eps^2), C = 100
    long long n1 = 0;     // n2 + n3
    long long n2 = 0;     // Schmidt-rank batch at distance sqrt(0.05 c1) eps / n^{1/4}
    long long n3 = 0;     // floor(20 sqrt(n) / eps^2)
    long long total = 0;  // n0 + n1
    double delta0 = 0;    // min{sqrt(10/c2), 1/sqrt(2)}
    double c1 = 0;
};

// Copy budget of the two-phase product-of-bipartite-states test; the
// product-test phase is a black-box budget with documented constant C = 100.
Prod2Budget prod2_test_budget(int n, double epsilon, double c1 = 0.5);

}  // namespace qpt
