#include "qpt/wss.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <thread>

#include "qpt/rng.hpp"

namespace qpt {

namespace {

Rational schur_from_h(const std::vector<int>& parts, const std::vector<Rational>& h) {
    const int t = static_cast<int>(parts.size());
    if (t == 0) return Rational(1);
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(t), std::vector<Rational>(static_cast<std::size_t>(t)));
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) {
            const int k = parts[static_cast<std::size_t>(i)] - i + j;
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                (k < 0 || k >= static_cast<int>(h.size())) ? Rational(0) : h[static_cast<std::size_t>(k)];
        }
    return detail::rational_det(std::move(m));
}

void check_partition_cap(int n_copies, int max_rows, unsigned long long cap, const char* who) {
    const unsigned long long count = count_partitions(n_copies, max_rows);
    if (count > cap)
        throw cap_exceeded(std::string(who) + ": partition count " + std::to_string(count) +
                           " exceeds cap " + std::to_string(cap) + "; use the Monte-Carlo method");
}

// Two-row sums on a spiked spectrum (x, u, ..., u). Peeling the leading
// variable from the h generating function turns the Jacobi-Trudi determinant
// into two positive terms,
//   s_(a,b) = g_b h_a - g_{a+1} h_{b-1},   g_m = C(m+k-1, m) u^m,
// which stays accurate where the generic determinant cancels catastrophically.
// Returns nothing when the two terms themselves nearly cancel (near-uniform
// spectra); the generic route is accurate there.
std::optional<double> accept_two_row_spiked(double u, int k_tail, int n_copies,
                                            const std::vector<double>& probs) {
    const double ninf = -std::numeric_limits<double>::infinity();
    std::vector<double> log_g(static_cast<std::size_t>(n_copies) + 2, ninf);
    log_g[0] = 0.0;
    if (u > 0) {
        const double lu = std::log(u);
        for (int m = 1; m <= n_copies + 1; ++m)
            log_g[static_cast<std::size_t>(m)] = std::lgamma(static_cast<double>(m + k_tail)) -
                                                 std::lgamma(static_cast<double>(m) + 1.0) -
                                                 std::lgamma(static_cast<double>(k_tail)) + m * lu;
    }
    const std::vector<double> logh = detail::log_h_table(probs, n_copies);

    long double total = 0;
    for (int j = 0; j <= n_copies / 2; ++j) {
        const int a = n_copies - j;
        double log_s;
        if (j == 0) {
            log_s = logh[static_cast<std::size_t>(n_copies)];
        } else {
            const double t1 = log_g[static_cast<std::size_t>(j)] + logh[static_cast<std::size_t>(a)];
            const double t2 = log_g[static_cast<std::size_t>(a) + 1] + logh[static_cast<std::size_t>(j) - 1];
            if (std::isinf(t1)) continue;
            if (t2 > t1 - 0.7) return std::nullopt;  // cancellation beyond one bit
            log_s = t1 + std::log1p(-std::exp(t2 - t1));
        }
        // dim(N-j, j) = C(N, j) (N-2j+1)/(N-j+1), a positive product
        const double log_dim = std::lgamma(static_cast<double>(n_copies) + 1.0) -
                               std::lgamma(static_cast<double>(j) + 1.0) -
                               std::lgamma(static_cast<double>(n_copies - j) + 1.0) +
                               std::log(static_cast<double>(n_copies - 2 * j + 1)) -
                               std::log(static_cast<double>(n_copies - j + 1));
        total += std::exp(log_dim + log_s);
    }
    return std::min(1.0, static_cast<double>(total));
}

}  // namespace

template <class T>
WssDistribution<T> wss_distribution(const SpectrumT<T>& alpha, int n_copies,
                                    unsigned long long partition_cap) {
    if (n_copies < 1) throw domain_error("wss_distribution requires N >= 1");
    check_partition_cap(n_copies, alpha.d(), partition_cap, "wss_distribution");
    WssDistribution<T> dist;
    dist.n_copies = n_copies;
    dist.spectrum = alpha;
    if constexpr (std::is_same_v<T, Rational>) {
        const std::vector<Rational> h = detail::h_table(alpha.probs, n_copies + alpha.d());
        for_each_partition(n_copies, alpha.d(), [&](const std::vector<int>& parts) {
            Partition lam(parts);
            Rational p = Rational(dim_symmetric_irrep(lam)) * schur_from_h(parts, h);
            dist.entries.emplace(std::move(lam), std::move(p));
        });
    } else {
        const std::vector<double> logh = detail::log_h_table(alpha.probs, n_copies + alpha.d());
        for_each_partition(n_copies, alpha.d(), [&](const std::vector<int>& parts) {
            const double ls = detail::log_schur_from_log_h(parts, logh);
            const double p = std::isinf(ls) ? 0.0 : std::exp(log_dim_symmetric_irrep(parts) + ls);
            dist.entries.emplace(Partition(parts), p);
        });
    }
    return dist;
}

template WssDistribution<double> wss_distribution(const Spectrum&, int, unsigned long long);
template WssDistribution<Rational> wss_distribution(const RationalSpectrum&, int, unsigned long long);

int lds_length(const std::vector<int>& word, int d) {
    if (d < 1) throw domain_error("lds_length requires d >= 1");
    for (int x : word)
        if (x < 1 || x > d) throw domain_error("lds_length: letter outside 1..d");
    // patience-style: longest strictly increasing subsequence of the negated word
    std::vector<int> tails;  // tails[k] = smallest tail of an increasing subsequence of length k+1
    tails.reserve(static_cast<std::size_t>(d));
    for (int x : word) {
        const int y = -x;
        auto it = std::lower_bound(tails.begin(), tails.end(), y);
        if (it == tails.end())
            tails.push_back(y);
        else
            *it = y;
    }
    return static_cast<int>(tails.size());
}

template <class T>
T accept_prob_rank_test_exact(const SpectrumT<T>& alpha, int n_copies, int r,
                              unsigned long long partition_cap) {
    if (n_copies < 1) throw domain_error("accept_prob_rank_test requires N >= 1");
    if (r < 1) throw domain_error("accept_prob_rank_test requires r >= 1");
    if (n_copies <= r) return scalar_from_int<T>(1);  // LDS of an N-letter word is at most N
    const int max_rows = std::min(r, alpha.d());
    if (max_rows == alpha.d()) return scalar_from_int<T>(1);  // every shape has at most d rows
    check_partition_cap(n_copies, max_rows, partition_cap, "accept_prob_rank_test");
    if constexpr (std::is_same_v<T, Rational>) {
        const std::vector<Rational> h = detail::h_table(alpha.probs, n_copies + max_rows);
        Rational total(0);
        for_each_partition(n_copies, max_rows, [&](const std::vector<int>& parts) {
            total += Rational(dim_symmetric_irrep(Partition(parts))) * schur_from_h(parts, h);
        });
        return total;
    } else {
        if (max_rows == 2) {
            // spiked spectra take the cancellation-free two-row route
            bool tail_equal = true;
            for (int i = 2; i < alpha.d(); ++i)
                if (std::abs(alpha.probs[static_cast<std::size_t>(i)] - alpha.probs[1]) >
                    1e-14 * alpha.probs[1] + 1e-300)
                    tail_equal = false;
            if (tail_equal) {
                const std::optional<double> stable =
                    accept_two_row_spiked(alpha.probs[1], alpha.d() - 1, n_copies, alpha.probs);
                if (stable) return *stable;
            }
        }
        const std::vector<double> logh = detail::log_h_table(alpha.probs, n_copies + max_rows);
        long double total = 0;
        long double error_scale = 0;
        for_each_partition(n_copies, max_rows, [&](const std::vector<int>& parts) {
            double scale = 0;
            const double ls = detail::log_schur_from_log_h(parts, logh, &scale);
            const double log_dim = log_dim_symmetric_irrep(parts);
            if (!std::isinf(ls)) total += std::exp(log_dim + ls);
            if (!std::isinf(scale)) error_scale += std::exp(log_dim + scale);
        });
        // the determinant's absolute error is near machine epsilon times its
        // row scale; refuse to return a value the cancellation has destroyed
        if (1e-15 * static_cast<double>(error_scale) > 1e-6)
            throw cap_exceeded(
                "accept_prob_rank_test: floating-point cancellation too severe at this N; "
                "use rational mode or the Monte-Carlo method");
        return std::min(1.0, static_cast<double>(total));
    }
}

template double accept_prob_rank_test_exact(const Spectrum&, int, int, unsigned long long);
template Rational accept_prob_rank_test_exact(const RationalSpectrum&, int, int, unsigned long long);

template <class T>
T accept_prob_rank_test_brute(const SpectrumT<T>& alpha, int n_copies, int r,
                              unsigned long long word_cap) {
    if (n_copies < 1) throw domain_error("accept_prob_rank_test requires N >= 1");
    if (r < 1) throw domain_error("accept_prob_rank_test requires r >= 1");
    if (n_copies <= r) return scalar_from_int<T>(1);
    const int d = alpha.d();
    double words = std::pow(static_cast<double>(d), n_copies);
    if (words > static_cast<double>(word_cap))
        throw cap_exceeded("accept_prob_rank_test: d^N exceeds the brute-force word cap");

    std::vector<int> word(static_cast<std::size_t>(n_copies), 1);
    T total = scalar_from_int<T>(0);
    for (;;) {
        if (lds_length(word, d) <= r) {
            T w = scalar_from_int<T>(1);
            for (int x : word) w = T(w * alpha.probs[static_cast<std::size_t>(x) - 1]);
            total = T(total + w);
        }
        int pos = n_copies - 1;
        while (pos >= 0 && word[static_cast<std::size_t>(pos)] == d) {
            word[static_cast<std::size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++word[static_cast<std::size_t>(pos)];
    }
    return total;
}

template double accept_prob_rank_test_brute(const Spectrum&, int, int, unsigned long long);
template Rational accept_prob_rank_test_brute(const RationalSpectrum&, int, int, unsigned long long);

McEstimate sample_lds_mc(const Spectrum& alpha, int n_copies, int r, long long samples,
                         std::uint64_t seed, int threads) {
    if (samples < 1) throw domain_error("sample_lds_mc requires samples >= 1");
    if (n_copies < 1) throw domain_error("sample_lds_mc requires N >= 1");
    if (r < 1) throw domain_error("sample_lds_mc requires r >= 1");
    threads = std::max(1, threads);

    const int d = alpha.d();
    std::vector<double> cdf(static_cast<std::size_t>(d));
    double acc = 0;
    for (int i = 0; i < d; ++i) {
        acc += alpha.probs[static_cast<std::size_t>(i)];
        cdf[static_cast<std::size_t>(i)] = acc;
    }
    cdf.back() = 1.0;

    // Each sample's letters are a pure function of (seed, sample index,
    // position), so the result is identical for any thread count.
    auto run_range = [&](long long lo, long long hi) -> long long {
        long long hits = 0;
        std::vector<int> word(static_cast<std::size_t>(n_copies));
        std::vector<int> tails;
        tails.reserve(static_cast<std::size_t>(d));
        for (long long s = lo; s < hi; ++s) {
            const CounterRng rng{seed, static_cast<std::uint64_t>(s)};
            tails.clear();
            for (int j = 0; j < n_copies; ++j) {
                const double u = rng.uniform(static_cast<std::uint64_t>(j));
                const int letter =
                    1 + static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u,
                                                          [](double c, double v) { return c <= v; }) -
                                         cdf.begin());
                const int y = -letter;
                auto it = std::lower_bound(tails.begin(), tails.end(), y);
                if (it == tails.end())
                    tails.push_back(y);
                else
                    *it = y;
            }
            if (static_cast<int>(tails.size()) <= r) ++hits;
        }
        return hits;
    };

    long long hits = 0;
    if (threads == 1) {
        hits = run_range(0, samples);
    } else {
        std::vector<long long> partial(static_cast<std::size_t>(threads), 0);
        std::vector<std::thread> pool;
        const long long chunk = (samples + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const long long lo = std::min<long long>(samples, t * chunk);
            const long long hi = std::min<long long>(samples, lo + chunk);
            pool.emplace_back([&, t, lo, hi] { partial[static_cast<std::size_t>(t)] = run_range(lo, hi); });
        }
        for (auto& th : pool) th.join();
        for (long long p : partial) hits += p;  // fixed-order reduction
    }

    McEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.value = static_cast<double>(hits) / static_cast<double>(samples);
    est.stderr_ = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(samples));
    return est;
}

double lds_upper_bound(double n_letters, int d, int r) {
    if (r < 1 || r > d) throw domain_error("lds_upper_bound requires 1 <= r <= d");
    const double e2 = std::exp(2.0);
    const double base = (1.0 + static_cast<double>(r) / d) * e2 * n_letters / (static_cast<double>(r) * r);
    return std::pow(base, r);
}

}  // namespace qpt
