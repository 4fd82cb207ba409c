#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qpt/partitions.hpp"

namespace qpt {

inline constexpr unsigned long long kDefaultPartitionCap = 2'000'000;
inline constexpr unsigned long long kDefaultWordCap = 43'046'721;  // 3^16

// Outcome distribution of Weak Schur Sampling on N copies:
// Pr[lambda] = dim(P_lambda) * s_lambda(spectrum).
template <class T>
struct WssDistribution {
    int n_copies = 0;
    SpectrumT<T> spectrum;
    std::map<Partition, T> entries;
};

template <class T>
WssDistribution<T> wss_distribution(const SpectrumT<T>& alpha, int n_copies,
                                    unsigned long long partition_cap = kDefaultPartitionCap);

// Longest strictly decreasing subsequence; letters must lie in 1..d.
int lds_length(const std::vector<int>& word, int d);

struct McEstimate {
    double value = 0;
    double stderr_ = 0;
    long long samples = 0;
    std::uint64_t seed = 0;

    bool operator==(const McEstimate&) const = default;
};

// Tr(Pi_{<=r} rho^{(x) N}) = Pr[LDS(x) <= r], three routes.
template <class T>
T accept_prob_rank_test_exact(const SpectrumT<T>& alpha, int n_copies, int r,
                              unsigned long long partition_cap = kDefaultPartitionCap);

template <class T>
T accept_prob_rank_test_brute(const SpectrumT<T>& alpha, int n_copies, int r,
                              unsigned long long word_cap = kDefaultWordCap);

McEstimate sample_lds_mc(const Spectrum& alpha, int n_copies, int r, long long samples,
                         std::uint64_t seed, int threads = 1);

enum class RankTestMethod { exact, brute, mc };

// Tail bound ((1+r/d) e^2 N / r^2)^r on Pr[LDS >= r] for the uniform word
// distribution. Can exceed 1; callers clamp.
double lds_upper_bound(double n_letters, int d, int r);

}  // namespace qpt
