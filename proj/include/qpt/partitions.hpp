#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qpt/error.hpp"
#include "qpt/rational.hpp"

namespace qpt {

// Integer partition with weakly decreasing positive parts. Value type with
// lexicographic ordering so partitions can key associative maps.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1) throw domain_error("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw domain_error("partition parts must be weakly decreasing");
            n_ += parts_[i];
        }
    }

    int n() const { return n_; }
    int rows() const { return static_cast<int>(parts_.size()); }
    int part(int i) const { return parts_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& parts() const { return parts_; }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    bool operator<(const Partition& o) const { return parts_ < o.parts_; }

    std::string str() const;

private:
    std::vector<int> parts_;
    int n_ = 0;
};

// All partitions of n with at most max_rows parts, in reverse-lexicographic
// order: (4), (3,1), (2,2), ...
std::vector<Partition> enumerate_partitions(int n, int max_rows);

// Allocation-free enumeration in the same order; fn receives the parts.
void for_each_partition(int n, int max_rows, const std::function<void(const std::vector<int>&)>& fn);

// Number of partitions of n with at most max_rows parts (saturating).
unsigned long long count_partitions(int n, int max_rows);

// dim of the symmetric-group irrep indexed by lambda, exact:
//   N!/(l_1! ... l_t!) * prod_{i<j} (l_i - l_j),  l_i = lambda_i + t - i.
BigInt dim_symmetric_irrep(const Partition& lambda);

// log of the same, for large-N floating paths.
double log_dim_symmetric_irrep(const std::vector<int>& parts);

// Sorted non-increasing probability vector. Exact mode requires the sum to
// be exactly 1; floating mode within 1e-9.
template <class T>
struct SpectrumT {
    std::vector<T> probs;

    int d() const { return static_cast<int>(probs.size()); }

    static SpectrumT make(std::vector<T> p) {
        if (p.empty()) throw domain_error("spectrum must be non-empty");
        std::sort(p.begin(), p.end(), [](const T& a, const T& b) { return b < a; });
        T sum = scalar_from_int<T>(0);
        for (auto& v : p) {
            if constexpr (std::is_same_v<T, double>) {
                if (v < 0 && v > -1e-12) v = 0;
            }
            if (v < scalar_from_int<T>(0)) throw domain_error("spectrum entries must be non-negative");
            sum = T(sum + v);
        }
        if constexpr (std::is_same_v<T, double>) {
            if (std::abs(sum - 1.0) > 1e-9) throw domain_error("spectrum must sum to 1");
        } else {
            if (sum != scalar_from_int<T>(1)) throw domain_error("spectrum must sum to 1 exactly");
        }
        SpectrumT s;
        s.probs = std::move(p);
        return s;
    }

    static SpectrumT uniform(int d) {
        if (d < 1) throw domain_error("spectrum dimension must be positive");
        std::vector<T> p;
        p.reserve(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            if constexpr (std::is_same_v<T, double>) {
                p.push_back(1.0 / d);
            } else {
                p.push_back(make_rational(1, d));
            }
        }
        SpectrumT s;
        s.probs = std::move(p);
        return s;
    }
};

using Spectrum = SpectrumT<double>;
using RationalSpectrum = SpectrumT<Rational>;

inline Spectrum to_float_spectrum(const RationalSpectrum& a) {
    std::vector<double> p;
    p.reserve(a.probs.size());
    for (const auto& q : a.probs) p.push_back(to_double(q));
    Spectrum s;
    s.probs = std::move(p);
    return s;
}

namespace detail {

// h_k tables: exact and log-space. Both use the one-variable-at-a-time DP
//   H_k <- H_k + a * H_{k-1}
// whose terms are all non-negative.
std::vector<Rational> h_table(const std::vector<Rational>& alpha, int max_k);
std::vector<double> log_h_table(const std::vector<double>& alpha, int max_k);

// log s_lambda from a log-h table (row-scaled partial-pivot elimination);
// returns -inf when the Schur value is zero. When scale_out is given it
// receives the row-scale exponent, the magnitude against which the
// determinant's cancellation error is measured.
double log_schur_from_log_h(const std::vector<int>& parts, const std::vector<double>& logh,
                            double* scale_out = nullptr);

// Exact determinant of a rational matrix: denominators cleared, then
// fraction-free Bareiss elimination on the integer matrix.
Rational rational_det(std::vector<std::vector<Rational>> m);

double logaddexp(double a, double b);

}  // namespace detail

// h_k(alpha), the complete homogeneous symmetric polynomial; h_0 = 1.
template <class T>
T complete_homogeneous(int k, const SpectrumT<T>& alpha) {
    if (k < 0) throw domain_error("complete_homogeneous requires k >= 0");
    std::vector<T> h(static_cast<std::size_t>(k) + 1, scalar_from_int<T>(0));
    h[0] = scalar_from_int<T>(1);
    for (const T& a : alpha.probs)
        for (int j = 1; j <= k; ++j) h[static_cast<std::size_t>(j)] = T(h[static_cast<std::size_t>(j)] + a * h[static_cast<std::size_t>(j) - 1]);
    return h[static_cast<std::size_t>(k)];
}

// s_lambda(alpha) via the Jacobi-Trudi determinant det(h_{lambda_i - i + j})
// of order l(lambda). Zero when l(lambda) > d.
template <class T>
T schur_eval(const Partition& lambda, const SpectrumT<T>& alpha) {
    const int rows = lambda.rows();
    if (rows == 0) return scalar_from_int<T>(1);
    if (rows > alpha.d()) return scalar_from_int<T>(0);
    const int max_k = lambda.part(0) + rows - 1;
    if constexpr (std::is_same_v<T, Rational>) {
        std::vector<Rational> h = detail::h_table(alpha.probs, max_k);
        std::vector<std::vector<Rational>> m(static_cast<std::size_t>(rows),
                                             std::vector<Rational>(static_cast<std::size_t>(rows)));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < rows; ++j) {
                const int k = lambda.part(i) - i + j;
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    (k < 0) ? Rational(0) : h[static_cast<std::size_t>(k)];
            }
        return detail::rational_det(std::move(m));
    } else {
        std::vector<double> logh = detail::log_h_table(alpha.probs, max_k);
        const double ls = detail::log_schur_from_log_h(lambda.parts(), logh);
        return std::isinf(ls) ? 0.0 : std::exp(ls);
    }
}

// Direct sum over semistandard Young tableaux; the small-scale oracle for
// schur_eval. Guarded to |lambda| <= 12 and d <= 6.
template <class T>
T schur_eval_ssyt(const Partition& lambda, const SpectrumT<T>& alpha,
                  long long tableau_cap = 2'000'000) {
    if (lambda.n() > 12 || alpha.d() > 6)
        throw domain_error("schur_eval_ssyt is guarded to |lambda| <= 12 and d <= 6");
    const int rows = lambda.rows();
    if (rows == 0) return scalar_from_int<T>(1);
    if (rows > alpha.d()) return scalar_from_int<T>(0);

    std::vector<std::vector<int>> t(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i) t[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(lambda.part(i)), 0);

    T total = scalar_from_int<T>(0);
    long long visited = 0;
    const int d = alpha.d();

    std::function<void(int, int, T)> fill = [&](int r, int c, T weight) {
        if (r == rows) {
            if (++visited > tableau_cap) throw cap_exceeded("SSYT enumeration cap exceeded");
            total = T(total + weight);
            return;
        }
        int nr = r, nc = c + 1;
        if (nc == lambda.part(r)) { nr = r + 1; nc = 0; }
        const int lo = std::max(c > 0 ? t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c) - 1] : 1,
                                (r > 0 && c < lambda.part(r - 1)) ? t[static_cast<std::size_t>(r) - 1][static_cast<std::size_t>(c)] + 1 : 1);
        for (int v = lo; v <= d; ++v) {
            t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
            fill(nr, nc, T(weight * alpha.probs[static_cast<std::size_t>(v) - 1]));
        }
    };
    fill(0, 0, scalar_from_int<T>(1));
    return total;
}

}  // namespace qpt
