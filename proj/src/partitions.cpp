#include "qpt/partitions.hpp"

#include <cmath>
#include <numeric>

namespace qpt {

std::string Partition::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts_[i]);
    }
    s += ")";
    return s;
}

namespace {

void emit_partitions(int n, int max_part, int rows_left, std::vector<int>& stack,
                     const std::function<void(const std::vector<int>&)>& fn) {
    if (n == 0) {
        fn(stack);
        return;
    }
    if (rows_left == 0) return;
    // first part descending gives reverse-lexicographic order
    for (int k = std::min(n, max_part); k >= 1; --k) {
        if (static_cast<long long>(k) * rows_left < n) break;
        stack.push_back(k);
        emit_partitions(n - k, k, rows_left - 1, stack, fn);
        stack.pop_back();
    }
}

}  // namespace

void for_each_partition(int n, int max_rows, const std::function<void(const std::vector<int>&)>& fn) {
    if (n < 1) throw domain_error("partition enumeration requires n >= 1");
    if (max_rows < 1) throw domain_error("partition enumeration requires max_rows >= 1");
    std::vector<int> stack;
    stack.reserve(static_cast<std::size_t>(max_rows));
    emit_partitions(n, n, max_rows, stack, fn);
}

std::vector<Partition> enumerate_partitions(int n, int max_rows) {
    std::vector<Partition> out;
    for_each_partition(n, max_rows, [&](const std::vector<int>& parts) { out.emplace_back(parts); });
    return out;
}

unsigned long long count_partitions(int n, int max_rows) {
    if (n < 1) throw domain_error("partition count requires n >= 1");
    if (max_rows < 1) throw domain_error("partition count requires max_rows >= 1");
    constexpr unsigned long long kSat = std::numeric_limits<unsigned long long>::max() / 2;
    // p(n, parts <= k) over k = 1..max_rows (conjugate of bounded-part count)
    std::vector<unsigned long long> dp(static_cast<std::size_t>(n) + 1, 0);
    dp[0] = 1;
    for (int k = 1; k <= max_rows; ++k)
        for (int m = k; m <= n; ++m) {
            unsigned long long v = dp[static_cast<std::size_t>(m)] + dp[static_cast<std::size_t>(m - k)];
            dp[static_cast<std::size_t>(m)] = std::min(v, kSat);
        }
    return dp[static_cast<std::size_t>(n)];
}

BigInt dim_symmetric_irrep(const Partition& lambda) {
    const int t = lambda.rows();
    if (t == 0) return BigInt(1);
    std::vector<long> l(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) l[static_cast<std::size_t>(i)] = lambda.part(i) + t - 1 - i;
    BigInt num = factorial(lambda.n());
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) num *= BigInt(l[static_cast<std::size_t>(i)] - l[static_cast<std::size_t>(j)]);
    BigInt den(1);
    for (int i = 0; i < t; ++i) den *= factorial(static_cast<int>(l[static_cast<std::size_t>(i)]));
    return num / den;
}

double log_dim_symmetric_irrep(const std::vector<int>& parts) {
    const int t = static_cast<int>(parts.size());
    if (t == 0) return 0.0;
    long n = 0;
    std::vector<long> l(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
        n += parts[static_cast<std::size_t>(i)];
        l[static_cast<std::size_t>(i)] = parts[static_cast<std::size_t>(i)] + t - 1 - i;
    }
    double v = std::lgamma(static_cast<double>(n) + 1.0);
    for (int i = 0; i < t; ++i) v -= std::lgamma(static_cast<double>(l[static_cast<std::size_t>(i)]) + 1.0);
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j)
            v += std::log(static_cast<double>(l[static_cast<std::size_t>(i)] - l[static_cast<std::size_t>(j)]));
    return v;
}

namespace detail {

double logaddexp(double a, double b) {
    if (std::isinf(a) && a < 0) return b;
    if (std::isinf(b) && b < 0) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

std::vector<Rational> h_table(const std::vector<Rational>& alpha, int max_k) {
    std::vector<Rational> h(static_cast<std::size_t>(max_k) + 1, Rational(0));
    h[0] = Rational(1);
    for (const Rational& a : alpha) {
        if (a == 0) continue;
        for (int k = 1; k <= max_k; ++k)
            h[static_cast<std::size_t>(k)] += a * h[static_cast<std::size_t>(k) - 1];
    }
    return h;
}

std::vector<double> log_h_table(const std::vector<double>& alpha, int max_k) {
    const double ninf = -std::numeric_limits<double>::infinity();
    std::vector<double> h(static_cast<std::size_t>(max_k) + 1, ninf);
    h[0] = 0.0;
    for (double a : alpha) {
        if (a <= 0) continue;
        const double la = std::log(a);
        for (int k = 1; k <= max_k; ++k)
            h[static_cast<std::size_t>(k)] = logaddexp(h[static_cast<std::size_t>(k)], la + h[static_cast<std::size_t>(k) - 1]);
    }
    return h;
}

double log_schur_from_log_h(const std::vector<int>& parts, const std::vector<double>& logh,
                            double* scale_out) {
    const double ninf = -std::numeric_limits<double>::infinity();
    if (scale_out) *scale_out = ninf;
    const int t = static_cast<int>(parts.size());
    if (t == 0) return 0.0;
    std::vector<std::vector<double>> a(static_cast<std::size_t>(t), std::vector<double>(static_cast<std::size_t>(t)));
    double scale = 0.0;
    for (int i = 0; i < t; ++i) {
        double m = ninf;
        std::vector<double> row(static_cast<std::size_t>(t), ninf);
        for (int j = 0; j < t; ++j) {
            const int k = parts[static_cast<std::size_t>(i)] - i + j;
            if (k >= 0 && k < static_cast<int>(logh.size())) row[static_cast<std::size_t>(j)] = logh[static_cast<std::size_t>(k)];
            m = std::max(m, row[static_cast<std::size_t>(j)]);
        }
        if (std::isinf(m)) return ninf;  // zero row
        for (int j = 0; j < t; ++j)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                std::isinf(row[static_cast<std::size_t>(j)]) ? 0.0 : std::exp(row[static_cast<std::size_t>(j)] - m);
        scale += m;
    }
    if (scale_out) *scale_out = scale;
    // partial-pivot elimination on the row-scaled matrix
    double sign = 1.0, logdet = 0.0;
    for (int c = 0; c < t; ++c) {
        int piv = c;
        for (int r = c + 1; r < t; ++r)
            if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) >
                std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)]))
                piv = r;
        if (a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)] == 0.0) return ninf;
        if (piv != c) {
            std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(c)]);
            sign = -sign;
        }
        const double p = a[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
        if (p < 0) sign = -sign;
        logdet += std::log(std::abs(p));
        for (int r = c + 1; r < t; ++r) {
            const double f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] / p;
            if (f == 0.0) continue;
            for (int j = c; j < t; ++j)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -= f * a[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
        }
    }
    if (sign < 0) return ninf;  // Schur values are non-negative; negatives are roundoff
    return scale + logdet;
}

Rational rational_det(std::vector<std::vector<Rational>> m) {
    const int t = static_cast<int>(m.size());
    if (t == 0) return Rational(1);
    // clear denominators, Bareiss on the integer matrix
    BigInt den(1);
    for (const auto& row : m)
        for (const auto& v : row) {
            BigInt d = v.get_den();
            den = den / gcd(den, d) * d;
        }
    std::vector<std::vector<BigInt>> a(static_cast<std::size_t>(t), std::vector<BigInt>(static_cast<std::size_t>(t)));
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) {
            const Rational& v = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v.get_num() * (den / v.get_den());
        }
    BigInt prev(1);
    int sign = 1;
    for (int k = 0; k < t - 1; ++k) {
        if (a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
            int piv = -1;
            for (int r = k + 1; r < t; ++r)
                if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] != 0) { piv = r; break; }
            if (piv < 0) return Rational(0);
            std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(piv)]);
            sign = -sign;
        }
        for (int i = k + 1; i < t; ++i)
            for (int j = k + 1; j < t; ++j) {
                BigInt v = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                           a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v / prev;
            }
        prev = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    BigInt det_int = a[static_cast<std::size_t>(t) - 1][static_cast<std::size_t>(t) - 1];
    if (sign < 0) det_int = -det_int;
    Rational det(det_int);
    Rational scale(1);
    BigInt denp(1);
    for (int i = 0; i < t; ++i) denp *= den;
    det /= Rational(denp);
    return det;
}

}  // namespace detail

}  // namespace qpt
