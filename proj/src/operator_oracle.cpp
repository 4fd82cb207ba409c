#include "qpt/operator_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "qpt/rng.hpp"

namespace qpt {

namespace {

long long ipow_ll(int base, int exp) {
    long long v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

void check_guard(int d, int n_copies) {
    if (d < 1 || n_copies < 1) throw domain_error("operator requires d >= 1 and N >= 1");
    double dim = std::pow(static_cast<double>(d), n_copies);
    if (dim > static_cast<double>(kOperatorDimGuard))
        throw cap_exceeded("operator dimension d^N exceeds the guard of 512");
}

std::vector<int> digits_of(long long g, int d, int n_copies) {
    std::vector<int> x(static_cast<std::size_t>(n_copies));
    for (int i = n_copies - 1; i >= 0; --i) {
        x[static_cast<std::size_t>(i)] = static_cast<int>(g % d);
        g /= d;
    }
    return x;
}

long long index_of(const std::vector<int>& x, int d) {
    long long g = 0;
    for (int v : x) g = g * d + v;
    return g;
}

Partition cycle_type_of(const std::vector<int>& pi) {
    const int n = static_cast<int>(pi.size());
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> lens;
    for (int i = 0; i < n; ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        int len = 0, j = i;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            j = pi[static_cast<std::size_t>(j)];
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return Partition(std::move(lens));
}

// y[pi[j]] = x[j]
long long permute_index(const std::vector<int>& pi, long long g, int d, int n_copies) {
    const std::vector<int> x = digits_of(g, d, n_copies);
    std::vector<int> y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[static_cast<std::size_t>(pi[j])] = x[j];
    return index_of(y, d);
}

template <class Coeff>
DenseOperator permutation_sum(int d, int n_copies, const Coeff& coeff_of_pi, double scale) {
    check_guard(d, n_copies);
    const long long dim = ipow_ll(d, n_copies);
    DenseOperator op;
    op.d = d;
    op.n_copies = n_copies;
    op.matrix = CMatrix(static_cast<int>(dim), static_cast<int>(dim));
    std::vector<int> pi(static_cast<std::size_t>(n_copies));
    std::iota(pi.begin(), pi.end(), 0);
    do {
        const double c = coeff_of_pi(pi);
        if (c == 0) continue;
        for (long long g = 0; g < dim; ++g) {
            const long long t = permute_index(pi, g, d, n_copies);
            op.matrix(static_cast<int>(t), static_cast<int>(g)) += c;
        }
    } while (std::next_permutation(pi.begin(), pi.end()));
    op.matrix *= cplx{scale, 0};
    return op;
}

}  // namespace

DenseOperator permutation_operator(const std::vector<int>& pi, int d) {
    const int n_copies = static_cast<int>(pi.size());
    check_guard(d, n_copies);
    std::vector<int> check = pi;
    std::sort(check.begin(), check.end());
    for (int i = 0; i < n_copies; ++i)
        if (check[static_cast<std::size_t>(i)] != i) throw domain_error("not a permutation of 0..N-1");
    const long long dim = ipow_ll(d, n_copies);
    DenseOperator op;
    op.d = d;
    op.n_copies = n_copies;
    op.matrix = CMatrix(static_cast<int>(dim), static_cast<int>(dim));
    for (long long g = 0; g < dim; ++g)
        op.matrix(static_cast<int>(permute_index(pi, g, d, n_copies)), static_cast<int>(g)) = 1.0;
    return op;
}

DenseOperator antisymmetric_projector(int d, int n_copies) {
    const double scale = 1.0 / to_double(factorial(n_copies));
    return permutation_sum(
        d, n_copies,
        [](const std::vector<int>& pi) {
            const Partition type = cycle_type_of(pi);
            int parity = 0;
            for (int len : type.parts()) parity += len - 1;
            return (parity % 2 == 0) ? 1.0 : -1.0;
        },
        scale);
}

DenseOperator symmetric_projector(int d, int n_copies) {
    const double scale = 1.0 / to_double(factorial(n_copies));
    return permutation_sum(d, n_copies, [](const std::vector<int>&) { return 1.0; }, scale);
}

namespace {

// beta-set border-strip recursion
long long chi_recurse(std::vector<int> lam, std::vector<int> mu,
                      std::map<std::pair<std::vector<int>, std::vector<int>>, long long>& memo) {
    if (lam.empty()) return 1;  // |mu| == |lam| == 0
    const auto key = std::make_pair(lam, mu);
    const auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    const int k = mu.front();
    const std::vector<int> rest(mu.begin() + 1, mu.end());
    const int t = static_cast<int>(lam.size());
    std::vector<int> beta(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) beta[static_cast<std::size_t>(i)] = lam[static_cast<std::size_t>(i)] + t - 1 - i;

    long long total = 0;
    for (int i = 0; i < t; ++i) {
        const int x = beta[static_cast<std::size_t>(i)] - k;
        if (x < 0) continue;
        bool occupied = false;
        int crossed = 0;
        for (int j = 0; j < t; ++j) {
            if (beta[static_cast<std::size_t>(j)] == x) occupied = true;
            if (beta[static_cast<std::size_t>(j)] > x && beta[static_cast<std::size_t>(j)] < beta[static_cast<std::size_t>(i)]) ++crossed;
        }
        if (occupied) continue;
        std::vector<int> nb = beta;
        nb[static_cast<std::size_t>(i)] = x;
        std::sort(nb.rbegin(), nb.rend());
        std::vector<int> nl;
        for (int j = 0; j < t; ++j) {
            const int part = nb[static_cast<std::size_t>(j)] - (t - 1 - j);
            if (part > 0) nl.push_back(part);
        }
        const long long sub = chi_recurse(std::move(nl), rest, memo);
        total += (crossed % 2 == 0) ? sub : -sub;
    }
    memo.emplace(key, total);
    return total;
}

}  // namespace

long long mn_character(const Partition& lambda, const Partition& cycle_type) {
    if (lambda.n() != cycle_type.n())
        throw domain_error("mn_character requires |lambda| == |cycle_type|");
    std::map<std::pair<std::vector<int>, std::vector<int>>, long long> memo;
    return chi_recurse(lambda.parts(), cycle_type.parts(), memo);
}

DenseOperator young_projector(const Partition& lambda, int d, int n_copies) {
    if (lambda.n() != n_copies) throw domain_error("young_projector requires |lambda| == N");
    check_guard(d, n_copies);
    std::map<std::vector<int>, double> chi_cache;
    const double scale = to_double(Rational(dim_symmetric_irrep(lambda), factorial(n_copies)));
    return permutation_sum(
        d, n_copies,
        [&](const std::vector<int>& pi) {
            const Partition type = cycle_type_of(pi);
            const auto it = chi_cache.find(type.parts());
            if (it != chi_cache.end()) return it->second;
            const double chi = static_cast<double>(mn_character(lambda, type));
            chi_cache.emplace(type.parts(), chi);
            return chi;
        },
        scale);
}

double trace_with_diagonal_power(const DenseOperator& op, const Spectrum& rho_spectrum) {
    if (rho_spectrum.d() != op.d) throw domain_error("spectrum dimension must match the operator");
    const long long dim = ipow_ll(op.d, op.n_copies);
    double total = 0;
    for (long long g = 0; g < dim; ++g) {
        double w = 1;
        long long rem = g;
        for (int i = 0; i < op.n_copies; ++i) {
            w *= rho_spectrum.probs[static_cast<std::size_t>(rem % op.d)];
            rem /= op.d;
        }
        total += w * op.matrix(static_cast<int>(g), static_cast<int>(g)).real();
    }
    return total;
}

SrIdentityResiduals verify_sr_projector_identity(int d_a, int d_b, int n_copies, int r,
                                                 std::uint64_t seed) {
    if (r < 1) throw domain_error("verify_sr_projector_identity requires r >= 1");
    check_guard(d_a * d_b, n_copies);
    const int d = d_a * d_b;
    const long long dim = ipow_ll(d, n_copies);

    // one-sided rank tests acting on the A (resp. B) digits only
    auto one_sided = [&](bool a_side) {
        const int d_local = a_side ? d_a : d_b;
        CMatrix total(static_cast<int>(dim), static_cast<int>(dim));
        for (const Partition& lam : enumerate_partitions(n_copies, std::min(r, d_local))) {
            const double scale = to_double(Rational(dim_symmetric_irrep(lam), factorial(n_copies)));
            std::map<std::vector<int>, double> chi_cache;
            std::vector<int> pi(static_cast<std::size_t>(n_copies));
            std::iota(pi.begin(), pi.end(), 0);
            do {
                const Partition type = cycle_type_of(pi);
                double chi;
                if (const auto it = chi_cache.find(type.parts()); it != chi_cache.end()) {
                    chi = it->second;
                } else {
                    chi = static_cast<double>(mn_character(lam, type));
                    chi_cache.emplace(type.parts(), chi);
                }
                if (chi == 0) continue;
                for (long long g = 0; g < dim; ++g) {
                    std::vector<int> c = digits_of(g, d, n_copies);
                    std::vector<int> moved(c.size()), fixed(c.size());
                    for (std::size_t i = 0; i < c.size(); ++i) {
                        moved[i] = a_side ? c[i] / d_b : c[i] % d_b;
                        fixed[i] = a_side ? c[i] % d_b : c[i] / d_b;
                    }
                    std::vector<int> y(moved.size());
                    for (std::size_t j = 0; j < moved.size(); ++j) y[static_cast<std::size_t>(pi[j])] = moved[j];
                    std::vector<int> out(c.size());
                    for (std::size_t i = 0; i < c.size(); ++i)
                        out[i] = a_side ? y[i] * d_b + fixed[i] : fixed[i] * d_b + y[i];
                    total(static_cast<int>(index_of(out, d)), static_cast<int>(g)) += scale * chi;
                }
            } while (std::next_permutation(pi.begin(), pi.end()));
        }
        return total;
    };

    const CMatrix pi_a = one_sided(true);
    const CMatrix pi_b = one_sided(false);
    const CMatrix pi_sym = symmetric_projector(d, n_copies).matrix;
    const CMatrix lhs = pi_a * pi_sym;
    const CMatrix rhs = pi_b * pi_sym;

    SrIdentityResiduals res;
    res.commuted = (lhs - rhs).frobenius_norm();

    // orthonormalize sampled |phi>^{x N} with phi of Schmidt-rank <= r
    std::vector<std::vector<cplx>> basis;
    int stale = 0;
    for (std::uint64_t s = 0; s < 4000 && stale < 40; ++s) {
        const CounterRng rng{seed, s};
        std::uint64_t ctr = 0;
        auto gauss = [&] {
            const double u1 = std::max(1e-300, rng.uniform(ctr++));
            const double u2 = rng.uniform(ctr++);
            return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        };
        CMatrix x(d_a, r), y(r, d_b);
        for (int i = 0; i < d_a; ++i)
            for (int j = 0; j < r; ++j) x(i, j) = cplx{gauss(), gauss()};
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < d_b; ++j) y(i, j) = cplx{gauss(), gauss()};
        CMatrix amp = x * y;
        const double nrm = amp.frobenius_norm();
        amp *= cplx{1.0 / nrm, 0};

        std::vector<cplx> phi(static_cast<std::size_t>(d));
        for (int a = 0; a < d_a; ++a)
            for (int b = 0; b < d_b; ++b) phi[static_cast<std::size_t>(a * d_b + b)] = amp(a, b);
        std::vector<cplx> v(static_cast<std::size_t>(dim));
        for (long long g = 0; g < dim; ++g) {
            cplx prod = 1.0;
            long long rem = g;
            for (int i = 0; i < n_copies; ++i) {
                prod *= phi[static_cast<std::size_t>(rem % d)];
                rem /= d;
            }
            v[static_cast<std::size_t>(g)] = prod;
        }
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) {
                cplx ip = 0;
                for (std::size_t i = 0; i < v.size(); ++i) ip += std::conj(b[i]) * v[i];
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= ip * b[i];
            }
        double nrm2 = 0;
        for (const auto& c : v) nrm2 += std::norm(c);
        if (std::sqrt(nrm2) < 1e-6) {
            ++stale;
            continue;
        }
        stale = 0;
        const double inv = 1.0 / std::sqrt(nrm2);
        for (auto& c : v) c *= inv;
        basis.push_back(std::move(v));
    }
    CMatrix pi_span(static_cast<int>(dim), static_cast<int>(dim));
    for (const auto& b : basis)
        for (long long i = 0; i < dim; ++i) {
            if (b[static_cast<std::size_t>(i)] == cplx{}) continue;
            for (long long j = 0; j < dim; ++j)
                pi_span(static_cast<int>(i), static_cast<int>(j)) +=
                    b[static_cast<std::size_t>(i)] * std::conj(b[static_cast<std::size_t>(j)]);
        }
    res.span_sampled = (lhs - pi_span).frobenius_norm();
    res.span_dim = static_cast<int>(basis.size());
    return res;
}

}  // namespace qpt
