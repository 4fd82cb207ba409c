#include "qpt/ranktest.hpp"

#include <algorithm>
#include <cmath>

#include "qpt/rng.hpp"

namespace qpt {

double generalized_binomial(double x, int m, BinomialConvention conv) {
    if (m < 0) return 0.0;
    const int factors = (conv == BinomialConvention::falling_factorial) ? m : m - 1;
    if (factors < 0) return 0.0;
    double num = 1.0;
    for (int i = 0; i < factors; ++i) num *= (x - i);
    double den = 1.0;
    for (int i = 2; i <= factors; ++i) den *= i;
    return num / den;
}

double g_k(double epsilon, int r, double q, double k, BinomialConvention conv) {
    if (r < 1) throw domain_error("g_k requires r >= 1");
    if (q <= 0) throw domain_error("g_k requires q > 0");
    const double x = r + k - 1;
    const double t1 = generalized_binomial(x, r + 1, conv) * std::pow(q, r + 1);
    const double t2 = generalized_binomial(x, r, conv) * (1.0 - x * q) * std::pow(q, r);
    const double t3 = generalized_binomial(x, r - 1, conv) * (1.0 - epsilon - (r - 1) * q) *
                      (epsilon - q * k) * std::pow(q, r - 1);
    return t1 + t2 + t3;
}

std::string beta_argmin_name(BetaArgmin t) {
    switch (t) {
        case BetaArgmin::floor_z_term: return "g_floor_z";
        case BetaArgmin::ceil_z_term: return "g_ceil_z";
        case BetaArgmin::d_minus_r_term: return "g_d_minus_r";
        case BetaArgmin::oracle_interior: return "oracle_interior";
    }
    return "?";
}

namespace {

void check_beta_domain(double epsilon, int r, int d) {
    if (r < 1 || d <= r) throw domain_error("beta requires 1 <= r < d");
    const double eps_max = 1.0 - static_cast<double>(r) / d;
    if (!(epsilon > 0) || epsilon > eps_max * (1 + 1e-12) + 1e-15)
        throw domain_error("beta requires 0 < eps <= 1 - r/d: no state is that far from rank r");
}

// Extremal family member of the soundness optimization:
// (1-eps-(r-1)q, q x (k+r-1), eps-qk, 0...), padded with zeros to length d.
Spectrum family_spectrum(double epsilon, int r, int d, long long k, double q) {
    std::vector<double> p;
    p.reserve(static_cast<std::size_t>(d));
    p.push_back(1.0 - epsilon - (r - 1) * q);
    for (long long i = 0; i < k + r - 1; ++i) p.push_back(q);
    const double last = epsilon - q * static_cast<double>(k);
    if (last > 1e-12) p.push_back(last);
    while (static_cast<int>(p.size()) > d && p.back() <= 1e-9) p.pop_back();
    if (static_cast<int>(p.size()) > d) throw domain_error("family spectrum does not fit in d entries");
    while (static_cast<int>(p.size()) < d) p.push_back(0.0);
    return Spectrum::make(std::move(p));
}

// +inf when the vector needs more than d slots (the open lower q endpoint
// of the k = d-r family)
double family_e_r1(double epsilon, int r, int d, long long k, double q) {
    try {
        return elementary_symmetric(r + 1, family_spectrum(epsilon, r, d, k, q));
    } catch (const domain_error&) {
        return std::numeric_limits<double>::infinity();
    }
}

long long snapped_floor(double z) {
    const double rz = std::round(z);
    if (std::abs(z - rz) < 1e-9) return static_cast<long long>(rz);
    return static_cast<long long>(std::floor(z));
}

long long snapped_ceil(double z) {
    const double rz = std::round(z);
    if (std::abs(z - rz) < 1e-9) return static_cast<long long>(rz);
    return static_cast<long long>(std::ceil(z));
}

}  // namespace

BetaResult beta_closed_form(double epsilon, int r, int d, BinomialConvention conv) {
    check_beta_domain(epsilon, r, d);
    BetaResult res;
    res.epsilon = epsilon;
    res.r = r;
    res.d = d;
    res.z = r * epsilon / (1.0 - epsilon);

    struct Candidate {
        BetaArgmin term;
        long long k;
        double q;
    };
    const long long kmax = d - r;
    const long long kf = std::clamp<long long>(snapped_floor(res.z), 0, kmax);
    const long long kc = std::clamp<long long>(std::max<long long>(1, snapped_ceil(res.z)), 1, kmax);
    const Candidate candidates[3] = {
        {BetaArgmin::floor_z_term, kf, (1.0 - epsilon) / r},
        {BetaArgmin::ceil_z_term, kc, epsilon / static_cast<double>(kc)},
        {BetaArgmin::d_minus_r_term, kmax, epsilon / static_cast<double>(kmax)},
    };

    double best = std::numeric_limits<double>::infinity();
    // candidates are ordered by increasing k; strict improvement keeps ties
    // on the smaller k
    for (const Candidate& c : candidates) {
        const double v = g_k(epsilon, r, c.q, static_cast<double>(c.k), conv);
        if (v < best) {
            best = v;
            res.argmin_term = c.term;
            res.witness_k = static_cast<double>(c.k);
            res.witness_q = c.q;
        }
    }
    res.beta = 1.0 - best;
    res.witness_spectrum =
        family_spectrum(epsilon, r, d, static_cast<long long>(res.witness_k), res.witness_q);
    return res;
}

double beta_r1(double epsilon, int d) {
    if (d < 2) throw domain_error("beta_r1 requires d >= 2");
    const double omega = 1.0 - epsilon;
    if (!(omega < 1.0) || omega < 1.0 / d - 1e-15)
        throw domain_error("beta_r1 requires omega = 1 - eps in [1/d, 1)");
    if (omega >= 0.5) return 1.0 - omega + omega * omega;
    const double k = static_cast<double>(snapped_floor(1.0 / omega));
    return 1.0 + 0.5 * omega * k * (-2.0 + omega + omega * k);
}

double beta_limit_large_eps(int r) {
    if (r < 1) throw domain_error("beta_limit_large_eps requires r >= 1");
    return 1.0 - 1.0 / to_double(factorial(r + 1));
}

double beta_third_term_limit(double epsilon, int r) {
    if (r < 1) throw domain_error("beta_third_term_limit requires r >= 1");
    if (!(epsilon > 0) || epsilon > 1)
        throw domain_error("beta_third_term_limit requires 0 < eps <= 1");
    return std::pow(epsilon, r) * (r + 1 - epsilon * r) / to_double(factorial(r + 1));
}

namespace {

// Random eps-far spectrum: tail mass s in [eps, 1-r/d], sorted Dirichlet head
// and tail, retried until the sorted order holds across the head/tail seam.
Spectrum random_eps_far_spectrum(double epsilon, int r, int d, const CounterRng& rng,
                                 std::uint64_t& counter) {
    const double smax = 1.0 - static_cast<double>(r) / d;
    for (int attempt = 0; attempt < 64; ++attempt) {
        const double s = epsilon + (smax - epsilon) * rng.uniform(counter++);
        std::vector<double> head(static_cast<std::size_t>(r)), tail(static_cast<std::size_t>(d - r));
        double hs = 0, ts = 0;
        for (auto& v : head) {
            v = -std::log(1.0 - rng.uniform(counter++));
            hs += v;
        }
        for (auto& v : tail) {
            v = -std::log(1.0 - rng.uniform(counter++));
            ts += v;
        }
        for (auto& v : head) v *= (1.0 - s) / hs;
        for (auto& v : tail) v *= s / ts;
        std::sort(head.rbegin(), head.rend());
        std::sort(tail.rbegin(), tail.rend());
        if (head.back() < tail.front()) continue;
        head.insert(head.end(), tail.begin(), tail.end());
        return Spectrum::make(std::move(head));
    }
    // uniform head and tail always satisfy the seam constraint
    const double s = epsilon;
    std::vector<double> p(static_cast<std::size_t>(d));
    for (int i = 0; i < r; ++i) p[static_cast<std::size_t>(i)] = (1.0 - s) / r;
    for (int i = r; i < d; ++i) p[static_cast<std::size_t>(i)] = s / (d - r);
    return Spectrum::make(std::move(p));
}

}  // namespace

BetaResult beta_numeric_oracle(double epsilon, int r, int d, const OracleParams& params) {
    check_beta_domain(epsilon, r, d);
    BetaResult res;
    res.epsilon = epsilon;
    res.r = r;
    res.d = d;
    res.z = r * epsilon / (1.0 - epsilon);

    const long long kmax = d - r;
    const long long klo = std::max<long long>(0, snapped_ceil(res.z) - 1);
    double best = std::numeric_limits<double>::infinity();
    long long best_k = klo;
    double best_q = 0, best_qlo = 0, best_qhi = 0;

    for (long long k = klo; k <= kmax; ++k) {
        const double qlo = epsilon / static_cast<double>(k + 1);
        const double qhi =
            std::min(k > 0 ? epsilon / static_cast<double>(k) : std::numeric_limits<double>::infinity(),
                     (1.0 - epsilon) / r);
        if (qhi < qlo) continue;
        const int pts = std::max(2, params.q_points);
        for (int i = 0; i <= pts; ++i) {
            const double q = qlo + (qhi - qlo) * static_cast<double>(i) / pts;
            if (q <= 0) continue;
            const double v = family_e_r1(epsilon, r, d, k, q);
            if (v < best) {
                best = v;
                best_k = k;
                best_q = q;
                best_qlo = std::max(qlo, q - (qhi - qlo) / pts);
                best_qhi = std::min(qhi, q + (qhi - qlo) / pts);
            }
        }
    }

    // one golden-section pass around the grid minimum
    {
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = best_qlo, b = best_qhi;
        double c = b - gr * (b - a), e = a + gr * (b - a);
        double fc = family_e_r1(epsilon, r, d, best_k, c);
        double fe = family_e_r1(epsilon, r, d, best_k, e);
        for (int it = 0; it < 80 && (b - a) > 1e-15; ++it) {
            if (fc < fe) {
                b = e;
                e = c;
                fe = fc;
                c = b - gr * (b - a);
                fc = family_e_r1(epsilon, r, d, best_k, c);
            } else {
                a = c;
                c = e;
                fc = fe;
                e = a + gr * (b - a);
                fe = family_e_r1(epsilon, r, d, best_k, e);
            }
        }
        const double q = (a + b) / 2;
        const double v = family_e_r1(epsilon, r, d, best_k, q);
        if (v < best) {
            best = v;
            best_q = q;
        }
    }

    // random eps-far spectra must not beat the family minimum
    if (params.random_samples > 0) {
        for (long long s = 0; s < params.random_samples; ++s) {
            const CounterRng rng{params.seed, static_cast<std::uint64_t>(s)};
            std::uint64_t counter = 0;
            const Spectrum p = random_eps_far_spectrum(epsilon, r, d, rng, counter);
            const double v = elementary_symmetric(r + 1, p);
            if (v < best - params.tolerance)
                throw verification_error("beta_numeric_oracle: random spectrum beat the extremal family");
        }
    }

    res.beta = 1.0 - best;
    res.witness_k = static_cast<double>(best_k);
    res.witness_q = best_q;
    res.witness_spectrum = family_spectrum(epsilon, r, d, best_k, best_q);
    if (best_k == kmax && std::abs(best_q - epsilon / static_cast<double>(kmax)) < 1e-12)
        res.argmin_term = BetaArgmin::d_minus_r_term;
    else if (std::abs(best_q - (1.0 - epsilon) / r) < 1e-12)
        res.argmin_term = BetaArgmin::floor_z_term;
    else if (std::abs(best_q - epsilon / static_cast<double>(std::max<long long>(1, best_k))) < 1e-12)
        res.argmin_term = BetaArgmin::ceil_z_term;
    else
        res.argmin_term = BetaArgmin::oracle_interior;
    return res;
}

FewCopyComplexity copy_complexity_few_copy(double epsilon, int r, double target_soundness) {
    if (r < 1) throw domain_error("copy_complexity_few_copy requires r >= 1");
    if (!(epsilon > 0) || epsilon >= 1.0 / (r + 2))
        throw domain_error("copy_complexity_few_copy requires 0 < eps < 1/(r+2)");
    if (!(target_soundness > 0) || target_soundness > 1)
        throw domain_error("copy_complexity_few_copy requires target in (0, 1]");

    FewCopyComplexity out;
    out.per_round_beta = (r == 1) ? 1.0 - (1.0 - epsilon) * epsilon
                                  : 1.0 - beta_third_term_limit(epsilon, r);
    if (target_soundness >= 1.0) return out;  // zero rounds suffice

    const double lb = std::log(out.per_round_beta);
    const double lt = std::log(target_soundness);
    long long k = static_cast<long long>(std::ceil(lt / lb - 1e-12));
    while (k > 0 && static_cast<double>(k - 1) * lb <= lt) --k;
    while (static_cast<double>(k) * lb > lt) ++k;
    out.rounds = k;
    out.total_copies = k * (r + 1);
    return out;
}

}  // namespace qpt
