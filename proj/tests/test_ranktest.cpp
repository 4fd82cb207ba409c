#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle_helpers.hpp"
#include "qpt/ranktest.hpp"
#include "qpt/wss.hpp"

using namespace qpt;

TEST_CASE("generalized binomial") {
    CHECK(generalized_binomial(4, 2) == 6);
    CHECK(generalized_binomial(4, 3) == 4);
    CHECK(generalized_binomial(2, 3) == 0);   // hits a zero factor
    CHECK(generalized_binomial(1, 2) == 0);
    CHECK(generalized_binomial(3.5, 0) == 1);  // empty product
    CHECK(generalized_binomial(4, 3, BinomialConvention::shifted_inline) == 6);  // one factor fewer
}

TEST_CASE("g_k examples") {
    // e_2 of (1/4,1/4,1/4,1/4) through the k = 3 family member
    CHECK(g_k(0.75, 1, 0.25, 3) == doctest::Approx(0.375).epsilon(1e-15));
    // k = 0: first two terms vanish through zero binomial factors
    CHECK(g_k(0.3, 2, 0.35, 0) == doctest::Approx((1 - 0.3 - 0.35) * 0.3 * 0.35));
    CHECK_THROWS_AS(g_k(0.5, 1, 0.0, 1), domain_error);
}

TEST_CASE("integer z: first two closed-form terms coincide") {
    struct Case {
        double eps;
        int r;
    };
    for (const Case c : {Case{0.75, 1}, Case{0.5, 2}, Case{0.6, 2}}) {
        const double z = c.r * c.eps / (1 - c.eps);
        REQUIRE(std::abs(z - std::round(z)) < 1e-12);
        const double t1 = g_k(c.eps, c.r, (1 - c.eps) / c.r, std::round(z));
        const double t2 = g_k(c.eps, c.r, c.eps / std::round(z), std::round(z));
        CHECK(t1 == doctest::Approx(t2).epsilon(1e-13));
        // the real-upper-index closed form binom(r/(1-eps), r+1) ((1-eps)/r)^{r+1}
        const double closed = generalized_binomial(c.r / (1 - c.eps), c.r + 1) *
                              std::pow((1 - c.eps) / c.r, c.r + 1);
        CHECK(t1 == doctest::Approx(closed).epsilon(1e-13));
    }
}

TEST_CASE("beta closed form examples") {
    CHECK(beta_closed_form(0.75, 1, 4).beta == doctest::Approx(0.625).epsilon(1e-14));
    CHECK(beta_closed_form(0.5, 1, 4).beta == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(beta_closed_form(0.5, 1, 100).beta == doctest::Approx(0.75).epsilon(1e-14));
    // d -> infinity small-z branch for r = 2
    CHECK(beta_closed_form(0.1, 2, 20000).beta == doctest::Approx(1 - 0.01 * 2.8 / 6).epsilon(1e-4));
    CHECK_THROWS_AS(beta_closed_form(0.9, 2, 2), domain_error);
    CHECK_THROWS_AS(beta_closed_form(0.76, 1, 4), domain_error);  // eps > 1 - r/d
    CHECK_THROWS_AS(beta_closed_form(0.0, 1, 4), domain_error);

    // boundary eps = 1 - r/d is allowed
    CHECK_NOTHROW(beta_closed_form(0.75, 1, 4));
    CHECK_NOTHROW(beta_closed_form(1.0 - 2.0 / 5, 2, 5));
}

TEST_CASE("beta witness spectrum is eps-far and realizes beta") {
    for (const double eps : {0.1, 0.3, 0.5, 0.7}) {
        for (const int r : {1, 2, 3}) {
            const int d = 9;
            if (eps > 1.0 - static_cast<double>(r) / d) continue;
            const BetaResult res = beta_closed_form(eps, r, d);
            double tail = 0;
            for (int j = r; j < d; ++j) tail += res.witness_spectrum.probs[static_cast<std::size_t>(j)];
            CHECK(tail >= eps - 1e-12);
            // acceptance of the (r+1)-copy test on the witness equals beta
            const double acc = accept_prob_rank_test_exact(res.witness_spectrum, r + 1, r);
            CHECK(std::abs(acc - res.beta) < 1e-9);
            // e_{r+1} route
            const double e = elementary_symmetric(r + 1, res.witness_spectrum);
            CHECK(std::abs((1 - e) - res.beta) < 1e-12);
        }
    }
}

TEST_CASE("beta_r1 piecewise form") {
    CHECK(beta_r1(0.5, 4) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(beta_r1(0.75, 4) == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(beta_r1(2.0 / 3.0, 6) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(beta_r1(0.9, 4), domain_error);  // omega < 1/d
    CHECK_THROWS_AS(beta_r1(0.0, 4), domain_error);

    // agreement with the closed form across the shared domain
    for (const int d : {2, 3, 4, 8, 50}) {
        const double omega_min = 1.0 / d;
        for (int i = 0; i <= 400; ++i) {
            const double omega = omega_min + (1.0 - 1e-9 - omega_min) * i / 400.0;
            const double eps = 1.0 - omega;
            if (!(eps > 0)) continue;
            CHECK(std::abs(beta_r1(eps, d) - beta_closed_form(eps, 1, d).beta) < 1e-12);
        }
    }
}

TEST_CASE("beta limits") {
    CHECK(beta_limit_large_eps(1) == doctest::Approx(0.5));
    CHECK(beta_limit_large_eps(2) == doctest::Approx(1 - 1.0 / 6));
    CHECK(beta_limit_large_eps(5) == doctest::Approx(1 - 1.0 / 720));

    CHECK(beta_third_term_limit(1.0, 2) == doctest::Approx(1.0 / 6));
    CHECK(beta_third_term_limit(1e-9, 3) == doctest::Approx(0.0));
    CHECK(beta_third_term_limit(0.1, 2) == doctest::Approx(0.0046667).epsilon(1e-4));

    // the d -> infinity third term is approached by g_{d-r}
    for (const double eps : {0.2, 0.6, 1.0})
        for (const int r : {1, 2, 3}) {
            const double lim = beta_third_term_limit(eps, r);
            const int d = 4000;
            const double g = g_k(eps, r, eps / (d - r), d - r);
            CHECK(g == doctest::Approx(lim).epsilon(5e-3));
        }
}

TEST_CASE("beta floor and monotonicity") {
    for (const int r : {1, 2, 3}) {
        const double floor_val = beta_limit_large_eps(r);
        double prev = 1.0;
        for (int i = 1; i <= 60; ++i) {
            const int d = 40;
            const double eps = (1.0 - static_cast<double>(r) / d) * i / 60.0;
            const double beta = beta_closed_form(eps, r, d).beta;
            CHECK(beta >= floor_val - 1e-12);
            CHECK(beta < 1.0);
            CHECK(beta <= prev + 1e-12);  // non-increasing in eps
            prev = beta;
        }
    }
    // non-decreasing in d at fixed eps, r
    for (const double eps : {0.2, 0.4})
        for (const int r : {1, 2}) {
            double prev = 0;
            for (int d = r + 2; d <= 40; ++d) {
                const double beta = beta_closed_form(eps, r, d).beta;
                CHECK(beta >= prev - 1e-12);
                prev = beta;
            }
        }
}

TEST_CASE("elementary symmetric polynomials") {
    CHECK(elementary_symmetric(0, RationalSpectrum::uniform(3)) == Rational(1));
    CHECK(elementary_symmetric(2, RationalSpectrum::uniform(2)) == make_rational(1, 4));
    CHECK(elementary_symmetric(4, RationalSpectrum::uniform(3)) == Rational(0));  // k > d

    // e_k = s_(1^k)
    const CounterRng rng{31, 0};
    std::uint64_t ctr = 0;
    for (int rep = 0; rep < 10; ++rep) {
        const auto a = oracle::random_rational_spectrum(4, 12, rng, ctr);
        for (int k = 1; k <= 4; ++k)
            CHECK(elementary_symmetric(k, a) ==
                  schur_eval(Partition(std::vector<int>(static_cast<std::size_t>(k), 1)), a));
    }
}

TEST_CASE("e_{r+1} is Schur-concave under pinching") {
    const CounterRng rng{32, 0};
    std::uint64_t ctr = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const int d = 5;
        Spectrum p = oracle::random_float_spectrum(d, rng, ctr);
        // pinch: move mass from a larger entry toward a smaller one
        std::vector<double> q = p.probs;
        const int i = static_cast<int>(rng.uniform(ctr++) * (d - 1));
        const int j = i + 1 + static_cast<int>(rng.uniform(ctr++) * (d - 1 - i));
        const double room = (q[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(j)]) / 2;
        const double delta = room * rng.uniform(ctr++);
        q[static_cast<std::size_t>(i)] -= delta;
        q[static_cast<std::size_t>(j)] += delta;
        const Spectrum qs = Spectrum::make(std::move(q));
        for (int r = 1; r <= 3; ++r)
            CHECK(elementary_symmetric(r + 1, p) <= elementary_symmetric(r + 1, qs) + 1e-12);
    }
}

TEST_CASE("numeric oracle agrees with the closed form (spot grid)") {
    OracleParams params;
    params.q_points = 1024;
    params.random_samples = 2000;
    for (const int r : {1, 2}) {
        for (const int d : {8, 16}) {
            for (int i = 1; i <= 8; ++i) {
                const double eps = (1.0 - static_cast<double>(r) / d) * i / 8.0;
                const BetaResult cf = beta_closed_form(eps, r, d);
                const BetaResult nu = beta_numeric_oracle(eps, r, d, params);
                CHECK(std::abs(cf.beta - nu.beta) <= 1e-6);
            }
        }
    }
}

TEST_CASE("the shifted binomial reading fails against the oracle") {
    // pins the binomial convention: with the shifted reading the closed form
    // drifts off the oracle at r = 2, with the falling-factorial reading it
    // stays within tolerance
    OracleParams params;
    params.q_points = 1024;
    params.random_samples = 0;
    double worst_falling = 0, worst_shifted = 0;
    for (int i = 1; i <= 10; ++i) {
        const double eps = (1.0 - 2.0 / 8) * i / 10.0;
        const double oracle_beta = beta_numeric_oracle(eps, 2, 8, params).beta;
        worst_falling = std::max(
            worst_falling,
            std::abs(beta_closed_form(eps, 2, 8, BinomialConvention::falling_factorial).beta - oracle_beta));
        worst_shifted = std::max(
            worst_shifted,
            std::abs(beta_closed_form(eps, 2, 8, BinomialConvention::shifted_inline).beta - oracle_beta));
    }
    CHECK(worst_falling <= 1e-6);
    CHECK(worst_shifted > 1e-3);
}

TEST_CASE("few-copy complexity") {
    const FewCopyComplexity a = copy_complexity_few_copy(0.3, 1, 1.0 / 3);
    CHECK(a.rounds == 5);
    CHECK(a.total_copies == 10);
    CHECK(a.per_round_beta == doctest::Approx(0.79));

    const FewCopyComplexity b = copy_complexity_few_copy(0.1, 2, 1.0 / 3);
    CHECK(b.rounds == 235);
    CHECK(b.total_copies == 705);

    const FewCopyComplexity c = copy_complexity_few_copy(0.2, 1, 1.0);
    CHECK(c.rounds == 0);
    CHECK(c.total_copies == 0);

    CHECK_THROWS_AS(copy_complexity_few_copy(0.4, 2, 0.5), domain_error);  // eps >= 1/(r+2)
    CHECK_THROWS_AS(copy_complexity_few_copy(0.1, 2, 0.0), domain_error);

    // beta^k <= target < beta^{k-1}
    const double beta = b.per_round_beta;
    CHECK(std::pow(beta, static_cast<double>(b.rounds)) <= 1.0 / 3 + 1e-12);
    CHECK(std::pow(beta, static_cast<double>(b.rounds - 1)) > 1.0 / 3);
}
