#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle_helpers.hpp"
#include "qpt/partitions.hpp"

using namespace qpt;

namespace {

// independent recursive partition counter
long long count_rec(int n, int max_part, int rows_left) {
    if (n == 0) return 1;
    if (rows_left == 0 || max_part == 0) return 0;
    long long c = 0;
    for (int k = std::min(n, max_part); k >= 1; --k) c += count_rec(n - k, k, rows_left - 1);
    return c;
}

}  // namespace

TEST_CASE("partition enumeration") {
    const auto single = enumerate_partitions(1, 5);
    REQUIRE(single.size() == 1);
    CHECK(single[0].parts() == std::vector<int>{1});

    const auto p42 = enumerate_partitions(4, 2);
    REQUIRE(p42.size() == 3);
    CHECK(p42[0].parts() == std::vector<int>{4});
    CHECK(p42[1].parts() == std::vector<int>{3, 1});
    CHECK(p42[2].parts() == std::vector<int>{2, 2});

    CHECK(enumerate_partitions(5, 5).size() == 7);  // p(5) = 7

    for (int n = 1; n <= 10; ++n)
        for (int rows = 1; rows <= n; ++rows) {
            const auto got = enumerate_partitions(n, rows);
            CHECK(static_cast<long long>(got.size()) == count_rec(n, n, rows));
            CHECK(count_partitions(n, rows) == got.size());
            // reverse-lexicographic, no duplicates
            for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i] < got[i - 1]);
        }

    CHECK_THROWS_AS(enumerate_partitions(0, 3), domain_error);
    CHECK_THROWS_AS(enumerate_partitions(3, 0), domain_error);
}

TEST_CASE("partition type invariants") {
    CHECK_THROWS_AS(Partition({1, 2}), domain_error);
    CHECK_THROWS_AS(Partition({2, 0}), domain_error);
    const Partition lam({3, 1});
    CHECK(lam.n() == 4);
    CHECK(lam.rows() == 2);
    CHECK(lam.str() == "(3,1)");
}

TEST_CASE("irrep dimension via hook-length formula") {
    CHECK(dim_symmetric_irrep(Partition({6})) == 1);
    CHECK(dim_symmetric_irrep(Partition({1, 1, 1, 1, 1})) == 1);
    CHECK(dim_symmetric_irrep(Partition({2, 2, 1})) == 5);

    // brute-force standard-tableau count for |lambda| <= 8
    for (int n = 1; n <= 8; ++n)
        for (const Partition& lam : enumerate_partitions(n, n))
            CHECK((dim_symmetric_irrep(lam) == oracle::count_syt(lam.parts())));

    // log variant agrees
    const Partition big({10, 7, 3});
    CHECK(std::abs(log_dim_symmetric_irrep(big.parts()) -
                   std::log(to_double(dim_symmetric_irrep(big)))) < 1e-10);
}

TEST_CASE("complete homogeneous polynomials") {
    const RationalSpectrum half = RationalSpectrum::uniform(2);
    CHECK(complete_homogeneous(0, half) == Rational(1));
    CHECK(complete_homogeneous(1, half) == Rational(1));
    CHECK(complete_homogeneous(2, half) == make_rational(3, 4));
    CHECK_THROWS_AS(complete_homogeneous(-1, half), domain_error);
}

TEST_CASE("schur examples") {
    const RationalSpectrum half = RationalSpectrum::uniform(2);
    CHECK(schur_eval(Partition({1, 1}), half) == make_rational(1, 4));
    CHECK(schur_eval(Partition({2}), half) == make_rational(3, 4));
    CHECK(schur_eval(Partition({1, 1, 1}), half) == Rational(0));

    RationalSpectrum point;
    point.probs = {Rational(1), Rational(0), Rational(0), Rational(0)};
    CHECK(schur_eval_ssyt(Partition({2, 2, 1}), point) == Rational(0));
    CHECK(schur_eval_ssyt(Partition({2}), half) == make_rational(3, 4));
    CHECK(schur_eval_ssyt(Partition({1}), RationalSpectrum::uniform(4)) == Rational(1));

    CHECK_THROWS_AS(schur_eval_ssyt(Partition({13}), RationalSpectrum::uniform(2)), domain_error);
    CHECK_THROWS_AS(schur_eval_ssyt(Partition({3}), RationalSpectrum::uniform(2), 2), cap_exceeded);
}

TEST_CASE("Jacobi-Trudi equals SSYT enumeration on random rational spectra") {
    const CounterRng rng{11, 0};
    std::uint64_t ctr = 0;
    std::vector<RationalSpectrum> spectra;
    for (int i = 0; i < 50; ++i) spectra.push_back(oracle::random_rational_spectrum(4, 20, rng, ctr));
    for (int n = 1; n <= 10; ++n)
        for (const Partition& lam : enumerate_partitions(n, 4)) {
            // every spectrum on the small shapes, a rotating subset on the big ones
            const std::size_t step = (n <= 7) ? 1 : 7;
            for (std::size_t i = 0; i < spectra.size(); i += step)
                CHECK(schur_eval(lam, spectra[i]) == schur_eval_ssyt(lam, spectra[i]));
        }
}

TEST_CASE("schur is a symmetric function") {
    const CounterRng rng{12, 0};
    std::uint64_t ctr = 0;
    for (int rep = 0; rep < 20; ++rep) {
        const RationalSpectrum sorted = oracle::random_rational_spectrum(4, 15, rng, ctr);
        RationalSpectrum shuffled;  // bypass make() to keep an unsorted order
        shuffled.probs = sorted.probs;
        std::swap(shuffled.probs[0], shuffled.probs[3]);
        std::swap(shuffled.probs[1], shuffled.probs[2]);
        const Partition lam({3, 2});
        CHECK(schur_eval_ssyt(lam, shuffled) == schur_eval(lam, sorted));
    }
}

TEST_CASE("WSS normalization: sum over shapes of dim times schur is 1") {
    const CounterRng rng{13, 0};
    std::uint64_t ctr = 0;
    for (int n = 1; n <= 12; ++n) {
        const RationalSpectrum a = oracle::random_rational_spectrum(4, 10, rng, ctr);
        Rational total(0);
        for (const Partition& lam : enumerate_partitions(n, 4))
            total += Rational(dim_symmetric_irrep(lam)) * schur_eval(lam, a);
        CHECK(total == 1);
    }
}

TEST_CASE("float schur path tracks the rational path") {
    const CounterRng rng{14, 0};
    std::uint64_t ctr = 0;
    for (int rep = 0; rep < 10; ++rep) {
        const RationalSpectrum a = oracle::random_rational_spectrum(3, 12, rng, ctr);
        const Spectrum f = to_float_spectrum(a);
        for (const Partition& lam : enumerate_partitions(9, 3)) {
            const double exact = to_double(schur_eval(lam, a));
            CHECK(schur_eval(lam, f) == doctest::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("spectrum validation") {
    CHECK_THROWS_AS(Spectrum::make({0.5, 0.4}), domain_error);
    CHECK_THROWS_AS(Spectrum::make({1.5, -0.5}), domain_error);
    CHECK_THROWS_AS(RationalSpectrum::make({make_rational(1, 2), make_rational(1, 3)}), domain_error);
    const Spectrum s = Spectrum::make({0.25, 0.75});
    CHECK(s.probs[0] == 0.75);  // sorted non-increasing
}
