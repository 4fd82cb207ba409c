#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle_helpers.hpp"
#include "qpt/operator_oracle.hpp"
#include "qpt/ranktest.hpp"

using namespace qpt;

namespace {

std::vector<int> compose(const std::vector<int>& pi, const std::vector<int>& sigma) {
    std::vector<int> out(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) out[i] = pi[static_cast<std::size_t>(sigma[i])];
    return out;
}

long long class_size(const Partition& type) {
    // n! / z_mu with z_mu = prod k^{m_k} m_k!
    long long z = 1;
    int prev = -1, run = 0;
    for (int part : type.parts()) {
        if (part == prev) {
            ++run;
        } else {
            prev = part;
            run = 1;
        }
        z *= part * run;
    }
    long long fact = 1;
    for (int i = 2; i <= type.n(); ++i) fact *= i;
    return fact / z;
}

}  // namespace

TEST_CASE("permutation operators") {
    const DenseOperator id = permutation_operator({0, 1, 2}, 2);
    CHECK((id.matrix - CMatrix::identity(8)).frobenius_norm() < 1e-14);

    // W_pi W_sigma = W_{pi o sigma}, and unitarity
    const std::vector<std::vector<int>> perms = {{1, 0, 2}, {2, 0, 1}, {0, 2, 1}, {1, 2, 0}};
    for (const auto& pi : perms)
        for (const auto& sigma : perms) {
            const CMatrix lhs = permutation_operator(pi, 3).matrix * permutation_operator(sigma, 3).matrix;
            const CMatrix rhs = permutation_operator(compose(pi, sigma), 3).matrix;
            CHECK((lhs - rhs).frobenius_norm() < 1e-13);
        }
    const DenseOperator w = permutation_operator({1, 2, 0}, 2);
    CHECK((w.matrix * w.matrix.adjoint() - CMatrix::identity(8)).frobenius_norm() < 1e-13);

    CHECK_THROWS_AS(permutation_operator({0, 0, 1}, 2), domain_error);
    CHECK_THROWS_AS(permutation_operator({0, 1, 2, 3, 4}, 4), cap_exceeded);  // 4^5 > 512
}

TEST_CASE("antisymmetric projector") {
    const DenseOperator p43 = antisymmetric_projector(4, 3);
    CHECK(p43.matrix.trace().real() == doctest::Approx(4.0).epsilon(1e-12));  // C(4,3)
    CHECK((p43.matrix * p43.matrix - p43.matrix).frobenius_norm() < 1e-12);

    const DenseOperator p33 = antisymmetric_projector(3, 3);
    CHECK(trace_with_diagonal_power(p33, Spectrum::uniform(3)) == doctest::Approx(1.0 / 27).epsilon(1e-12));

    // equals e_N of the spectrum for random diagonal states
    const CounterRng rng{71, 0};
    std::uint64_t ctr = 0;
    for (int d = 2; d <= 4; ++d)
        for (int n = 2; n <= 3; ++n) {
            const Spectrum spec = oracle::random_float_spectrum(d, rng, ctr);
            if (n > d) continue;
            const DenseOperator p = antisymmetric_projector(d, n);
            CHECK(std::abs(trace_with_diagonal_power(p, spec) - elementary_symmetric(n, spec)) < 1e-12);
        }
}

TEST_CASE("symmetric projector") {
    const DenseOperator p = symmetric_projector(2, 3);
    CHECK(p.matrix.trace().real() == doctest::Approx(4.0).epsilon(1e-12));  // C(4,3)
    CHECK((p.matrix * p.matrix - p.matrix).frobenius_norm() < 1e-12);
    CHECK((p.matrix - p.matrix.adjoint()).frobenius_norm() < 1e-12);

    // fixes tensor powers
    const CounterRng rng{72, 0};
    std::uint64_t ctr = 0;
    std::vector<cplx> v(2);
    double nrm = 0;
    for (auto& x : v) {
        x = cplx{rng.uniform(ctr++) - 0.5, rng.uniform(ctr++) - 0.5};
        nrm += std::norm(x);
    }
    for (auto& x : v) x /= std::sqrt(nrm);
    std::vector<cplx> pow(8);
    for (int g = 0; g < 8; ++g)
        pow[static_cast<std::size_t>(g)] = v[static_cast<std::size_t>(g >> 2 & 1)] *
                                           v[static_cast<std::size_t>(g >> 1 & 1)] *
                                           v[static_cast<std::size_t>(g & 1)];
    double diff = 0;
    for (int i = 0; i < 8; ++i) {
        cplx acc = 0;
        for (int j = 0; j < 8; ++j) acc += p.matrix(i, j) * pow[static_cast<std::size_t>(j)];
        diff += std::abs(acc - pow[static_cast<std::size_t>(i)]);
    }
    CHECK(diff < 1e-12);
}

TEST_CASE("Murnaghan-Nakayama characters") {
    CHECK(mn_character(Partition({4}), Partition({2, 1, 1})) == 1);
    CHECK(mn_character(Partition({4}), Partition({4})) == 1);
    // sign representation: sign of the class
    CHECK(mn_character(Partition({1, 1, 1}), Partition({2, 1})) == -1);
    CHECK(mn_character(Partition({1, 1, 1, 1}), Partition({4})) == -1);
    CHECK(mn_character(Partition({1, 1, 1, 1}), Partition({2, 2})) == 1);
    // identity column gives the dimension
    for (int n = 1; n <= 6; ++n)
        for (const Partition& lam : enumerate_partitions(n, n))
            CHECK((qpt::BigInt(static_cast<long>(mn_character(
                       lam, Partition(std::vector<int>(static_cast<std::size_t>(n), 1))))) ==
                   dim_symmetric_irrep(lam)));
    CHECK_THROWS_AS(mn_character(Partition({2}), Partition({3})), domain_error);

    // column orthogonality: sum over classes |class| chi^2 = N!
    for (int n = 2; n <= 6; ++n) {
        long long fact = 1;
        for (int i = 2; i <= n; ++i) fact *= i;
        for (const Partition& lam : enumerate_partitions(n, n)) {
            long long total = 0;
            for (const Partition& type : enumerate_partitions(n, n)) {
                const long long chi = mn_character(lam, type);
                total += class_size(type) * chi * chi;
            }
            CHECK(total == fact);
        }
    }
}

TEST_CASE("young projectors") {
    for (int d = 2; d <= 3; ++d)
        for (int n = 2; n <= 4; ++n) {
            CMatrix sum(static_cast<int>(std::pow(d, n)), static_cast<int>(std::pow(d, n)));
            std::vector<DenseOperator> projs;
            for (const Partition& lam : enumerate_partitions(n, d)) {
                projs.push_back(young_projector(lam, d, n));
                sum += projs.back().matrix;
            }
            // completeness of the isotypic decomposition
            CHECK((sum - CMatrix::identity(sum.rows())).frobenius_norm() < 1e-12);
            // idempotent, self-adjoint, mutually orthogonal
            for (std::size_t a = 0; a < projs.size(); ++a) {
                const CMatrix& pa = projs[a].matrix;
                CHECK((pa * pa - pa).frobenius_norm() < 1e-12);
                CHECK((pa - pa.adjoint()).frobenius_norm() < 1e-12);
                for (std::size_t b = a + 1; b < projs.size(); ++b)
                    CHECK((pa * projs[b].matrix).frobenius_norm() < 1e-12);
            }
        }
}

TEST_CASE("WSS probabilities at the operator level") {
    const CounterRng rng{73, 0};
    std::uint64_t ctr = 0;
    for (int d = 2; d <= 3; ++d)
        for (int n = 2; n <= 4; ++n)
            for (int rep = 0; rep < 3; ++rep) {
                const Spectrum spec = oracle::random_float_spectrum(d, rng, ctr);
                for (const Partition& lam : enumerate_partitions(n, d)) {
                    const double lhs = trace_with_diagonal_power(young_projector(lam, d, n), spec);
                    const double rhs = to_double(dim_symmetric_irrep(lam)) * schur_eval(lam, spec);
                    CHECK(std::abs(lhs - rhs) < 1e-12);
                }
            }
}

TEST_CASE("antisymmetric route reproduces 1 - beta on witness spectra") {
    for (const double eps : {0.3, 0.5, 0.7})
        for (const int r : {1, 2}) {
            const int d = 4;
            if (eps > 1.0 - static_cast<double>(r) / d) continue;
            const BetaResult res = beta_closed_form(eps, r, d);
            const DenseOperator anti = antisymmetric_projector(d, r + 1);
            const double reject = trace_with_diagonal_power(anti, res.witness_spectrum);
            CHECK(std::abs(reject - (1.0 - res.beta)) < 1e-12);
        }
}

TEST_CASE("Schmidt-rank projector identity") {
    const SrIdentityResiduals a = verify_sr_projector_identity(2, 2, 2, 1);
    CHECK(a.commuted <= 1e-10);
    CHECK(a.span_dim == 9);  // Sym^2(C^2) x Sym^2(C^2)
    CHECK(a.span_sampled < 1e-5);

    const SrIdentityResiduals b = verify_sr_projector_identity(2, 3, 2, 1);
    CHECK(b.commuted <= 1e-10);

    // r = d_a collapses both sides onto the symmetric projector
    const SrIdentityResiduals c = verify_sr_projector_identity(2, 3, 2, 2);
    CHECK(c.commuted <= 1e-12);
    const DenseOperator sym = symmetric_projector(6, 2);
    (void)sym;
}
