#include "qpt/verify.hpp"

#include <cmath>
#include <functional>

#include "qpt/bounds.hpp"
#include "qpt/operator_oracle.hpp"
#include "qpt/partitions.hpp"
#include "qpt/ranktest.hpp"
#include "qpt/rng.hpp"
#include "qpt/schmidt.hpp"
#include "qpt/ttns.hpp"
#include "qpt/wss.hpp"

namespace qpt {

namespace {

struct Checker {
    SuiteResult result;

    void check(const std::string& name, bool ok) {
        if (ok) {
            ++result.passed;
        } else {
            ++result.failed;
            result.failures.push_back(name);
        }
    }
};

RationalSpectrum random_rational_spectrum(int d, int denom, const CounterRng& rng, std::uint64_t& ctr) {
    std::vector<long> w(static_cast<std::size_t>(d));
    long sum = 0;
    for (auto& v : w) {
        v = 1 + static_cast<long>(rng.uniform(ctr++) * denom);
        sum += v;
    }
    std::vector<Rational> p;
    for (long v : w) p.push_back(make_rational(v, sum));
    return RationalSpectrum::make(std::move(p));
}

CMatrix random_state_matrix(int rows, int cols, const CounterRng& rng, std::uint64_t& ctr) {
    CMatrix m(rows, cols);
    double nrm = 0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const double re = rng.uniform(ctr++) - 0.5, im = rng.uniform(ctr++) - 0.5;
            m(i, j) = cplx{re, im};
            nrm += re * re + im * im;
        }
    m *= cplx{1.0 / std::sqrt(nrm), 0};
    return m;
}

SuiteResult suite_partitions(std::uint64_t seed) {
    Checker c;
    c.result.name = "partitions";
    c.check("p(5) = 7", enumerate_partitions(5, 5).size() == 7);
    const auto p42 = enumerate_partitions(4, 2);
    c.check("partitions(4, rows<=2) order",
            p42.size() == 3 && p42[0].parts() == std::vector<int>{4} &&
                p42[1].parts() == std::vector<int>{3, 1} && p42[2].parts() == std::vector<int>{2, 2});
    c.check("dim (N) = 1", dim_symmetric_irrep(Partition({7})) == 1);
    c.check("dim (1^6) = 1", dim_symmetric_irrep(Partition({1, 1, 1, 1, 1, 1})) == 1);
    c.check("dim (2,2,1) = 5", dim_symmetric_irrep(Partition({2, 2, 1})) == 5);
    c.check("h_0 = 1", complete_homogeneous(0, RationalSpectrum::uniform(3)) == Rational(1));
    c.check("h_1 = 1", complete_homogeneous(1, RationalSpectrum::uniform(4)) == Rational(1));

    const CounterRng rng{seed, 1};
    std::uint64_t ctr = 0;
    bool jt_ok = true, norm_ok = true;
    for (int rep = 0; rep < 6 && jt_ok; ++rep) {
        const RationalSpectrum a = random_rational_spectrum(3, 12, rng, ctr);
        for (int n = 1; n <= 6; ++n)
            for (const Partition& lam : enumerate_partitions(n, 3))
                if (schur_eval(lam, a) != schur_eval_ssyt(lam, a)) jt_ok = false;
    }
    for (int n = 1; n <= 8; ++n) {
        const RationalSpectrum a = random_rational_spectrum(3, 9, rng, ctr);
        Rational total(0);
        for (const Partition& lam : enumerate_partitions(n, 3))
            total += Rational(dim_symmetric_irrep(lam)) * schur_eval(lam, a);
        if (total != 1) norm_ok = false;
    }
    c.check("Jacobi-Trudi matches SSYT enumeration", jt_ok);
    c.check("sum dim * schur = 1", norm_ok);
    return c.result;
}

SuiteResult suite_wss(std::uint64_t seed) {
    Checker c;
    c.result.name = "wss";
    const auto dist = wss_distribution(RationalSpectrum::uniform(2), 2);
    c.check("uniform-2 N=2 distribution",
            dist.entries.at(Partition({2})) == make_rational(3, 4) &&
                dist.entries.at(Partition({1, 1})) == make_rational(1, 4));
    c.check("lds [3,2,1]", lds_length({3, 2, 1}, 3) == 3);
    c.check("lds [1,1,1]", lds_length({1, 1, 1}, 3) == 1);
    c.check("lds [2,3,1,2]", lds_length({2, 3, 1, 2}, 3) == 2);
    c.check("accept uniform-2 N=2 r=1",
            accept_prob_rank_test_exact(RationalSpectrum::uniform(2), 2, 1) == make_rational(3, 4));
    c.check("accept N<=r short-circuit",
            accept_prob_rank_test_exact(Spectrum::uniform(4), 3, 3) == 1.0);

    const CounterRng rng{seed, 2};
    std::uint64_t ctr = 0;
    bool agree = true, mono_r = true, mono_n = true;
    for (int rep = 0; rep < 4; ++rep) {
        const RationalSpectrum a = random_rational_spectrum(3, 8, rng, ctr);
        for (int n = 1; n <= 6; ++n)
            for (int r = 1; r <= 2; ++r)
                if (accept_prob_rank_test_exact(a, n, r) != accept_prob_rank_test_brute(a, n, r))
                    agree = false;
        const Spectrum f = to_float_spectrum(a);
        for (int n = 2; n <= 12; ++n) {
            if (accept_prob_rank_test_exact(f, n, 1) > accept_prob_rank_test_exact(f, n, 2) + 1e-12)
                mono_r = false;
            if (accept_prob_rank_test_exact(f, n, 2) >
                accept_prob_rank_test_exact(f, n - 1, 2) + 1e-12)
                mono_n = false;
        }
    }
    c.check("exact equals brute (rational)", agree);
    c.check("acceptance monotone in r", mono_r);
    c.check("acceptance non-increasing in N", mono_n);

    const McEstimate a1 = sample_lds_mc(Spectrum::uniform(2), 2, 1, 20000, seed, 1);
    const McEstimate a2 = sample_lds_mc(Spectrum::uniform(2), 2, 1, 20000, seed, 4);
    c.check("mc deterministic across threads", a1 == a2);
    c.check("mc near brute", std::abs(a1.value - 0.75) <= 4 * a1.stderr_ + 1e-9);
    c.check("lds bound formula",
            std::abs(lds_upper_bound(1, 4, 2) - std::pow(1.5 * std::exp(2.0) / 4.0, 2)) < 1e-12);
    return c.result;
}

SuiteResult suite_ranktest(std::uint64_t seed) {
    Checker c;
    c.result.name = "ranktest";
    c.check("g_3(0.75,1,0.25) = 0.375", std::abs(g_k(0.75, 1, 0.25, 3) - 0.375) < 1e-15);
    c.check("beta(0.75,1,4) = 0.625", std::abs(beta_closed_form(0.75, 1, 4).beta - 0.625) < 1e-12);
    c.check("beta(0.5,1,8) = 0.75", std::abs(beta_closed_form(0.5, 1, 8).beta - 0.75) < 1e-12);
    c.check("beta_r1 omega=1/3", std::abs(beta_r1(2.0 / 3.0, 6) - 2.0 / 3.0) < 1e-12);
    c.check("limit r=2", std::abs(beta_limit_large_eps(2) - (1 - 1.0 / 6)) < 1e-15);
    c.check("third term eps=1 r=2", std::abs(beta_third_term_limit(1, 2) - 1.0 / 6) < 1e-15);
    c.check("e_2(1/2,1/2) = 1/4",
            elementary_symmetric(2, RationalSpectrum::uniform(2)) == make_rational(1, 4));

    OracleParams quick;
    quick.q_points = 512;
    quick.random_samples = 500;
    quick.seed = seed;
    bool oracle_ok = true;
    for (const double eps : {0.2, 0.5, 0.8}) {
        const BetaResult cf = beta_closed_form(eps, 1, 8);
        const BetaResult nu = beta_numeric_oracle(eps, 1, 8, quick);
        if (std::abs(cf.beta - nu.beta) > 1e-6) oracle_ok = false;
    }
    for (const double eps : {0.2, 0.4, 0.6}) {
        const BetaResult cf = beta_closed_form(eps, 2, 8);
        const BetaResult nu = beta_numeric_oracle(eps, 2, 8, quick);
        if (std::abs(cf.beta - nu.beta) > 1e-6) oracle_ok = false;
    }
    c.check("closed form matches oracle (spot grid)", oracle_ok);

    const BetaResult w = beta_closed_form(0.6, 2, 6);
    const double acc = accept_prob_rank_test_exact(w.witness_spectrum, 3, 2);
    c.check("witness acceptance equals beta", std::abs(acc - w.beta) < 1e-9);

    const FewCopyComplexity fc = copy_complexity_few_copy(0.3, 1, 1.0 / 3);
    c.check("fewcopy r=1 eps=0.3", fc.rounds == 5 && fc.total_copies == 10);
    return c.result;
}

SuiteResult suite_schmidt(std::uint64_t seed) {
    Checker c;
    c.result.name = "schmidt";
    CMatrix prod(2, 2);
    prod(0, 0) = 1;
    const BipartiteState ps = make_bipartite(prod);
    c.check("product state delta_1 = 0", delta_r(ps, 1) == 0);
    c.check("product state distance 0", distance_to_sr(ps, 1) == 0);

    CMatrix bell(2, 2);
    bell(0, 0) = bell(1, 1) = 1 / std::sqrt(2.0);
    const BipartiteState bs = make_bipartite(bell, true);
    c.check("bell distance", std::abs(distance_to_sr(bs, 1) - std::sqrt(0.5)) < 1e-12);

    const CounterRng rng{seed, 3};
    std::uint64_t ctr = 0;
    bool consistent = true;
    for (int rep = 0; rep < 10; ++rep) {
        const BipartiteState st = BipartiteState{random_state_matrix(3, 4, rng, ctr)};
        const double dr = delta_r(st, 2);
        const BipartiteState approx = best_rank_r_approx(st, 2);
        const double ov = overlap(st, approx);
        if (std::abs(ov * ov - (1 - dr)) > 1e-10) consistent = false;
        if (std::abs(distance_to_sr(st, 2) - std::sqrt(dr)) > 1e-12) consistent = false;
    }
    c.check("overlap^2 = 1 - delta_r = 1 - distance^2", consistent);
    return c.result;
}

SuiteResult suite_ttns(std::uint64_t seed) {
    Checker c;
    c.result.name = "ttns";
    const Tree path3 = path_tree(3);
    const auto [l, r] = edge_bipartition(path3, {0, 1});
    c.check("path bipartition", l == std::vector<int>{0} && r == std::vector<int>{1, 2});

    const Spectrum hs = hard_instance_spectrum<double>(0.4, 5, 3);
    c.check("hard spectrum 0.84/0.08/0.08",
            std::abs(hs.probs[0] - 0.84) < 1e-15 && std::abs(hs.probs[1] - 0.08) < 1e-15 &&
                std::abs(hs.probs[2] - 0.08) < 1e-15);

    const Tree p4 = path_tree(4);
    const CounterRng rng{seed, 4};
    std::uint64_t ctr = 0;
    bool faithful_ok = true;
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<cplx> amps(16);
        double nrm = 0;
        for (auto& a : amps) {
            const double re = rng.uniform(ctr++) - 0.5;
            const double im = rng.uniform(ctr++) - 0.5;
            a = cplx{re, im};
            nrm += std::norm(a);
        }
        for (auto& a : amps) a /= std::sqrt(nrm);
        const TreeState st = make_tree_state({2, 2, 2, 2}, amps);
        const TtnsApproxResult res = faithful_ttns_approx(st, p4, 1);
        if (!is_ttns(res.approx, p4, 1).ok) faithful_ok = false;
        if (!res.certificate.bound_vacuous &&
            res.certificate.measured_overlap < res.certificate.overlap_bound - 1e-10)
            faithful_ok = false;
        if (res.certificate.residual_sq > res.certificate.tail_sum + 1e-10) faithful_ok = false;
    }
    c.check("faithful approx invariants", faithful_ok);

    const HardInstanceAccept acc = ttns_accept_hard_exact(0.4, 3, 3, 2, 10);
    c.check("acceptance multiplicative",
            std::abs(acc.value - acc.single_edge * acc.single_edge) < 1e-14);
    bool far_ok = true;
    for (const double eps : {0.1, 0.2, 0.3, 0.4})
        for (const int n : {2, 3, 5})
            if (farness_hard_instance(eps, n, 5, 2).distance < eps) far_ok = false;
    c.check("farness >= eps", far_ok);

    const Tree star = star_tree(4);
    const std::string round = tree_to_json(tree_from_json(tree_to_json(star)));
    c.check("tree json round-trip", round == tree_to_json(star));
    return c.result;
}

SuiteResult suite_bounds(std::uint64_t) {
    Checker c;
    c.result.name = "bounds";
    c.check("N=3 t=1/3 exact 26/27",
            prob_lds_le2_exact<Rational>(3, make_rational(1, 3), make_rational(1, 3)) ==
                make_rational(26, 27));
    bool paths_agree = true;
    for (int n = 1; n <= 20 && paths_agree; ++n)
        for (int num = 1; num <= 3; ++num) {
            const Rational t = make_rational(num, 12);
            if (prob_lds_le2_exact<Rational>(n, t, t) != prob_lds_le2_ssyt_counts<Rational>(n, t))
                paths_agree = false;
        }
    c.check("schur path equals tableau-count path", paths_agree);
    c.check("chernoff t=0", chernoff_tail(5, 0) == 1.0);
    c.check("chernoff mu=10 t=1", std::abs(chernoff_tail(10, 1) - std::exp(-10.0 / 3)) < 1e-15);
    c.check("majorization (1,0,0) over uniform",
            majorization_check(Spectrum::make({1, 0, 0}), Spectrum::uniform(3)));
    const SubsequenceBoundCheck sb = subsequence_bound_check(3, 1.0 / 3);
    c.check("bound check N=3 t=1/3", sb.satisfied && std::abs(sb.exact - 1.0 / 27) < 1e-12);
    const Prod2Budget budget = prod2_test_budget(100, 0.5);
    c.check("n3 = floor(20 sqrt(n)/eps^2)", budget.n3 == 800);
    return c.result;
}

SuiteResult suite_operators(std::uint64_t seed) {
    Checker c;
    c.result.name = "operators";
    const DenseOperator id2 = permutation_operator({0, 1, 2}, 2);
    c.check("identity permutation", (id2.matrix - CMatrix::identity(8)).frobenius_norm() < 1e-14);

    const DenseOperator antis = antisymmetric_projector(3, 3);
    c.check("antisym trace = C(3,3)", std::abs(antis.matrix.trace().real() - 1.0) < 1e-12);
    c.check("antisym on maximally mixed",
            std::abs(trace_with_diagonal_power(antis, Spectrum::uniform(3)) - 1.0 / 27) < 1e-12);
    const DenseOperator sym = symmetric_projector(2, 3);
    c.check("sym trace = C(4,3)", std::abs(sym.matrix.trace().real() - 4.0) < 1e-12);
    c.check("sym idempotent", (sym.matrix * sym.matrix - sym.matrix).frobenius_norm() < 1e-12);

    c.check("chi_(N) trivial", mn_character(Partition({4}), Partition({2, 1, 1})) == 1);
    c.check("chi sign rep", mn_character(Partition({1, 1, 1}), Partition({2, 1})) == -1);

    bool wss_trace_ok = true;
    const CounterRng rng{seed, 6};
    std::uint64_t ctr = 0;
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<double> p(3);
        double sum = 0;
        for (auto& v : p) {
            v = 0.05 + rng.uniform(ctr++);
            sum += v;
        }
        for (auto& v : p) v /= sum;
        const Spectrum spec = Spectrum::make(std::move(p));
        for (const Partition& lam : enumerate_partitions(3, 3)) {
            const DenseOperator proj = young_projector(lam, 3, 3);
            const double lhs = trace_with_diagonal_power(proj, spec);
            const double rhs = to_double(dim_symmetric_irrep(lam)) * schur_eval(lam, spec);
            if (std::abs(lhs - rhs) > 1e-12) wss_trace_ok = false;
        }
    }
    c.check("Tr(P_lambda rho^N) = dim * schur", wss_trace_ok);

    const SrIdentityResiduals res = verify_sr_projector_identity(2, 2, 2, 1, seed);
    c.check("sr projector identity (2,2,2,1)", res.commuted <= 1e-10);
    return c.result;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
    return {"partitions", "wss", "ranktest", "schmidt", "ttns", "bounds", "operators"};
}

std::vector<SuiteResult> run_verify(const std::string& suite, std::uint64_t seed) {
    std::vector<SuiteResult> out;
    auto want = [&](const std::string& name) { return suite == "all" || suite == name; };
    if (want("partitions")) out.push_back(suite_partitions(seed));
    if (want("wss")) out.push_back(suite_wss(seed));
    if (want("ranktest")) out.push_back(suite_ranktest(seed));
    if (want("schmidt")) out.push_back(suite_schmidt(seed));
    if (want("ttns")) out.push_back(suite_ttns(seed));
    if (want("bounds")) out.push_back(suite_bounds(0));
    if (want("operators")) out.push_back(suite_operators(seed));
    if (out.empty()) throw domain_error("unknown verify suite: " + suite);
    return out;
}

}  // namespace qpt
