#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle_helpers.hpp"
#include "qpt/schmidt.hpp"
#include "qpt/ttns.hpp"

using namespace qpt;

namespace {

TreeState random_tree_state(const std::vector<int>& dims, const CounterRng& rng, std::uint64_t& ctr) {
    long long total = 1;
    for (int d : dims) total *= d;
    std::vector<cplx> amps(static_cast<std::size_t>(total));
    double nrm = 0;
    for (auto& a : amps) {
        a = cplx{rng.uniform(ctr++) - 0.5, rng.uniform(ctr++) - 0.5};
        nrm += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(nrm);
    return make_tree_state(dims, std::move(amps));
}

Tree random_tree(int n, const CounterRng& rng, std::uint64_t& ctr) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v)
        edges.emplace_back(static_cast<int>(rng.uniform(ctr++) * v), v);
    return make_tree(n, std::move(edges), 0);
}

}  // namespace

TEST_CASE("tree validation") {
    CHECK_NOTHROW(make_tree(3, {{0, 1}, {1, 2}}, 0));
    CHECK_THROWS_AS(make_tree(3, {{0, 1}}, 0), domain_error);              // too few edges
    CHECK_THROWS_AS(make_tree(3, {{0, 1}, {0, 1}}, 0), domain_error);      // not connected
    CHECK_THROWS_AS(make_tree(4, {{0, 1}, {1, 0}, {2, 3}}, 0), domain_error);
    CHECK_THROWS_AS(make_tree(3, {{0, 1}, {1, 3}}, 0), domain_error);      // vertex range
    CHECK_THROWS_AS(make_tree(3, {{0, 1}, {1, 2}}, 5), domain_error);      // root range
}

TEST_CASE("edge bipartition") {
    const Tree path3 = path_tree(3);
    const auto [l1, r1] = edge_bipartition(path3, {0, 1});
    CHECK(l1 == std::vector<int>{0});
    CHECK(r1 == std::vector<int>{1, 2});
    // orientation: component of the smaller endpoint first, either edge order
    const auto [l2, r2] = edge_bipartition(path3, {2, 1});
    CHECK(l2 == std::vector<int>{0, 1});
    CHECK(r2 == std::vector<int>{2});

    const Tree star = star_tree(5);
    const auto [sl, sr] = edge_bipartition(star, {0, 3});
    CHECK(sl == std::vector<int>{0, 1, 2, 4});
    CHECK(sr == std::vector<int>{3});

    CHECK_THROWS_AS(edge_bipartition(path3, {0, 2}), domain_error);

    const CounterRng rng{51, 0};
    std::uint64_t ctr = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const Tree t = random_tree(2 + static_cast<int>(rng.uniform(ctr++) * 8), rng, ctr);
        for (const auto& e : t.edges) {
            const auto [l, r] = edge_bipartition(t, e);
            CHECK(static_cast<int>(l.size() + r.size()) == t.n);
            std::vector<int> all = l;
            all.insert(all.end(), r.begin(), r.end());
            std::sort(all.begin(), all.end());
            for (int v = 0; v < t.n; ++v) CHECK(all[static_cast<std::size_t>(v)] == v);
        }
    }
}

TEST_CASE("edge schmidt spectrum") {
    // product across the edge: spectrum (1, 0, ...)
    const Tree p2 = path_tree(2);
    std::vector<cplx> prod(9);
    prod[4] = 1.0;  // |1> x |1>
    const TreeState ps = make_tree_state({3, 3}, prod);
    const Spectrum sp = edge_schmidt_spectrum(ps, p2, {0, 1});
    CHECK(sp.probs[0] == doctest::Approx(1.0));
    CHECK(sp.probs[1] == doctest::Approx(0.0));

    // consistent vertex relabeling permutes nothing physical
    const CounterRng rng{52, 0};
    std::uint64_t ctr = 0;
    const TreeState st = random_tree_state({2, 3, 2}, rng, ctr);
    const Tree p3 = path_tree(3);
    const Spectrum a = edge_schmidt_spectrum(st, p3, {0, 1});
    const Spectrum b = edge_schmidt_spectrum(st, p3, {1, 0});
    for (int i = 0; i < a.d(); ++i) CHECK(a.probs[static_cast<std::size_t>(i)] == b.probs[static_cast<std::size_t>(i)]);

    CHECK_THROWS_AS(edge_schmidt_spectrum(st, path_tree(4), {0, 1}), domain_error);
}

TEST_CASE("is_ttns") {
    const Tree p3 = path_tree(3);
    std::vector<cplx> prod(8);
    prod[0] = 1.0;
    const TreeState ps = make_tree_state({2, 2, 2}, prod);
    CHECK(is_ttns(ps, p3, 1).ok);

    const Tree p2 = path_tree(2);
    const TreeState hard = hard_instance_state(p2, 0.3, 3);
    CHECK_FALSE(is_ttns(hard, p2, 2).ok);  // rank d = 3 on the edge
    CHECK(is_ttns(hard, p2, 3).ok);
    const TtnsCheck chk = is_ttns(hard, p2, 2);
    CHECK(chk.edge_ranks == std::vector<int>{3});
}

TEST_CASE("faithful approximation: identity when r is large enough") {
    const CounterRng rng{53, 0};
    std::uint64_t ctr = 0;
    const Tree p3 = path_tree(3);
    const TreeState st = random_tree_state({2, 2, 2}, rng, ctr);
    const TtnsApproxResult res = faithful_ttns_approx(st, p3, 4);
    CHECK(res.certificate.tail_sum == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res.certificate.measured_overlap == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t g = 0; g < st.amplitudes.size(); ++g)
        CHECK(std::abs(res.approx.amplitudes[g] - st.amplitudes[g]) < 1e-10);
}

TEST_CASE("faithful approximation reduces to the bipartite truncation on one edge") {
    const CounterRng rng{54, 0};
    std::uint64_t ctr = 0;
    const Tree p2 = path_tree(2);
    for (int rep = 0; rep < 100; ++rep) {
        const TreeState st = random_tree_state({3, 3}, rng, ctr);
        const TtnsApproxResult res = faithful_ttns_approx(st, p2, 1);
        // overlap^2 with the input equals the kept weight 1 - tail
        CMatrix m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = st.amplitudes[static_cast<std::size_t>(i * 3 + j)];
        const BipartiteState bip{std::move(m)};
        const BipartiteState trunc = best_rank_r_approx(bip, 1);
        const double expect = overlap(bip, trunc);
        CHECK(res.certificate.measured_overlap == doctest::Approx(expect).epsilon(1e-10));
        CHECK(res.certificate.edge_tails[0] == doctest::Approx(delta_r(bip, 1)).epsilon(1e-10));
    }
}

TEST_CASE("faithful approximation invariants on random trees") {
    const CounterRng rng{55, 0};
    std::uint64_t ctr = 0;
    const std::vector<Tree> shapes = {path_tree(4), star_tree(4),
                                      make_tree(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}}, 0)};
    for (const Tree& tree : shapes) {
        for (int rep = 0; rep < 30; ++rep) {
            std::vector<int> dims(static_cast<std::size_t>(tree.n));
            for (auto& d : dims) d = 2 + static_cast<int>(rng.uniform(ctr++) * 2);
            const TreeState st = random_tree_state(dims, rng, ctr);
            for (int r = 1; r <= 2; ++r) {
                const TtnsApproxResult res = faithful_ttns_approx(st, tree, r);
                CHECK(is_ttns(res.approx, tree, r).ok);
                // certified overlap guarantee (trivially true when the bound is vacuous)
                CHECK(res.certificate.measured_overlap >= res.certificate.overlap_bound - 1e-10);
                // projector-distance certificate
                CHECK(res.certificate.residual_sq <= res.certificate.tail_sum + 1e-10);
                // certified tails are the original per-edge tails
                for (std::size_t e = 0; e < tree.edges.size(); ++e) {
                    const Spectrum spec = edge_schmidt_spectrum(st, tree, tree.edges[e]);
                    double tail = 0;
                    for (int j = r; j < spec.d(); ++j) tail += spec.probs[static_cast<std::size_t>(j)];
                    CHECK(res.certificate.edge_tails[e] == doctest::Approx(tail).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("hard instance spectrum") {
    const Spectrum s = hard_instance_spectrum<double>(0.4, 5, 3);
    CHECK(s.probs[0] == doctest::Approx(0.84));
    CHECK(s.probs[1] == doctest::Approx(0.08));
    CHECK(s.probs[2] == doctest::Approx(0.08));

    const RationalSpectrum rs = hard_instance_spectrum<Rational>(make_rational(2, 5), 5, 3);
    CHECK(rs.probs[0] == make_rational(21, 25));
    Rational total(0);
    for (const auto& p : rs.probs) total += p;
    CHECK(total == 1);

    const Spectrum tiny = hard_instance_spectrum<double>(1e-9, 4, 4);
    CHECK(tiny.probs[0] == doctest::Approx(1.0));

    CHECK_THROWS_AS(hard_instance_spectrum<double>(0.9, 3, 3), domain_error);
    CHECK_THROWS_AS(hard_instance_spectrum<double>(0.2, 1, 3), domain_error);
    CHECK_THROWS_AS(hard_instance_spectrum<double>(0.2, 3, 1), domain_error);
}

TEST_CASE("hard instance state") {
    // n = 2: the bipartite state itself
    const Tree p2 = path_tree(2);
    const TreeState st2 = hard_instance_state(p2, 0.3, 3);
    CHECK(st2.site_dims == std::vector<int>{3, 3});
    const Spectrum cut = edge_schmidt_spectrum(st2, p2, {0, 1});
    const Spectrum want = hard_instance_spectrum<double>(0.3, 2, 3);
    for (int j = 0; j < 3; ++j)
        CHECK(cut.probs[static_cast<std::size_t>(j)] == doctest::Approx(want.probs[static_cast<std::size_t>(j)]).epsilon(1e-12));

    // every edge cut of a star reproduces the spectrum (plus zero padding)
    const Tree star = star_tree(4);
    const TreeState sts = hard_instance_state(star, 0.35, 2);
    CHECK(sts.site_dims == std::vector<int>{8, 2, 2, 2});
    const Spectrum wants = hard_instance_spectrum<double>(0.35, 4, 2);
    for (const auto& e : star.edges) {
        const Spectrum got = edge_schmidt_spectrum(sts, star, e);
        for (int j = 0; j < 2; ++j)
            CHECK(got.probs[static_cast<std::size_t>(j)] == doctest::Approx(wants.probs[static_cast<std::size_t>(j)]).epsilon(1e-12));
        for (int j = 2; j < got.d(); ++j) CHECK(got.probs[static_cast<std::size_t>(j)] < 1e-12);
    }
    CHECK_FALSE(is_ttns(sts, star, 1).ok);  // rank d = 2 on each edge
    CHECK(is_ttns(sts, star, 2).ok);

    CHECK_THROWS_AS(hard_instance_state(star_tree(12), 0.3, 4), cap_exceeded);
}

TEST_CASE("hard instance farness") {
    for (const double eps : {0.05, 0.1, 0.2, 0.3, 0.4})
        for (const int n : {2, 3, 5, 9})
            for (const int r : {1, 2, 3}) {
                const HardInstanceFarness f = farness_hard_instance(eps, n, 2 * r + 1, r);
                CHECK(f.distance >= eps);
            }
    // n = 2 matches the schmidt-module distance on the explicit state
    const double eps = 0.25;
    const HardInstanceFarness f2 = farness_hard_instance(eps, 2, 3, 1);
    const TreeState st = hard_instance_state(path_tree(2), eps, 3);
    CMatrix m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = st.amplitudes[static_cast<std::size_t>(i * 3 + j)];
    CHECK(f2.distance == doctest::Approx(distance_to_sr(BipartiteState{std::move(m)}, 1)).epsilon(1e-10));

    CHECK(farness_hard_instance(1e-7, 3, 5, 2).distance < 1e-3);
    CHECK_THROWS_AS(farness_hard_instance(0.3, 3, 2, 2), domain_error);  // d < 2r-1
}

TEST_CASE("hard instance acceptance") {
    // N <= r short-circuits to 1
    CHECK(ttns_accept_hard_exact(0.3, 3, 3, 2, 2).value == 1.0);
    // multiplicativity against a direct single-edge computation
    const HardInstanceAccept acc = ttns_accept_hard_exact(0.4, 3, 3, 2, 20);
    const Spectrum edge = Spectrum::make({0.68, 0.16, 0.16});
    const double single = accept_prob_rank_test_exact(edge, 20, 2);
    CHECK(acc.single_edge == doctest::Approx(single).epsilon(1e-12));
    CHECK(acc.value == doctest::Approx(single * single).epsilon(1e-12));

    // brute agrees with exact
    const HardInstanceAccept bb = ttns_accept_hard_brute(0.4, 3, 3, 2, 8);
    const HardInstanceAccept be = ttns_accept_hard_exact(0.4, 3, 3, 2, 8);
    CHECK(bb.value == doctest::Approx(be.value).epsilon(1e-12));

    // MC agrees within 3 sigma, deterministic across thread counts
    const HardInstanceMc mc1 = ttns_accept_hard_mc(0.4, 3, 3, 2, 20, 200000, 5, 1);
    const HardInstanceMc mc8 = ttns_accept_hard_mc(0.4, 3, 3, 2, 20, 200000, 5, 8);
    CHECK(mc1.product == mc8.product);
    CHECK(mc1.single_edge == mc8.single_edge);
    CHECK(std::abs(mc1.product.value - acc.value) <= 3 * mc1.product.stderr_ + 1e-9);
    CHECK(std::abs(mc1.single_edge.value - acc.single_edge) <= 3 * mc1.single_edge.stderr_ + 1e-9);

    // eps -> 0 accepts almost surely
    CHECK(ttns_accept_hard_exact(1e-6, 3, 3, 1, 10).value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("lower-bound copy threshold") {
    const LbThreshold lb = lb_copy_threshold(2, 50, 0.4);
    CHECK(lb.value == doctest::Approx(2500.0 / (400.0 * std::log(4.0) * 0.16)).epsilon(1e-12));
    CHECK(lb.value == doctest::Approx(28.2).epsilon(1e-2));
    CHECK(lb.hypotheses_ok);
    CHECK_FALSE(lb_copy_threshold(2, 10, 0.4).hypotheses_ok);  // r < 50

    // linear scaling in (n-1) at fixed alpha ratio
    for (const int n : {3, 5, 9}) {
        const LbThreshold a = lb_copy_threshold(n, 50, 0.3);
        CHECK(a.value == doctest::Approx((n - 1) * 2500.0 / (400.0 * a.alpha_n * 0.09)).epsilon(1e-12));
    }
    // base knob
    const LbThreshold base2 = lb_copy_threshold(2, 50, 0.4, 2.0);
    CHECK(base2.alpha_n == doctest::Approx(2.0));  // log2(4)

    // acceptance at the threshold for the desk-scale regime points
    for (const double eps : {0.3, 0.4}) {
        const int n_at = static_cast<int>(std::floor(lb_copy_threshold(2, 50, eps).value));
        const HardInstanceAccept acc = ttns_accept_hard_exact(eps, 2, 99, 50, n_at);
        CHECK(acc.value >= 0.5);
    }
}

TEST_CASE("copy upper bounds") {
    CHECK(sr_copy_threshold(2, 0.3, 5, 1.0) == 0);
    // threshold decreasing in distance
    CHECK(sr_copy_threshold(1, 0.5, 3, 1.0 / 3) <= sr_copy_threshold(1, 0.25, 3, 1.0 / 3));
    // acceptance actually crosses the target at the threshold
    const long long t = sr_copy_threshold(2, 0.3, 5, 1.0 / 3);
    std::vector<double> p(5, 0.09 / 4);
    p[0] = 1 - 0.09;
    const Spectrum witness = Spectrum::make(std::move(p));
    CHECK(accept_prob_rank_test_exact(witness, static_cast<int>(t), 2) < 1.0 / 3);
    CHECK(accept_prob_rank_test_exact(witness, static_cast<int>(t) - 1, 2) >= 1.0 / 3);

    // n = 2 reduces to the single-edge threshold
    CHECK(ttns_copy_upper(2, 2, 0.4, 1.0 / 3) == sr_copy_threshold(2, 0.4 / std::sqrt(2.0), 5, 1.0 / 3));
}

TEST_CASE("few-copy tree bounds") {
    CHECK_THROWS_AS(few_copy_tree_bounds(4, 1, 0.1), domain_error);   // r < 2
    CHECK_THROWS_AS(few_copy_tree_bounds(4, 2, 0.3), domain_error);   // eps >= 1/(r+2)

    const TreeFewCopyBounds b = few_copy_tree_bounds(5, 2, 0.1);
    CHECK(b.upper > b.lower);
    CHECK(b.lower > 0);

    // upper/lower ratio grows linearly in n-1; monotone in n
    double prev_upper = 0, prev_ratio = 0;
    for (const int n : {5, 9, 17, 33}) {
        const TreeFewCopyBounds bb = few_copy_tree_bounds(n, 2, 0.1);
        const double upper = bb.upper.get_d(), lower = bb.lower.get_d();
        CHECK(upper > prev_upper);
        const double ratio = upper / lower;
        if (prev_ratio > 0) CHECK(ratio / prev_ratio == doctest::Approx(2.0).epsilon(0.2));
        prev_ratio = ratio;
        prev_upper = upper;
    }
}

TEST_CASE("json round trips are bit-exact") {
    const Tree t = make_tree(4, {{0, 1}, {0, 2}, {2, 3}}, 2);
    const std::string tj = tree_to_json(t);
    const Tree t2 = tree_from_json(tj);
    CHECK(tree_to_json(t2) == tj);
    CHECK(t2.root == 2);

    const CounterRng rng{56, 0};
    std::uint64_t ctr = 0;
    const TreeState st = random_tree_state({2, 3, 2, 2}, rng, ctr);
    const std::string sj = tree_state_to_json(st);
    const TreeState st2 = tree_state_from_json(sj);
    REQUIRE(st2.amplitudes.size() == st.amplitudes.size());
    for (std::size_t i = 0; i < st.amplitudes.size(); ++i) {
        CHECK(st.amplitudes[i].real() == st2.amplitudes[i].real());  // bitwise
        CHECK(st.amplitudes[i].imag() == st2.amplitudes[i].imag());
    }
    CHECK(tree_state_to_json(st2) == sj);
}
