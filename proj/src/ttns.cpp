#include "qpt/ttns.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <thread>

#include <json.hpp>

#include "qpt/rng.hpp"

namespace qpt {

namespace {

std::vector<std::vector<int>> adjacency(const Tree& tree) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(tree.n));
    for (auto [u, v] : tree.edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

struct Rooted {
    std::vector<int> parent;               // -1 at root
    std::vector<std::vector<int>> children;  // sorted
    std::vector<int> height;               // leaves have height 0
    int depth = 0;                         // max height + 1
    std::vector<int> order;                // BFS order from the root
};

Rooted root_tree(const Tree& tree) {
    const auto adj = adjacency(tree);
    Rooted r;
    r.parent.assign(static_cast<std::size_t>(tree.n), -2);
    r.children.resize(static_cast<std::size_t>(tree.n));
    r.height.assign(static_cast<std::size_t>(tree.n), 0);
    std::queue<int> q;
    q.push(tree.root);
    r.parent[static_cast<std::size_t>(tree.root)] = -1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        r.order.push_back(v);
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (r.parent[static_cast<std::size_t>(w)] != -2) continue;
            r.parent[static_cast<std::size_t>(w)] = v;
            r.children[static_cast<std::size_t>(v)].push_back(w);
            q.push(w);
        }
    }
    for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
        int h = 0;
        for (int c : r.children[static_cast<std::size_t>(*it)])
            h = std::max(h, r.height[static_cast<std::size_t>(c)] + 1);
        r.height[static_cast<std::size_t>(*it)] = h;
    }
    r.depth = r.height[static_cast<std::size_t>(tree.root)] + 1;
    return r;
}

std::vector<long long> site_strides(const std::vector<int>& dims) {
    std::vector<long long> stride(dims.size());
    long long s = 1;
    for (std::size_t i = dims.size(); i-- > 0;) {
        stride[i] = s;
        s *= dims[i];
    }
    return stride;
}

// Row/column index pair of each global index when the amplitude tensor is
// reshaped with the vertex subset `left` as the row system.
struct CutReshape {
    long long dim_left = 1, dim_right = 1;
    std::vector<long long> row_of, col_of;  // per global index
};

CutReshape cut_reshape(const std::vector<int>& dims, const std::vector<bool>& in_left) {
    const int n = static_cast<int>(dims.size());
    const auto stride = site_strides(dims);
    CutReshape cr;
    for (int v = 0; v < n; ++v)
        (in_left[static_cast<std::size_t>(v)] ? cr.dim_left : cr.dim_right) *= dims[static_cast<std::size_t>(v)];
    const long long total = cr.dim_left * cr.dim_right;
    cr.row_of.resize(static_cast<std::size_t>(total));
    cr.col_of.resize(static_cast<std::size_t>(total));
    for (long long g = 0; g < total; ++g) {
        long long row = 0, col = 0;
        for (int v = 0; v < n; ++v) {
            const long long digit = (g / stride[static_cast<std::size_t>(v)]) % dims[static_cast<std::size_t>(v)];
            if (in_left[static_cast<std::size_t>(v)])
                row = row * dims[static_cast<std::size_t>(v)] + digit;
            else
                col = col * dims[static_cast<std::size_t>(v)] + digit;
        }
        cr.row_of[static_cast<std::size_t>(g)] = row;
        cr.col_of[static_cast<std::size_t>(g)] = col;
    }
    return cr;
}

CMatrix gather_matrix(const std::vector<cplx>& amps, const CutReshape& cr) {
    CMatrix m(static_cast<int>(cr.dim_left), static_cast<int>(cr.dim_right));
    for (std::size_t g = 0; g < amps.size(); ++g)
        m(static_cast<int>(cr.row_of[g]), static_cast<int>(cr.col_of[g])) = amps[g];
    return m;
}

void scatter_matrix(const CMatrix& m, const CutReshape& cr, std::vector<cplx>& amps) {
    for (std::size_t g = 0; g < amps.size(); ++g)
        amps[g] = m(static_cast<int>(cr.row_of[g]), static_cast<int>(cr.col_of[g]));
}

// Squared Schmidt coefficients across a cut. Singular values carry absolute
// error near machine epsilon, so rank queries against kSchmidtZeroTol on the
// coefficients stay meaningful; a Gram-eigenvalue route would not.
std::vector<double> cut_spectrum(const CMatrix& m) {
    const SvdResult s = svd(m);
    std::vector<double> p(s.sigma.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = s.sigma[i] * s.sigma[i];
    return p;
}

}  // namespace

Tree make_tree(int n, std::vector<std::pair<int, int>> edges, int root) {
    if (n < 1) throw domain_error("tree requires n >= 1");
    if (root < 0 || root >= n) throw domain_error("tree root out of range");
    if (static_cast<int>(edges.size()) != n - 1) throw domain_error("tree requires exactly n-1 edges");
    Tree t{n, std::move(edges), root};
    for (auto [u, v] : t.edges)
        if (u < 0 || u >= n || v < 0 || v >= n || u == v) throw domain_error("tree edge out of range");
    const Rooted r = root_tree(t);
    if (static_cast<int>(r.order.size()) != n) throw domain_error("tree must be connected and acyclic");
    return t;
}

Tree path_tree(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return make_tree(n, std::move(edges), 0);
}

Tree star_tree(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
    return make_tree(n, std::move(edges), 0);
}

long long TreeState::total_dim() const {
    long long t = 1;
    for (int d : site_dims) t *= d;
    return t;
}

TreeState make_tree_state(std::vector<int> site_dims, std::vector<cplx> amplitudes, bool normalize) {
    if (site_dims.empty()) throw domain_error("tree state requires at least one site");
    long long total = 1;
    for (int d : site_dims) {
        if (d < 1) throw domain_error("site dimensions must be positive");
        total *= d;
        if (total > kTreeStateAmplitudeGuard) throw cap_exceeded("tree state exceeds the dense amplitude guard");
    }
    if (static_cast<long long>(amplitudes.size()) != total)
        throw domain_error("amplitude count does not match the site dimensions");
    double norm_sq = 0;
    for (const cplx& a : amplitudes) norm_sq += std::norm(a);
    const double norm = std::sqrt(norm_sq);
    if (norm == 0) throw domain_error("tree state must be non-zero");
    if (normalize) {
        for (auto& a : amplitudes) a /= norm;
    } else if (std::abs(norm - 1.0) > 1e-12) {
        throw domain_error("tree state must have unit norm (or pass normalize)");
    }
    return TreeState{std::move(site_dims), std::move(amplitudes)};
}

std::pair<std::vector<int>, std::vector<int>> edge_bipartition(const Tree& tree,
                                                               std::pair<int, int> edge) {
    const auto [a, b] = edge;
    bool found = false;
    for (auto [u, v] : tree.edges)
        if ((u == a && v == b) || (u == b && v == a)) found = true;
    if (!found) throw domain_error("edge_bipartition: unknown edge");

    const auto adj = adjacency(tree);
    const int start = std::min(a, b), other = std::max(a, b);
    std::vector<bool> seen(static_cast<std::size_t>(tree.n), false);
    std::queue<int> q;
    q.push(start);
    seen[static_cast<std::size_t>(start)] = true;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if ((v == start && w == other) || (v == other && w == start)) continue;
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                q.push(w);
            }
        }
    }
    std::vector<int> left, right;
    for (int v = 0; v < tree.n; ++v) (seen[static_cast<std::size_t>(v)] ? left : right).push_back(v);
    return {std::move(left), std::move(right)};
}

Spectrum edge_schmidt_spectrum(const TreeState& state, const Tree& tree, std::pair<int, int> edge) {
    if (static_cast<int>(state.site_dims.size()) != tree.n)
        throw domain_error("state and tree disagree on the number of sites");
    const auto [left, right] = edge_bipartition(tree, edge);
    std::vector<bool> in_left(static_cast<std::size_t>(tree.n), false);
    for (int v : left) in_left[static_cast<std::size_t>(v)] = true;
    const CutReshape cr = cut_reshape(state.site_dims, in_left);
    std::vector<double> p = cut_spectrum(gather_matrix(state.amplitudes, cr));
    double sum = 0;
    for (double v : p) sum += v;
    for (auto& v : p) v /= sum;
    return Spectrum::make(std::move(p));
}

TtnsCheck is_ttns(const TreeState& state, const Tree& tree, int r, double tol) {
    if (r < 1) throw domain_error("is_ttns requires r >= 1");
    TtnsCheck check;
    check.ok = true;
    const double tol_sq = tol * tol;  // tol applies to coefficients, spectra are squared
    for (const auto& e : tree.edges) {
        const Spectrum s = edge_schmidt_spectrum(state, tree, e);
        int rank = 0;
        for (double v : s.probs)
            if (v > tol_sq) ++rank;
        check.edge_ranks.push_back(rank);
        if (rank > r) check.ok = false;
    }
    return check;
}

TtnsApproxResult faithful_ttns_approx(const TreeState& state, const Tree& tree, int r) {
    if (r < 1) throw domain_error("faithful_ttns_approx requires r >= 1");
    if (static_cast<int>(state.site_dims.size()) != tree.n)
        throw domain_error("state and tree disagree on the number of sites");
    const Rooted rooted = root_tree(tree);
    const long long total = state.total_dim();

    // Subtree membership masks and top-r subspaces of the ORIGINAL state,
    // all computed before any projection is applied.
    struct EdgeData {
        int child = 0;
        CMatrix basis;  // dim_subtree x kept, orthonormal columns
        double tail = 0;
    };
    std::vector<EdgeData> edge_data(static_cast<std::size_t>(tree.n));  // indexed by child vertex
    std::vector<std::vector<bool>> subtree(static_cast<std::size_t>(tree.n));
    for (auto it = rooted.order.rbegin(); it != rooted.order.rend(); ++it) {
        const int v = *it;
        std::vector<bool> mask(static_cast<std::size_t>(tree.n), false);
        mask[static_cast<std::size_t>(v)] = true;
        for (int c : rooted.children[static_cast<std::size_t>(v)])
            for (int w = 0; w < tree.n; ++w)
                if (subtree[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)]) mask[static_cast<std::size_t>(w)] = true;
        subtree[static_cast<std::size_t>(v)] = std::move(mask);
    }

    for (int u = 0; u < tree.n; ++u) {
        if (rooted.parent[static_cast<std::size_t>(u)] < 0) continue;  // root has no parent edge
        EdgeData ed;
        ed.child = u;
        const CutReshape reshape = cut_reshape(state.site_dims, subtree[static_cast<std::size_t>(u)]);
        const CMatrix m = gather_matrix(state.amplitudes, reshape);
        const bool left_small = m.rows() <= m.cols();
        const CMatrix gram = left_small ? m * m.adjoint() : m.adjoint() * m;
        EigResult eig = hermitian_eig(gram);
        const int keep = std::min<int>(r, static_cast<int>(eig.values.size()));
        double head = 0;
        int kept = 0;
        CMatrix basis(m.rows(), keep);
        for (int j = 0; j < keep; ++j) {
            const double val = std::max(0.0, eig.values[static_cast<std::size_t>(j)]);
            head += val;
            if (val <= 1e-28) continue;  // numerically null direction, carries no weight
            if (left_small) {
                for (int i = 0; i < m.rows(); ++i) basis(i, kept) = eig.vectors(i, j);
            } else {
                // left vector = M w / sigma from the right-side eigenvector
                const double inv_sigma = 1.0 / std::sqrt(val);
                for (int i = 0; i < m.rows(); ++i) {
                    cplx acc = 0;
                    for (int c = 0; c < m.cols(); ++c) acc += m(i, c) * eig.vectors(c, j);
                    basis(i, kept) = acc * inv_sigma;
                }
            }
            ++kept;
        }
        // modified Gram-Schmidt pass keeps the basis orthonormal when sigma
        // values are small or nearly degenerate
        int cols = 0;
        for (int j = 0; j < kept; ++j) {
            for (int pass = 0; pass < 2; ++pass)
                for (int p = 0; p < cols; ++p) {
                    cplx ip = 0;
                    for (int i = 0; i < m.rows(); ++i) ip += std::conj(basis(i, p)) * basis(i, j);
                    for (int i = 0; i < m.rows(); ++i) basis(i, j) -= ip * basis(i, p);
                }
            double nrm = 0;
            for (int i = 0; i < m.rows(); ++i) nrm += std::norm(basis(i, j));
            nrm = std::sqrt(nrm);
            if (nrm < 1e-12) continue;
            for (int i = 0; i < m.rows(); ++i) basis(i, cols) = basis(i, j) / nrm;
            ++cols;
        }
        CMatrix final_basis(m.rows(), cols);
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < m.rows(); ++i) final_basis(i, j) = basis(i, j);
        ed.basis = std::move(final_basis);
        ed.tail = std::max(0.0, 1.0 - head);
        edge_data[static_cast<std::size_t>(u)] = std::move(ed);
    }

    // Gamma_{D-1} ... Gamma_0 applied right to left: heights descend, and
    // within a height edges go in sorted (parent, child) order.
    std::vector<cplx> work = state.amplitudes;
    for (int h = rooted.depth - 1; h >= 0; --h) {
        for (int v = 0; v < tree.n; ++v) {
            if (rooted.height[static_cast<std::size_t>(v)] != h) continue;
            for (int u : rooted.children[static_cast<std::size_t>(v)]) {
                const EdgeData& ed = edge_data[static_cast<std::size_t>(u)];
                const CutReshape reshape = cut_reshape(state.site_dims, subtree[static_cast<std::size_t>(u)]);
                const CMatrix m = gather_matrix(work, reshape);
                const CMatrix projected = ed.basis * (ed.basis.adjoint() * m);
                scatter_matrix(projected, reshape, work);
            }
        }
    }

    TtnsCertificate cert;
    for (const auto& e : tree.edges) {
        const int child = (rooted.parent[static_cast<std::size_t>(e.first)] == e.second) ? e.first : e.second;
        cert.edge_tails.push_back(edge_data[static_cast<std::size_t>(child)].tail);
        cert.tail_sum += edge_data[static_cast<std::size_t>(child)].tail;
    }
    cert.overlap_bound = 1.0 - cert.tail_sum;
    cert.bound_vacuous = cert.tail_sum > 1.0;

    double phi_norm_sq = 0, resid_sq = 0;
    cplx ip = 0;
    for (long long g = 0; g < total; ++g) {
        phi_norm_sq += std::norm(work[static_cast<std::size_t>(g)]);
        resid_sq += std::norm(work[static_cast<std::size_t>(g)] - state.amplitudes[static_cast<std::size_t>(g)]);
        ip += std::conj(work[static_cast<std::size_t>(g)]) * state.amplitudes[static_cast<std::size_t>(g)];
    }
    cert.residual_sq = resid_sq;
    const double phi_norm = std::sqrt(phi_norm_sq);
    if (phi_norm < 1e-12)
        throw verification_error("faithful_ttns_approx: projections annihilated the state");
    cert.measured_overlap = std::abs(ip) / phi_norm;
    for (auto& a : work) a /= phi_norm;

    TtnsApproxResult res;
    res.approx = TreeState{state.site_dims, std::move(work)};
    res.certificate = cert;
    return res;
}

template <class T>
SpectrumT<T> hard_instance_spectrum(const T& epsilon, int n, int d) {
    if (n < 2) throw domain_error("hard_instance_spectrum requires n >= 2");
    if (d < 2) throw domain_error("hard_instance_spectrum requires d >= 2");
    const T zero = scalar_from_int<T>(0);
    if (!(zero < epsilon)) throw domain_error("hard_instance_spectrum requires eps > 0");
    const T six_eps_sq = T(scalar_from_int<T>(6) * epsilon * epsilon);
    bool too_far;
    if constexpr (std::is_same_v<T, double>) {
        too_far = six_eps_sq > 1.0 + 1e-12;
    } else {
        too_far = scalar_from_int<T>(1) < six_eps_sq;
    }
    if (too_far) throw domain_error("hard_instance_spectrum requires eps <= 1/sqrt(6)");
    const int m = n - 1;
    T bump = T(scalar_from_int<T>(4) * epsilon * epsilon / scalar_from_int<T>(m));
    std::vector<T> p;
    p.reserve(static_cast<std::size_t>(d));
    p.push_back(T(scalar_from_int<T>(1) - bump));
    const T small = T(bump / scalar_from_int<T>(d - 1));
    for (int j = 1; j < d; ++j) p.push_back(small);
    return SpectrumT<T>::make(std::move(p));
}

template Spectrum hard_instance_spectrum(const double&, int, int);
template RationalSpectrum hard_instance_spectrum(const Rational&, int, int);

TreeState hard_instance_state(const Tree& tree, double epsilon, int d) {
    if (tree.n < 2) throw domain_error("hard_instance_state requires n >= 2");
    const Spectrum spec = hard_instance_spectrum<double>(epsilon, tree.n, d);
    const int m = tree.n - 1;

    // one d-dimensional slot per incident edge, slots ordered by neighbor index
    const auto adj = adjacency(tree);
    std::vector<int> dims(static_cast<std::size_t>(tree.n));
    long long total = 1;
    for (int v = 0; v < tree.n; ++v) {
        long long dv = 1;
        for (std::size_t k = 0; k < adj[static_cast<std::size_t>(v)].size(); ++k) dv *= d;
        if (dv > kTreeStateAmplitudeGuard) throw cap_exceeded("hard instance exceeds the dense amplitude guard");
        dims[static_cast<std::size_t>(v)] = static_cast<int>(dv);
        total *= dv;
        if (total > kTreeStateAmplitudeGuard) throw cap_exceeded("hard instance exceeds the dense amplitude guard");
    }

    // slot index of each edge at each endpoint
    auto slot_of = [&](int v, int neighbor) {
        const auto& nb = adj[static_cast<std::size_t>(v)];
        return static_cast<int>(std::lower_bound(nb.begin(), nb.end(), neighbor) - nb.begin());
    };

    std::vector<double> coeff(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) coeff[static_cast<std::size_t>(j)] = std::sqrt(spec.probs[static_cast<std::size_t>(j)]);

    const auto stride = site_strides(dims);
    std::vector<cplx> amps(static_cast<std::size_t>(total), cplx{0, 0});
    std::vector<int> letters(static_cast<std::size_t>(m), 0);
    for (;;) {
        // place letter j_e in both endpoint slots of edge e
        std::vector<long long> local(static_cast<std::size_t>(tree.n), 0);
        double a = 1;
        for (int e = 0; e < m; ++e) {
            const auto [u, v] = tree.edges[static_cast<std::size_t>(e)];
            const int j = letters[static_cast<std::size_t>(e)];
            a *= coeff[static_cast<std::size_t>(j)];
            const int du = static_cast<int>(adj[static_cast<std::size_t>(u)].size());
            const int dv = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
            long long pu = 1, pv = 1;
            for (int k = slot_of(u, v) + 1; k < du; ++k) pu *= d;
            for (int k = slot_of(v, u) + 1; k < dv; ++k) pv *= d;
            local[static_cast<std::size_t>(u)] += j * pu;
            local[static_cast<std::size_t>(v)] += j * pv;
        }
        long long g = 0;
        for (int v = 0; v < tree.n; ++v) g += local[static_cast<std::size_t>(v)] * stride[static_cast<std::size_t>(v)];
        amps[static_cast<std::size_t>(g)] = cplx{a, 0};

        int pos = m - 1;
        while (pos >= 0 && letters[static_cast<std::size_t>(pos)] == d - 1) {
            letters[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++letters[static_cast<std::size_t>(pos)];
    }
    return make_tree_state(std::move(dims), std::move(amps), true);
}

HardInstanceFarness farness_hard_instance(double epsilon, int n, int d, int r) {
    if (n < 2) throw domain_error("farness_hard_instance requires n >= 2");
    if (r < 1) throw domain_error("farness_hard_instance requires r >= 1");
    if (d < 2 * r - 1) throw domain_error("farness_hard_instance requires d >= 2r-1");
    if (!(epsilon > 0) || epsilon > 1.0 / std::sqrt(6.0) + 1e-15)
        throw domain_error("farness_hard_instance requires 0 < eps <= 1/sqrt(6)");
    const int m = n - 1;
    const double bump = 4.0 * epsilon * epsilon / m;
    HardInstanceFarness out;
    out.per_edge_overlap_sq = 1.0 - bump + (static_cast<double>(r - 1) / (d - 1)) * bump;
    out.distance = std::sqrt(std::max(0.0, 1.0 - std::pow(out.per_edge_overlap_sq, m)));
    if (out.distance < epsilon - 1e-12)
        throw verification_error("farness_hard_instance: distance fell below eps inside the regime");
    return out;
}

HardInstanceAccept ttns_accept_hard_exact(double epsilon, int n, int d, int r, int n_copies,
                                          unsigned long long partition_cap) {
    const Spectrum spec = hard_instance_spectrum<double>(epsilon, n, d);
    HardInstanceAccept out;
    out.single_edge = accept_prob_rank_test_exact(spec, n_copies, r, partition_cap);
    out.value = std::pow(out.single_edge, n - 1);
    return out;
}

HardInstanceAccept ttns_accept_hard_brute(double epsilon, int n, int d, int r, int n_copies,
                                          unsigned long long word_cap) {
    const Spectrum spec = hard_instance_spectrum<double>(epsilon, n, d);
    HardInstanceAccept out;
    out.single_edge = accept_prob_rank_test_brute(spec, n_copies, r, word_cap);
    out.value = std::pow(out.single_edge, n - 1);
    return out;
}

HardInstanceMc ttns_accept_hard_mc(double epsilon, int n, int d, int r, int n_copies,
                                   long long samples, std::uint64_t seed, int threads) {
    if (samples < 1) throw domain_error("ttns_accept_hard_mc requires samples >= 1");
    const Spectrum spec = hard_instance_spectrum<double>(epsilon, n, d);
    const int m = n - 1;
    std::vector<double> cdf(static_cast<std::size_t>(d));
    double acc = 0;
    for (int i = 0; i < d; ++i) {
        acc += spec.probs[static_cast<std::size_t>(i)];
        cdf[static_cast<std::size_t>(i)] = acc;
    }
    cdf.back() = 1.0;

    threads = std::max(1, threads);
    struct Hits {
        long long all = 0, first = 0;
    };
    auto run_range = [&](long long lo, long long hi) {
        Hits h;
        std::vector<int> tails;
        for (long long s = lo; s < hi; ++s) {
            const CounterRng rng{seed, static_cast<std::uint64_t>(s)};
            bool all_ok = true;
            for (int e = 0; e < m; ++e) {
                tails.clear();
                for (int j = 0; j < n_copies; ++j) {
                    const double u = rng.uniform(static_cast<std::uint64_t>(e) * n_copies + j);
                    const int letter =
                        1 + static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u,
                                                              [](double c, double v) { return c <= v; }) -
                                             cdf.begin());
                    const int y = -letter;
                    auto it = std::lower_bound(tails.begin(), tails.end(), y);
                    if (it == tails.end())
                        tails.push_back(y);
                    else
                        *it = y;
                }
                const bool ok = static_cast<int>(tails.size()) <= r;
                if (e == 0 && ok) ++h.first;
                if (!ok) {
                    all_ok = false;
                    break;
                }
            }
            if (all_ok) ++h.all;
        }
        return h;
    };

    Hits hits;
    if (threads == 1) {
        hits = run_range(0, samples);
    } else {
        std::vector<Hits> partial(static_cast<std::size_t>(threads));
        std::vector<std::thread> pool;
        const long long chunk = (samples + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const long long lo = std::min<long long>(samples, t * chunk);
            const long long hi = std::min<long long>(samples, lo + chunk);
            pool.emplace_back([&, t, lo, hi] { partial[static_cast<std::size_t>(t)] = run_range(lo, hi); });
        }
        for (auto& th : pool) th.join();
        for (const Hits& p : partial) {
            hits.all += p.all;
            hits.first += p.first;
        }
    }

    auto finish = [&](long long k) {
        McEstimate est;
        est.samples = samples;
        est.seed = seed;
        est.value = static_cast<double>(k) / static_cast<double>(samples);
        est.stderr_ = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(samples));
        return est;
    };
    return HardInstanceMc{finish(hits.all), finish(hits.first)};
}

LbThreshold lb_copy_threshold(int n, int r, double epsilon, double log_base) {
    if (n < 2) throw domain_error("lb_copy_threshold requires n >= 2");
    if (r < 1) throw domain_error("lb_copy_threshold requires r >= 1");
    if (!(epsilon > 0)) throw domain_error("lb_copy_threshold requires eps > 0");
    LbThreshold out;
    const double natural = std::log(4.0 * (n - 1));
    out.alpha_n = (log_base > 0) ? natural / std::log(log_base) : natural;
    out.value = static_cast<double>(n - 1) * r * r / (400.0 * out.alpha_n * epsilon * epsilon);
    out.hypotheses_ok =
        (r >= std::max(50.0, 1.0 + out.alpha_n)) && epsilon <= 1.0 / std::sqrt(6.0) + 1e-15;
    return out;
}

long long sr_copy_threshold(int r, double delta, int d, double target,
                            unsigned long long partition_cap) {
    if (r < 1) throw domain_error("sr_copy_threshold requires r >= 1");
    if (d <= r) throw domain_error("sr_copy_threshold requires d > r");
    if (!(delta > 0) || delta > 1) throw domain_error("sr_copy_threshold requires 0 < delta <= 1");
    if (!(target > 0)) throw domain_error("sr_copy_threshold requires target > 0");
    if (target >= 1) return 0;

    std::vector<double> p(static_cast<std::size_t>(d), delta * delta / (d - 1));
    p[0] = 1.0 - delta * delta;
    const Spectrum witness = Spectrum::make(std::move(p));

    auto accept = [&](long long n_copies) {
        return accept_prob_rank_test_exact(witness, static_cast<int>(n_copies), r, partition_cap);
    };
    long long hi = r + 1;
    while (accept(hi) >= target) {
        hi *= 2;
        if (hi > (1LL << 30)) throw cap_exceeded("sr_copy_threshold: threshold exceeds 2^30 copies");
    }
    long long lo = std::max<long long>(1, hi / 2);  // accept(lo) >= target or lo == 1
    while (lo + 1 < hi) {
        const long long mid = lo + (hi - lo) / 2;
        if (accept(mid) < target)
            hi = mid;
        else
            lo = mid;
    }
    if (accept(lo) < target) return lo;
    return hi;
}

long long ttns_copy_upper(int n, int r, double epsilon, double soundness_target) {
    if (n < 2) throw domain_error("ttns_copy_upper requires n >= 2");
    if (!(epsilon > 0) || epsilon > 1) throw domain_error("ttns_copy_upper requires 0 < eps <= 1");
    const double delta = epsilon / std::sqrt(2.0 * (n - 1));
    return sr_copy_threshold(r, delta, 2 * r + 1, soundness_target);
}

TreeFewCopyBounds few_copy_tree_bounds(int n, int r, double epsilon) {
    if (n < 2) throw domain_error("few_copy_tree_bounds requires n >= 2");
    if (r < 2) throw domain_error("few_copy_tree_bounds requires r >= 2");
    if (!(epsilon > 0) || epsilon >= 1.0 / (r + 2))
        throw domain_error("few_copy_tree_bounds requires 0 < eps < 1/(r+2)");
    const int m = n - 1;
    const double ln3 = std::log(3.0);
    const double fact = to_double(factorial(r + 1));

    TreeFewCopyBounds out;
    // upper: per-round soundness at the worst edge, eps_edge^2 = eps^2/(2m)
    const double x = epsilon * epsilon / (2.0 * m);
    const double per_round_reject = std::pow(x, r) * (r + 1 - x * r) / fact;
    out.per_round_beta = 1.0 - per_round_reject;
    const double rounds_up = std::ceil(ln3 / -std::log1p(-per_round_reject));
    const double upper = (r + 1) * rounds_up;

    // lower: (1 - (4 eps^2/m)^r / r!)^{N m/(r+1)} <= 1/3 forces N large
    const double y = std::pow(4.0 * epsilon * epsilon / m, r) / to_double(factorial(r));
    const double lower = std::ceil((r + 1) * ln3 / (m * -std::log1p(-y)));

    out.upper = BigInt(upper);
    out.lower = BigInt(lower);
    const double scale = fact / std::pow(epsilon, 2 * r);
    out.c_upper = upper / (std::pow(static_cast<double>(m), r) * scale);
    out.c_lower = lower / (std::pow(static_cast<double>(m), r - 1) * scale);
    return out;
}

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string tree_to_json(const Tree& tree) {
    std::string s = "{\"edges\":[";
    for (std::size_t i = 0; i < tree.edges.size(); ++i) {
        if (i) s += ",";
        s += "[" + std::to_string(tree.edges[i].first) + "," + std::to_string(tree.edges[i].second) + "]";
    }
    s += "],\"n\":" + std::to_string(tree.n) + ",\"root\":" + std::to_string(tree.root) + "}";
    return s;
}

Tree tree_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return make_tree(j.at("n").get<int>(), std::move(edges), j.at("root").get<int>());
}

std::string tree_state_to_json(const TreeState& state) {
    std::string s = "{\"amplitudes_imag\":[";
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        if (i) s += ",";
        s += fmt17(state.amplitudes[i].imag());
    }
    s += "],\"amplitudes_real\":[";
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        if (i) s += ",";
        s += fmt17(state.amplitudes[i].real());
    }
    s += "],\"site_dims\":[";
    for (std::size_t i = 0; i < state.site_dims.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(state.site_dims[i]);
    }
    s += "]}";
    return s;
}

TreeState tree_state_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    std::vector<int> dims = j.at("site_dims").get<std::vector<int>>();
    const auto re = j.at("amplitudes_real").get<std::vector<double>>();
    const auto im = j.at("amplitudes_imag").get<std::vector<double>>();
    if (re.size() != im.size()) throw domain_error("amplitude arrays must have equal length");
    std::vector<cplx> amps(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) amps[i] = cplx{re[i], im[i]};
    return make_tree_state(std::move(dims), std::move(amps));
}

}  // namespace qpt
