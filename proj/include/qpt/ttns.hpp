#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpt/linalg.hpp"
#include "qpt/schmidt.hpp"
#include "qpt/wss.hpp"

namespace qpt {

// Dense amplitude guard: truncation and certificate checks stay at desk scale.
inline constexpr long long kTreeStateAmplitudeGuard = 1LL << 20;

struct Tree {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // unordered pairs, vertices 0..n-1
    int root = 0;
};

// Validates: n >= 1, exactly n-1 edges, connected, acyclic, root in range.
Tree make_tree(int n, std::vector<std::pair<int, int>> edges, int root);

Tree path_tree(int n);
Tree star_tree(int n);  // vertex 0 is the center

struct TreeState {
    std::vector<int> site_dims;
    std::vector<cplx> amplitudes;  // row-major over sites by vertex index

    long long total_dim() const;
};

TreeState make_tree_state(std::vector<int> site_dims, std::vector<cplx> amplitudes,
                          bool normalize = false);

// Connected components after deleting the edge; the one holding the
// smaller-indexed endpoint comes first. Vertex lists are sorted.
std::pair<std::vector<int>, std::vector<int>> edge_bipartition(const Tree& tree,
                                                               std::pair<int, int> edge);

// Squared Schmidt coefficients across the cut, sorted non-increasing,
// length min(dim_L, dim_R).
Spectrum edge_schmidt_spectrum(const TreeState& state, const Tree& tree,
                               std::pair<int, int> edge);

struct TtnsCheck {
    bool ok = false;
    std::vector<int> edge_ranks;  // aligned with tree.edges; tol applies to coefficients
};

TtnsCheck is_ttns(const TreeState& state, const Tree& tree, int r, double tol = kSchmidtZeroTol);

struct TtnsCertificate {
    std::vector<double> edge_tails;  // aligned with tree.edges, from the original state
    double tail_sum = 0;
    double overlap_bound = 0;     // 1 - tail_sum (vacuous when tail_sum > 1)
    bool bound_vacuous = false;
    double measured_overlap = 0;  // |<approx|psi>|
    double residual_sq = 0;       // || psi - Gamma psi ||^2, before normalization
};

struct TtnsApproxResult {
    TreeState approx;
    TtnsCertificate certificate;
};

// Sequential-projection TTNS approximation: every per-edge top-r subspace is
// taken from the original state, then the projections are applied level by
// level from the root down to the leaves.
TtnsApproxResult faithful_ttns_approx(const TreeState& state, const Tree& tree, int r);

// (1 - 4 eps^2/m, 4 eps^2/(m(d-1)) x (d-1)); exact in rational mode.
template <class T>
SpectrumT<T> hard_instance_spectrum(const T& epsilon, int n, int d);

// Edge-wise tensor product of the near-rank-r bipartite state, with each
// vertex holding one d-dimensional slot per incident edge.
TreeState hard_instance_state(const Tree& tree, double epsilon, int d);

struct HardInstanceFarness {
    double distance = 0;             // sqrt(1 - F^m), a trace-distance lower bound
    double per_edge_overlap_sq = 0;  // F = 1 - 4eps^2/m + ((r-1)/(d-1)) 4eps^2/m
};

HardInstanceFarness farness_hard_instance(double epsilon, int n, int d, int r);

struct HardInstanceAccept {
    double single_edge = 0;  // per-edge acceptance
    double value = 0;        // product over the n-1 edges
};

HardInstanceAccept ttns_accept_hard_exact(double epsilon, int n, int d, int r, int n_copies,
                                          unsigned long long partition_cap = kDefaultPartitionCap);
HardInstanceAccept ttns_accept_hard_brute(double epsilon, int n, int d, int r, int n_copies,
                                          unsigned long long word_cap = kDefaultWordCap);

struct HardInstanceMc {
    McEstimate product;      // indicator that all n-1 edges accept
    McEstimate single_edge;  // first edge only, same word stream
};

HardInstanceMc ttns_accept_hard_mc(double epsilon, int n, int d, int r, int n_copies,
                                   long long samples, std::uint64_t seed, int threads = 1);

struct LbThreshold {
    double value = 0;    // (n-1) r^2 / (400 alpha(n) eps^2)
    double alpha_n = 0;  // log(4(n-1)), natural log by default
    bool hypotheses_ok = false;  // r >= max{50, 1+alpha(n)} and eps <= 1/sqrt(6)
};

LbThreshold lb_copy_threshold(int n, int r, double epsilon, double log_base = 0 /* natural */);

// Smallest N at which the rank test on the witness spectrum
// (1-delta^2, delta^2/(d-1) x (d-1)) accepts with probability < target.
long long sr_copy_threshold(int r, double delta, int d, double target,
                            unsigned long long partition_cap = kDefaultPartitionCap);

// Explicit-constant tree-test copy count: single-edge threshold at distance
// eps/sqrt(2(n-1)), witness dimension 2r+1.
long long ttns_copy_upper(int n, int r, double epsilon, double soundness_target);

struct TreeFewCopyBounds {
    BigInt upper;          // total copies, (r+1)-copy rounds, soundness 1/3
    BigInt lower;
    double c_upper = 0;    // upper / ((n-1)^r (r+1)!/eps^{2r})
    double c_lower = 0;    // lower / ((n-1)^{r-1} (r+1)!/eps^{2r})
    double per_round_beta = 0;
};

TreeFewCopyBounds few_copy_tree_bounds(int n, int r, double epsilon);

// JSON file formats; writers emit 17 significant digits so doubles
// round-trip bit-exactly.
std::string tree_to_json(const Tree& tree);
Tree tree_from_json(const std::string& text);
std::string tree_state_to_json(const TreeState& state);
TreeState tree_state_from_json(const std::string& text);

}  // namespace qpt
