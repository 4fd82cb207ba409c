#pragma once

#include "qpt/linalg.hpp"
#include "qpt/partitions.hpp"

namespace qpt {

// Schmidt coefficients below this threshold count as zero for rank queries.
inline constexpr double kSchmidtZeroTol = 1e-10;

// Pure state on A (x) B as its d_A x d_B amplitude matrix, unit Frobenius norm.
struct BipartiteState {
    CMatrix amplitudes;

    int d_a() const { return amplitudes.rows(); }
    int d_b() const { return amplitudes.cols(); }
};

// Rejects non-unit norm beyond 1e-12 unless normalize is set.
BipartiteState make_bipartite(CMatrix amplitudes, bool normalize = false);

struct SchmidtData {
    std::vector<double> coefficients;  // non-increasing, length min(dA,dB)
    CMatrix left_vectors;              // dA x k, orthonormal columns
    CMatrix right_vectors;             // dB x k, orthonormal columns
};

SchmidtData schmidt_decompose(const BipartiteState& state);

int schmidt_rank(const SchmidtData& data, double tol = kSchmidtZeroTol);

// Squared-coefficient spectrum of the reduced state, padded to d entries.
Spectrum schmidt_spectrum(const BipartiteState& state);

// Tail weight Delta_r = sum_{j > r} lambda_j^2.
double delta_r(const BipartiteState& state, int r);

// Trace distance to the Schmidt-rank <= r set: sqrt(Delta_r).
double distance_to_sr(const BipartiteState& state, int r);

// Renormalized top-r truncation; optimal by Eckart-Young-Mirsky.
BipartiteState best_rank_r_approx(const BipartiteState& state, int r);

// |<a|b>| for two states on the same spaces.
double overlap(const BipartiteState& a, const BipartiteState& b);

}  // namespace qpt
