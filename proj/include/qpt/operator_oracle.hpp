#pragma once

#include <cstdint>

#include "qpt/linalg.hpp"
#include "qpt/partitions.hpp"

namespace qpt {

// Micro-scale operator checks live behind this guard.
inline constexpr long long kOperatorDimGuard = 512;

struct DenseOperator {
    CMatrix matrix;  // d^n_copies square
    int d = 0;
    int n_copies = 0;
};

// W_pi |x_1 ... x_N> = |x_{pi^{-1}(1)} ... x_{pi^{-1}(N)}>; pi is 0-based,
// pi[i] = image of position i.
DenseOperator permutation_operator(const std::vector<int>& pi, int d);

// (1/N!) sum_pi sign(pi) W_pi and (1/N!) sum_pi W_pi.
DenseOperator antisymmetric_projector(int d, int n_copies);
DenseOperator symmetric_projector(int d, int n_copies);

// Symmetric-group character chi_lambda(cycle_type) by Murnaghan-Nakayama
// border-strip recursion, exact.
long long mn_character(const Partition& lambda, const Partition& cycle_type);

// Orthogonal projector onto the lambda-isotypic component of (C^d)^{x N}:
// (dim(lambda)/N!) sum_pi chi_lambda(type(pi)) W_pi.
DenseOperator young_projector(const Partition& lambda, int d, int n_copies);

// Tr(op rho^{x N}) for diagonal rho with the given spectrum.
double trace_with_diagonal_power(const DenseOperator& op, const Spectrum& rho_spectrum);

struct SrIdentityResiduals {
    double commuted = 0;      // ||(Pi_{<=r} x 1)Pi_sym - (1 x Pi_{<=r})Pi_sym||_F
    double span_sampled = 0;  // ||(Pi_{<=r} x 1)Pi_sym - Pi_span||_F, sampling-limited
    int span_dim = 0;
};

// Validates the local-projector identity of the PC-optimal Schmidt-rank test
// at micro scale; Pi_span is orthonormalized from sampled SR(r) tensor powers.
SrIdentityResiduals verify_sr_projector_identity(int d_a, int d_b, int n_copies, int r,
                                                 std::uint64_t seed = 7);

}  // namespace qpt
