#include "qpt/schmidt.hpp"

#include <cmath>

namespace qpt {

BipartiteState make_bipartite(CMatrix amplitudes, bool normalize) {
    const double norm = amplitudes.frobenius_norm();
    if (norm == 0) throw domain_error("bipartite state must be non-zero");
    if (normalize) {
        amplitudes *= cplx{1.0 / norm, 0};
    } else if (std::abs(norm - 1.0) > 1e-12) {
        throw domain_error("bipartite state must have unit norm (or pass normalize)");
    }
    return BipartiteState{std::move(amplitudes)};
}

SchmidtData schmidt_decompose(const BipartiteState& state) {
    if (std::abs(state.amplitudes.frobenius_norm() - 1.0) > 1e-10)
        throw domain_error("schmidt_decompose requires a unit-norm state");
    SvdResult s = svd(state.amplitudes);
    SchmidtData data;
    data.coefficients = std::move(s.sigma);
    data.left_vectors = std::move(s.u);
    // transpose (no conjugation) so that amplitudes = sum_j c_j left_j right_j^T
    data.right_vectors = CMatrix(s.vt.cols(), s.vt.rows());
    for (int j = 0; j < s.vt.rows(); ++j)
        for (int b = 0; b < s.vt.cols(); ++b) data.right_vectors(b, j) = s.vt(j, b);
    return data;
}

int schmidt_rank(const SchmidtData& data, double tol) {
    int rank = 0;
    for (double c : data.coefficients)
        if (c > tol) ++rank;
    return rank;
}

Spectrum schmidt_spectrum(const BipartiteState& state) {
    SchmidtData data = schmidt_decompose(state);
    std::vector<double> p(static_cast<std::size_t>(std::max(state.d_a(), state.d_b())), 0.0);
    double sum = 0;
    for (std::size_t j = 0; j < data.coefficients.size(); ++j) {
        p[j] = data.coefficients[j] * data.coefficients[j];
        sum += p[j];
    }
    for (auto& v : p) v /= sum;  // absorb O(1e-12) SVD roundoff
    return Spectrum::make(std::move(p));
}

double delta_r(const BipartiteState& state, int r) {
    if (r < 1) throw domain_error("delta_r requires r >= 1");
    SchmidtData data = schmidt_decompose(state);
    double tail = 0;
    for (std::size_t j = static_cast<std::size_t>(r); j < data.coefficients.size(); ++j)
        tail += data.coefficients[j] * data.coefficients[j];
    return tail;
}

double distance_to_sr(const BipartiteState& state, int r) {
    return std::sqrt(std::max(0.0, delta_r(state, r)));
}

BipartiteState best_rank_r_approx(const BipartiteState& state, int r) {
    if (r < 1) throw domain_error("best_rank_r_approx requires r >= 1");
    SchmidtData data = schmidt_decompose(state);
    const int keep = std::min<int>(r, static_cast<int>(data.coefficients.size()));
    double head = 0;
    for (int j = 0; j < keep; ++j) head += data.coefficients[static_cast<std::size_t>(j)] * data.coefficients[static_cast<std::size_t>(j)];
    CMatrix amps(state.d_a(), state.d_b());
    const double scale = 1.0 / std::sqrt(head);
    for (int j = 0; j < keep; ++j)
        for (int a = 0; a < state.d_a(); ++a) {
            const cplx u = data.left_vectors(a, j) * data.coefficients[static_cast<std::size_t>(j)] * scale;
            for (int b = 0; b < state.d_b(); ++b) amps(a, b) += u * data.right_vectors(b, j);
        }
    return make_bipartite(std::move(amps), true);
}

double overlap(const BipartiteState& a, const BipartiteState& b) {
    if (a.d_a() != b.d_a() || a.d_b() != b.d_b()) throw domain_error("overlap shape mismatch");
    cplx ip = 0;
    for (int i = 0; i < a.d_a(); ++i)
        for (int j = 0; j < a.d_b(); ++j) ip += std::conj(a.amplitudes(i, j)) * b.amplitudes(i, j);
    return std::abs(ip);
}

}  // namespace qpt
