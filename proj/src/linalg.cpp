#include "qpt/linalg.hpp"

#include <algorithm>
#include <cmath>

#define LAPACK_COMPLEX_CPP
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace qpt {

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    if (cols_ != o.rows_) throw domain_error("matrix product shape mismatch");
    CMatrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const cplx v = (*this)(i, k);
            if (v == cplx{}) continue;
            const cplx* orow = &o(k, 0);
            cplx* mrow = &m(i, 0);
            for (int j = 0; j < o.cols_; ++j) mrow[j] += v * orow[j];
        }
    return m;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
    CMatrix m = *this;
    m += o;
    return m;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix sum shape mismatch");
    CMatrix m = *this;
    for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix sum shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

double CMatrix::frobenius_norm() const {
    double s = 0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

cplx CMatrix::trace() const {
    cplx t = 0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

SvdResult svd(const CMatrix& a) {
    const int m = a.rows(), n = a.cols(), k = std::min(m, n);
    CMatrix work = a;
    SvdResult r;
    r.sigma.resize(static_cast<std::size_t>(k));
    r.u = CMatrix(m, k);
    r.vt = CMatrix(k, n);
    std::vector<double> superb(static_cast<std::size_t>(std::max(1, k - 1)));
    const int info = LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'S', 'S', m, n, work.data(), n, r.sigma.data(),
                                    r.u.data(), k, r.vt.data(), n, superb.data());
    if (info != 0) throw verification_error("zgesvd failed to converge");
    return r;
}

EigResult hermitian_eig(const CMatrix& a) {
    if (a.rows() != a.cols()) throw domain_error("hermitian_eig requires a square matrix");
    const int n = a.rows();
    CMatrix work = a;
    std::vector<double> w(static_cast<std::size_t>(n));
    const int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'U', n, work.data(), n, w.data());
    if (info != 0) throw verification_error("zheevd failed to converge");
    // LAPACK returns ascending order; flip to descending
    EigResult r;
    r.values.resize(static_cast<std::size_t>(n));
    r.vectors = CMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        r.values[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(n - 1 - j)];
        for (int i = 0; i < n; ++i) r.vectors(i, j) = work(i, n - 1 - j);
    }
    return r;
}

}  // namespace qpt
