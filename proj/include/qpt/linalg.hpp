#pragma once

#include <complex>
#include <vector>

#include "qpt/error.hpp"

namespace qpt {

using cplx = std::complex<double>;

// Row-major dense complex matrix. Micro-scale only; no blocking, no views.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

    static CMatrix identity(int n);

    CMatrix adjoint() const;
    CMatrix operator*(const CMatrix& o) const;
    CMatrix operator+(const CMatrix& o) const;
    CMatrix operator-(const CMatrix& o) const;
    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator*=(cplx s);

    double frobenius_norm() const;
    cplx trace() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

struct SvdResult {
    std::vector<double> sigma;  // non-increasing, length min(m,n)
    CMatrix u;                  // m x min(m,n)
    CMatrix vt;                 // min(m,n) x n
};

// Full thin SVD (LAPACK zgesvd).
SvdResult svd(const CMatrix& a);

struct EigResult {
    std::vector<double> values;  // descending
    CMatrix vectors;             // columns are eigenvectors
};

// Hermitian eigendecomposition (LAPACK zheevd), eigenvalues descending.
EigResult hermitian_eig(const CMatrix& a);

}  // namespace qpt
