#ifndef GTSTOKES_LINALG_HPP
#define GTSTOKES_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gtstokes/types.hpp"

namespace gtstokes {

struct EigenDesc {
    RealVector values;      // descending
    ComplexMatrix vectors;  // unitary, columns match values
};

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order, H = V diag(values) V^H.
inline EigenDesc hermitian_eigen_desc(const ComplexMatrix& h) {
    require_hermitian(h);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(((h + h.adjoint()) / 2.0).eval());
    if (es.info() != Eigen::Success)
        throw FactorizationError(0, "hermitian eigensolver failed to converge");
    const Eigen::Index n = h.rows();
    EigenDesc out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        out.values[j] = es.eigenvalues()[n - 1 - j];
        out.vectors.col(j) = es.eigenvectors().col(n - 1 - j);
    }
    return out;
}

/// Determinant of the submatrix A[rows, cols] by pivoted elimination.
/// Index sets are 0-based and must have equal size >= 1.
inline Complex minor_det(const ComplexMatrix& a, const std::vector<int>& rows,
                         const std::vector<int>& cols) {
    if (rows.size() != cols.size() || rows.empty())
        throw StructuralError("minor_det: row/column index sets must match and be non-empty");
    const int k = static_cast<int>(rows.size());
    ComplexMatrix sub(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (rows[i] < 0 || rows[i] >= a.rows() || cols[j] < 0 || cols[j] >= a.cols())
                throw StructuralError("minor_det: index out of range");
            sub(i, j) = a(rows[i], cols[j]);
        }
    if (k == 1) return sub(0, 0);
    return Eigen::PartialPivLU<ComplexMatrix>(sub).determinant();
}

/// Upper Cholesky factor of a positive definite Hermitian M: M = R^H R with
/// diag(R) real positive. Reports the 1-based failing pivot on indefinite input.
inline ComplexMatrix cholesky_upper(const ComplexMatrix& m,
                                    double tol_pd = Tolerances::positive_def) {
    require_hermitian(m, 1e-10);
    const Eigen::Index n = m.rows();
    ComplexMatrix r = ComplexMatrix::Zero(n, n);
    const double floor = tol_pd * (1.0 + m.norm());
    for (Eigen::Index j = 0; j < n; ++j) {
        Complex s = m(j, j);
        for (Eigen::Index l = 0; l < j; ++l) s -= std::conj(r(l, j)) * r(l, j);
        const double d = s.real();
        if (!(d > floor))
            throw FactorizationError(static_cast<int>(j) + 1,
                                     "cholesky_upper: non-positive pivot " +
                                         std::to_string(j + 1));
        r(j, j) = std::sqrt(d);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            Complex t = m(j, i);
            for (Eigen::Index l = 0; l < j; ++l) t -= std::conj(r(l, j)) * r(l, i);
            r(j, i) = t / r(j, j);
        }
    }
    return r;
}

inline ComplexMatrix matrix_inverse(const ComplexMatrix& a) {
    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    const double rcond_proxy = std::abs(lu.determinant());
    if (rcond_proxy == 0.0)
        throw FactorizationError(0, "matrix_inverse: singular input");
    return lu.inverse();
}

/// exp of a Hermitian matrix through its eigendecomposition.
inline ComplexMatrix hermitian_exp(const ComplexMatrix& h) {
    EigenDesc ed = hermitian_eigen_desc(h);
    return ed.vectors * ed.values.array().exp().matrix().asDiagonal() * ed.vectors.adjoint();
}

/// x^{H/(2 pi i)} for real x > 0 and Hermitian H; unitary since the exponent
/// is skew-Hermitian.
inline ComplexMatrix real_power_unitary(double x, const ComplexMatrix& h) {
    if (!(x > 0.0)) throw DomainError("real_power_unitary: base must be positive");
    EigenDesc ed = hermitian_eigen_desc(h);
    const double lx = std::log(x);
    ComplexVector ph(ed.values.size());
    for (Eigen::Index j = 0; j < ed.values.size(); ++j)
        ph[j] = std::exp(Complex(0.0, -ed.values[j] * lx / kTwoPi));
    return ed.vectors * ph.asDiagonal() * ed.vectors.adjoint();
}

}  // namespace gtstokes

#endif  // GTSTOKES_LINALG_HPP
