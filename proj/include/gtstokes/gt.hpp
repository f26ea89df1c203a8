#ifndef GTSTOKES_GT_HPP
#define GTSTOKES_GT_HPP

#include <cmath>
#include <string>
#include <vector>

#include "gtstokes/linalg.hpp"
#include "gtstokes/special.hpp"
#include "gtstokes/types.hpp"

namespace gtstokes {

/// Triangular array of ordered eigenvalues of the leading principal
/// submatrices: row(k) = (lambda^(k)_1 >= ... >= lambda^(k)_k), k = 1..n.
class SpectrumTable {
public:
    SpectrumTable() = default;
    explicit SpectrumTable(std::vector<RealVector> rows) : rows_(std::move(rows)) {}

    int levels() const { return static_cast<int>(rows_.size()); }
    /// Row for level k (1-based): length-k vector, descending.
    const RealVector& row(int k) const { return rows_.at(k - 1); }
    RealVector& row(int k) { return rows_.at(k - 1); }

    /// Diagonal entry A_kk reconstructed from traces: tr A^(k) - tr A^(k-1).
    double diag_entry(int k) const {
        double s = row(k).sum();
        if (k > 1) s -= row(k - 1).sum();
        return s;
    }

private:
    std::vector<RealVector> rows_;
};

/// Gelfand-Tsetlin map: spectra of all leading principal submatrices.
inline SpectrumTable gt_map(const ComplexMatrix& a) {
    require_hermitian(a);
    const int n = static_cast<int>(a.rows());
    std::vector<RealVector> rows;
    rows.reserve(n);
    for (int k = 1; k <= n; ++k)
        rows.push_back(hermitian_eigen_desc(a.topLeftCorner(k, k)).values);
    return SpectrumTable(std::move(rows));
}

/// Minimal interlacing slack min(lambda^(k)_i - lambda^(k+1)_{i+1},
/// lambda^(k+1)_i - lambda^(k)_i) over levels up to `max_level`.
inline double cone_gap(const SpectrumTable& t, int max_level = 0) {
    const int n = t.levels();
    const int top = (max_level > 0 && max_level < n) ? max_level : n;
    double g = std::numeric_limits<double>::infinity();
    for (int k = 1; k < top; ++k) {
        const RealVector& lo = t.row(k);
        const RealVector& hi = t.row(k + 1);
        for (int i = 0; i < k; ++i) {
            g = std::min(g, hi[i] - lo[i]);
            g = std::min(g, lo[i] - hi[i + 1]);
        }
    }
    return g;
}

inline bool in_open_cone(const SpectrumTable& t, double gap_tol) {
    return t.levels() < 2 || cone_gap(t) > gap_tol;
}

inline double default_gap_tol(const ComplexMatrix& a) {
    return Tolerances::cone_gap * (1.0 + a.norm());
}

/// Throws DegenerateSpectrumError naming the first level whose interlacing
/// slack falls below gap_tol. Formulas downstream divide by these gaps.
inline void require_open_cone(const SpectrumTable& t, double gap_tol, int max_level = 0) {
    const int n = t.levels();
    const int top = (max_level > 0 && max_level < n) ? max_level : n;
    for (int k = 1; k < top; ++k) {
        const RealVector& lo = t.row(k);
        const RealVector& hi = t.row(k + 1);
        for (int i = 0; i < k; ++i)
            if (!(hi[i] - lo[i] > gap_tol) || !(lo[i] - hi[i + 1] > gap_tol))
                throw DegenerateSpectrumError(
                    k + 1, "interlacing not strict at level " + std::to_string(k + 1));
    }
}

/// Normalizer N_j^(k1), closed form in the action variables:
/// sqrt( prod_{v != j}(l^(k1)_j - l^(k1)_v) / prod_v (l^(k1)_j - l^(k1-1)_v) ).
/// j is 0-based; requires strict interlacing between levels k1-1 and k1.
inline double normalizer_N(const SpectrumTable& t, int k1, int j) {
    const RealVector& hi = t.row(k1);
    const RealVector& lo = t.row(k1 - 1);
    double num = 1.0, den = 1.0;
    for (int v = 0; v < k1; ++v)
        if (v != j) num *= hi[j] - hi[v];
    for (int v = 0; v < k1 - 1; ++v) den *= hi[j] - lo[v];
    const double q = num / den;
    if (!(q > 0.0) || !std::isfinite(q))
        throw DegenerateSpectrumError(k1, "normalizer_N: vanishing spectral gap at level " +
                                              std::to_string(k1));
    return std::sqrt(q);
}

/// |a^(k)_i|^2 from the characteristic-polynomial identity; a function of the
/// action variables alone. i is 0-based, 1 <= k <= levels-1.
inline double a_modulus_sq(const SpectrumTable& t, int k, int i) {
    const RealVector& lo = t.row(k);
    const RealVector& hi = t.row(k + 1);
    double num = 1.0, den = 1.0;
    for (int v = 0; v < k + 1; ++v) num *= lo[i] - hi[v];
    for (int v = 0; v < k; ++v)
        if (v != i) den *= lo[i] - lo[v];
    const double q = -num / den;
    if (!std::isfinite(q) || q < 0.0)
        throw DegenerateSpectrumError(k + 1, "a_modulus_sq: interlacing violated at level " +
                                                 std::to_string(k + 1));
    return q;
}

/// Direct evaluation of N_j^(k1) from its definition
/// sqrt(1 + sum_l |a_l|^2/(l^(k1-1)_l - l^(k1)_j)^2); test oracle for the
/// closed form, itself action-only through a_modulus_sq.
inline double normalizer_N_sum(const SpectrumTable& t, int k1, int j) {
    const RealVector& hi = t.row(k1);
    const RealVector& lo = t.row(k1 - 1);
    double s = 1.0;
    for (int l = 0; l < k1 - 1; ++l) {
        const double d = lo[l] - hi[j];
        s += a_modulus_sq(t, k1 - 1, l) / (d * d);
    }
    return std::sqrt(s);
}

/// Unique unitary P_k with positive real k-th row such that
/// P_k^{-1} A P_k has diag(lambda^(k)) as its leading k x k block.
/// Embedded in U(n) as identity outside the block.
inline ComplexMatrix diagonalizer_P(const ComplexMatrix& a, int k, double gap_tol = -1.0) {
    require_hermitian(a);
    const int n = static_cast<int>(a.rows());
    if (k < 1 || k > n) throw StructuralError("diagonalizer_P: level out of range");
    if (gap_tol < 0.0) gap_tol = default_gap_tol(a);
    SpectrumTable t = gt_map(a);
    require_open_cone(t, gap_tol, k);
    ComplexMatrix p = ComplexMatrix::Identity(n, n);
    if (k == 1) return p;
    EigenDesc ed = hermitian_eigen_desc(a.topLeftCorner(k, k));
    for (int j = 0; j < k; ++j) {
        const Complex pivot = ed.vectors(k - 1, j);
        if (std::abs(pivot) < 1e-14)
            throw DegenerateSpectrumError(k, "diagonalizer_P: zero k-th row entry at level " +
                                                 std::to_string(k));
        ed.vectors.col(j) *= std::conj(pivot) / std::abs(pivot);
    }
    p.topLeftCorner(k, k) = ed.vectors;
    return p;
}

/// Minor-formula route for P_k; the independent algebraic path used to
/// cross-check the eigensolver construction.
inline ComplexMatrix diagonalizer_P_minor(const ComplexMatrix& a, int k,
                                          double gap_tol = -1.0) {
    require_hermitian(a);
    const int n = static_cast<int>(a.rows());
    if (gap_tol < 0.0) gap_tol = default_gap_tol(a);
    SpectrumTable t = gt_map(a);
    require_open_cone(t, gap_tol, k);
    ComplexMatrix p = ComplexMatrix::Identity(n, n);
    if (k == 1) return p;
    const RealVector& lam = t.row(k);
    const RealVector& lam_lo = t.row(k - 1);
    std::vector<int> rows(k - 1);
    for (int r = 0; r < k - 1; ++r) rows[r] = r;
    for (int j = 0; j < k; ++j) {
        double den = 1.0;
        for (int l = 0; l < k; ++l)
            if (l != j) den *= lam[j] - lam[l];
        for (int l = 0; l < k - 1; ++l) den *= lam[j] - lam_lo[l];
        const double root = std::sqrt(den);
        ComplexMatrix shifted = a.topLeftCorner(k, k);
        shifted.diagonal().array() -= lam[j];
        for (int i = 0; i < k; ++i) {
            std::vector<int> cols;
            cols.reserve(k - 1);
            for (int c = 0; c < k; ++c)
                if (c != i) cols.push_back(c);
            const double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            p(i, j) = sgn * minor_det(shifted, rows, cols) / root;
        }
    }
    return p;
}

/// Off-block coefficients a^(k)_i = (P_k^{-1} A P_k)_{i, k+1}, i = 1..k.
inline ComplexVector gt_a_coeffs(const ComplexMatrix& a, int k, double gap_tol = -1.0) {
    const int n = static_cast<int>(a.rows());
    if (k < 1 || k > n - 1) throw StructuralError("gt_a_coeffs: level out of range");
    const ComplexMatrix p = diagonalizer_P(a, k, gap_tol);
    // P unitary and identity beyond its block, so column k+1 of P is e_{k+1}
    // and (P^{-1} A P)_{i,k+1} reduces to (P^H A e_{k+1})_i.
    return (p.adjoint() * a.col(k)).head(k).eval();
}

/// Minor-formula route for a^(k)_i; independent of the eigensolver path.
inline ComplexVector gt_a_coeffs_minor(const ComplexMatrix& a, int k,
                                       double gap_tol = -1.0) {
    SpectrumTable t = gt_map(a);
    if (gap_tol < 0.0) gap_tol = default_gap_tol(a);
    require_open_cone(t, gap_tol, k + 1);
    const RealVector& lam = t.row(k);
    ComplexVector out(k);
    std::vector<int> rows(k), cols(k);
    for (int r = 0; r < k; ++r) rows[r] = r;
    for (int c = 0; c < k - 1; ++c) cols[c] = c;
    cols[k - 1] = k;  // columns 1..k-1, k+1
    for (int i = 0; i < k; ++i) {
        double den = 1.0;
        for (int l = 0; l < k; ++l)
            if (l != i) den *= lam[i] - lam[l];
        if (k >= 2) {
            const RealVector& lam_lo = t.row(k - 1);
            for (int l = 0; l < k - 1; ++l) den *= lam[i] - lam_lo[l];
        }
        ComplexMatrix shifted = a.topLeftCorner(k + 1, k + 1);
        shifted.diagonal().array() -= lam[i];
        const double sgn = ((k + 1 + i) % 2 == 0) ? 1.0 : -1.0;
        out[i] = sgn * minor_det(shifted, rows, cols) / std::sqrt(den);
    }
    return out;
}

/// Ladder matrix L^(k1) in U(k1) c U(n): columns are the eigenvectors of the
/// arrowhead matrix (leading k1 block of A_{k1-1}), normalized so the k1-th
/// row is 1/N_j > 0. Satisfies P_k1 = P_{k1-1} L^(k1).
inline ComplexMatrix ladder_L(const ComplexMatrix& a, int k1, double gap_tol = -1.0) {
    const int n = static_cast<int>(a.rows());
    if (k1 < 2 || k1 > n) throw StructuralError("ladder_L: level out of range");
    SpectrumTable t = gt_map(a);
    if (gap_tol < 0.0) gap_tol = default_gap_tol(a);
    require_open_cone(t, gap_tol, k1);
    const ComplexVector av = gt_a_coeffs(a, k1 - 1, gap_tol);
    const RealVector& hi = t.row(k1);
    const RealVector& lo = t.row(k1 - 1);
    ComplexMatrix l = ComplexMatrix::Identity(n, n);
    for (int j = 0; j < k1; ++j) {
        const double nj = normalizer_N(t, k1, j);
        for (int i = 0; i < k1 - 1; ++i) l(i, j) = av[i] / (nj * (hi[j] - lo[i]));
        l(k1 - 1, j) = 1.0 / nj;
    }
    return l;
}

/// Action-angle coordinates on Herm_0(n).
struct GTCoordinates {
    SpectrumTable actions;
    std::vector<RealVector> angles;  // angles[k-1][i] = Arg a^(k)_i in [0, 2pi)
    std::vector<RealVector> moduli;  // |a^(k)_i|
};

inline GTCoordinates gt_coordinates(const ComplexMatrix& a, double gap_tol = -1.0,
                                    double mod_tol = Tolerances::modulus_floor) {
    const int n = static_cast<int>(a.rows());
    SpectrumTable t = gt_map(a);
    if (gap_tol < 0.0) gap_tol = default_gap_tol(a);
    require_open_cone(t, gap_tol);
    GTCoordinates out;
    out.actions = t;
    for (int k = 1; k <= n - 1; ++k) {
        const ComplexVector av = gt_a_coeffs(a, k, gap_tol);
        RealVector ang(k), mod(k);
        for (int i = 0; i < k; ++i) {
            mod[i] = std::abs(av[i]);
            if (mod[i] < mod_tol)
                throw DomainError("gt_coordinates: |a| below modulus floor, angle undefined");
            ang[i] = wrap_angle(std::arg(av[i]));
        }
        out.angles.push_back(std::move(ang));
        out.moduli.push_back(std::move(mod));
    }
    return out;
}

/// Torus element of T(1) x ... x T(n-1): level(k)[j] in [0, 2pi).
using TorusElement = std::vector<RealVector>;

inline TorusElement zero_torus(int n) {
    TorusElement t;
    for (int k = 1; k <= n - 1; ++k) t.push_back(RealVector::Zero(k));
    return t;
}

inline TorusElement negate_torus(const TorusElement& t) {
    TorusElement out;
    for (const auto& row : t) {
        RealVector r(row.size());
        for (Eigen::Index i = 0; i < row.size(); ++i) r[i] = wrap_angle(-row[i]);
        out.push_back(std::move(r));
    }
    return out;
}

/// Thimm action of diag(e^{i theta_1}, ..., e^{i theta_k}) in T(k):
/// conjugation by P_k diag(t) P_k^{-1}. Preserves the GT map and shifts the
/// level-k angles by theta.
inline ComplexMatrix thimm_act(const ComplexMatrix& a, int k, const RealVector& theta,
                               double gap_tol = -1.0) {
    const int n = static_cast<int>(a.rows());
    if (k < 1 || k > n - 1) throw StructuralError("thimm_act: level out of range");
    if (theta.size() != k) throw StructuralError("thimm_act: angle count mismatch");
    const ComplexMatrix p = diagonalizer_P(a, k, gap_tol);
    ComplexVector t = ComplexVector::Ones(n);
    for (int j = 0; j < k; ++j) t[j] = std::exp(Complex(0.0, theta[j]));
    const ComplexMatrix u = p * t.asDiagonal() * p.adjoint();
    ComplexMatrix b = u * a * u.adjoint();
    return (b + b.adjoint()) / 2.0;
}

/// Full gauge map X_theta: Thimm action level by level, k = 1..n-1.
inline ComplexMatrix thimm_act_full(const ComplexMatrix& a, const TorusElement& theta,
                                    double gap_tol = -1.0) {
    ComplexMatrix b = a;
    const int n = static_cast<int>(a.rows());
    if (static_cast<int>(theta.size()) != n - 1)
        throw StructuralError("thimm_act_full: level count mismatch");
    for (int k = 1; k <= n - 1; ++k) b = thimm_act(b, k, theta[k - 1], gap_tol);
    return b;
}

/// Inverse problem: assemble A from coordinates through the ladder,
/// P_n = L^(2) ... L^(n), A = P_n diag(lambda^(n)) P_n^H.
inline ComplexMatrix rebuild_from_coordinates(const GTCoordinates& c) {
    const int n = c.actions.levels();
    ComplexMatrix p = ComplexMatrix::Identity(n, n);
    for (int k1 = 2; k1 <= n; ++k1) {
        const RealVector& hi = c.actions.row(k1);
        const RealVector& lo = c.actions.row(k1 - 1);
        ComplexMatrix l = ComplexMatrix::Identity(n, n);
        for (int j = 0; j < k1; ++j) {
            const double nj = normalizer_N(c.actions, k1, j);
            for (int i = 0; i < k1 - 1; ++i) {
                const Complex ai =
                    std::sqrt(a_modulus_sq(c.actions, k1 - 1, i)) *
                    std::exp(Complex(0.0, c.angles[k1 - 2][i]));
                l(i, j) = ai / (nj * (hi[j] - lo[i]));
            }
            l(k1 - 1, j) = 1.0 / nj;
        }
        p = p * l;
    }
    ComplexMatrix a = p * c.actions.row(n).asDiagonal() * p.adjoint();
    return (a + a.adjoint()) / 2.0;
}

}  // namespace gtstokes

#endif  // GTSTOKES_GT_HPP
