#ifndef GTSTOKES_CATERPILLAR_HPP
#define GTSTOKES_CATERPILLAR_HPP

#include <cmath>
#include <vector>

#include "gtstokes/gt.hpp"
#include "gtstokes/linalg.hpp"
#include "gtstokes/special.hpp"
#include "gtstokes/types.hpp"

namespace gtstokes {

/// Upper/lower triangular Stokes pair with S_- = S_+^H.
struct StokesPair {
    ComplexMatrix s_plus;
    ComplexMatrix s_minus;

    ComplexMatrix product() const { return s_minus * s_plus; }
};

/// Normalized connection matrix of the rank-one subsystem at level k1
/// (2 <= k1 <= n): unitary, identity on indices > k1. Entry conventions:
///
///   C~_{ij} = e^{(l^(k1-1)_i - l^(k1)_j)/4} / (l^(k1)_j - l^(k1-1)_i)
///             * [Gamma products in the action differences] * a^(k1-1)_i / N_j
///   C~_{k1,j} = e^{(l^(k1)_j - A_{k1,k1})/4} * [Gamma products] / N_j
///
/// The rational factor uses the difference l^(k1)_j - l^(k1-1)_i; with that
/// orientation the columns are the e^{.}-weighted arrowhead eigenvectors and
/// the matrix is exactly unitary (checked to 1e-9 below).
inline ComplexMatrix normalized_connection(const ComplexMatrix& a, int k1,
                                           double gap_tol = -1.0) {
    const int n = static_cast<int>(a.rows());
    if (k1 < 2 || k1 > n) throw StructuralError("normalized_connection: level out of range");
    SpectrumTable t = gt_map(a);
    if (gap_tol < 0.0) gap_tol = default_gap_tol(a);
    require_open_cone(t, gap_tol, k1);
    const int k = k1 - 1;
    const RealVector& hi = t.row(k1);
    const RealVector& lo = t.row(k);
    const ComplexVector av = gt_a_coeffs(a, k, gap_tol);
    const double akk = a(k1 - 1, k1 - 1).real();

    ComplexMatrix c = ComplexMatrix::Identity(n, n);
    for (int j = 0; j < k1; ++j) {
        const double nj = normalizer_N(t, k1, j);
        for (int i = 0; i < k; ++i) {
            Complex s(0.0, 0.0);
            for (int v = 0; v < k1; ++v) s += log_gamma_ratio_arg(hi[v] - hi[j]);
            for (int v = 0; v < k; ++v) s += log_gamma_ratio_arg(lo[v] - lo[i]);
            for (int v = 0; v < k; ++v)
                if (v != i) s -= log_gamma_ratio_arg(lo[v] - hi[j]);
            for (int v = 0; v < k1; ++v)
                if (v != j) s -= log_gamma_ratio_arg(hi[v] - lo[i]);
            const double x = lo[i] - hi[j];
            c(i, j) = std::exp(s + x / 4.0) / (hi[j] - lo[i]) * av[i] / nj;
        }
        Complex s(0.0, 0.0);
        for (int v = 0; v < k1; ++v) s += log_gamma_ratio_arg(hi[v] - hi[j]);
        for (int v = 0; v < k; ++v) s -= log_gamma_ratio_arg(lo[v] - hi[j]);
        c(k1 - 1, j) = std::exp(s + (hi[j] - akk) / 4.0) / nj;
    }
    require_unitary(c, 1e-9 * n);
    return c;
}

/// Factors of the decomposition C~(level i) = D_L * diag(a,..,a,1,..) * R * D_R.
/// D_L, D_R are diagonal unitary-modulus Gamma ratios; R is real and depends
/// only on the action variables.
struct DLRFactors {
    ComplexVector d_left;    // D_L^(i-1), diagonal
    ComplexVector mid_diag;  // diag(a^(i-1)_1, ..., a^(i-1)_{i-1}, 1, ..., 1)
    ComplexMatrix r;         // R^(i), real entries
    ComplexVector d_right;   // D_R^(i), diagonal

    ComplexMatrix reconstruct() const {
        return d_left.cwiseProduct(mid_diag).asDiagonal() * r * d_right.asDiagonal();
    }
};

/// Diagonal of D_R^(i): prod_v Gamma(1+(l^(i)_v - l^(i)_j)/2pi i)
///                    / prod_v Gamma(1+(l^(i-1)_v - l^(i)_j)/2pi i), j <= i.
inline ComplexVector dlr_d_right(const SpectrumTable& t, int i, int n) {
    ComplexVector d = ComplexVector::Ones(n);
    const RealVector& li = t.row(i);
    for (int j = 0; j < i; ++j) {
        Complex s(0.0, 0.0);
        for (int v = 0; v < i; ++v) s += log_gamma_ratio_arg(li[v] - li[j]);
        if (i >= 2) {
            const RealVector& lo = t.row(i - 1);
            for (int v = 0; v < i - 1; ++v) s -= log_gamma_ratio_arg(lo[v] - li[j]);
        }
        d[j] = std::exp(s);
    }
    return d;
}

/// Diagonal of D_L^(i): prod_v Gamma(1+(l^(i)_v - l^(i)_j)/2pi i)
///                    / prod_v Gamma(1+(l^(i+1)_v - l^(i)_j)/2pi i), j <= i.
inline ComplexVector dlr_d_left(const SpectrumTable& t, int i, int n) {
    ComplexVector d = ComplexVector::Ones(n);
    const RealVector& li = t.row(i);
    const RealVector& up = t.row(i + 1);
    for (int j = 0; j < i; ++j) {
        Complex s(0.0, 0.0);
        for (int v = 0; v < i; ++v) s += log_gamma_ratio_arg(li[v] - li[j]);
        for (int v = 0; v < i + 1; ++v) s -= log_gamma_ratio_arg(up[v] - li[j]);
        d[j] = std::exp(s);
    }
    return d;
}

/// Decomposition of normalized_connection(a, i) into diagonal Gamma factors
/// and an action-only real core R. Rows below i of R carry the constant -1/2
/// that makes the product reconstruct C~ exactly.
inline DLRFactors decompose_DLR(const ComplexMatrix& a, int i, double gap_tol = -1.0) {
    const int n = static_cast<int>(a.rows());
    if (i < 2 || i > n) throw StructuralError("decompose_DLR: level out of range");
    SpectrumTable t = gt_map(a);
    if (gap_tol < 0.0) gap_tol = default_gap_tol(a);
    require_open_cone(t, gap_tol, i);
    const RealVector& hi = t.row(i);
    const RealVector& lo = t.row(i - 1);
    const ComplexVector av = gt_a_coeffs(a, i - 1, gap_tol);
    DLRFactors f;
    f.d_left = dlr_d_left(t, i - 1, n);
    f.d_right = dlr_d_right(t, i, n);
    f.mid_diag = ComplexVector::Ones(n);
    for (int j = 0; j < i - 1; ++j) f.mid_diag[j] = av[j];
    f.r = ComplexMatrix::Identity(n, n);
    const double aii = a(i - 1, i - 1).real();
    for (int j = 0; j < i; ++j) {
        const double nj = normalizer_N(t, i, j);
        for (int kk = 0; kk < i - 1; ++kk) {
            const double x = lo[kk] - hi[j];
            f.r(kk, j) = -std::exp(x / 4.0) / (2.0 * nj * std::sinh(x / 2.0));
        }
        f.r(i - 1, j) = std::exp((hi[j] - aii) / 4.0) / nj;
    }
    return f;
}

/// Ordered product C~(u_cat, A) = C~(level 2) C~(level 3) ... C~(level n).
inline ComplexMatrix connection_product(const ComplexMatrix& a, double gap_tol = -1.0) {
    require_hermitian(a);
    const int n = static_cast<int>(a.rows());
    ComplexMatrix c = ComplexMatrix::Identity(n, n);
    for (int k1 = 2; k1 <= n; ++k1) c *= normalized_connection(a, k1, gap_tol);
    return c;
}

struct CaterpillarResult {
    ComplexMatrix nu;       // positive definite, = C~ e^{diag lambda^(n)} C~^H
    ComplexMatrix c_tilde;  // unitary conjugator
    StokesPair stokes;      // Cholesky extraction of nu
    double diag_residual;   // || diag(S_+) - e^{[A]/2} ||
};

/// Cholesky extraction M = S_-^H S_+ ... realizes M = S_- S_+ with
/// S_- = S_+^H; records the deviation of diag(S_+) from e^{diag(A)/2}.
inline StokesPair extract_stokes(const ComplexMatrix& m, const RealVector& diag_a,
                                 double* diag_residual = nullptr) {
    StokesPair s;
    s.s_plus = cholesky_upper(m);
    s.s_minus = s.s_plus.adjoint();
    if (diag_residual) {
        double r = 0.0;
        for (Eigen::Index j = 0; j < m.rows(); ++j) {
            const double d = std::abs(s.s_plus(j, j) - std::exp(diag_a[j] / 2.0));
            r += d * d;
        }
        *diag_residual = std::sqrt(r);
    }
    return s;
}

/// Riemann-Hilbert map at the caterpillar point:
/// nu(u_cat, A) = C~(u_cat,A) e^{A_n} C~(u_cat,A)^{-1}, with the Stokes pair
/// read off by Cholesky.
inline CaterpillarResult rh_caterpillar(const ComplexMatrix& a, double gap_tol = -1.0) {
    require_hermitian(a);
    const int n = static_cast<int>(a.rows());
    CaterpillarResult out;
    out.c_tilde = connection_product(a, gap_tol);
    const SpectrumTable t = gt_map(a);
    ComplexMatrix nu = out.c_tilde * t.row(n).array().exp().matrix().asDiagonal() *
                       out.c_tilde.adjoint();
    out.nu = (nu + nu.adjoint()) / 2.0;
    out.stokes = extract_stokes(out.nu, a.diagonal().real(), &out.diag_residual);
    return out;
}

/// Sub-diagonal entries of the Stokes matrices at the caterpillar point:
/// (S_+)_{k,k+1} and (S_-)_{k+1,k} for k = 1..n-1, from the Gamma-product /
/// minor closed forms. All summands enter with weight +1; the minor already
/// carries the sign of the a-coefficient.
struct StokesSubdiagonals {
    ComplexVector upper;  // (S_+)_{k,k+1}
    ComplexVector lower;  // (S_-)_{k+1,k}
};

inline StokesSubdiagonals stokes_subdiag(const ComplexMatrix& phi0, double gap_tol = -1.0) {
    require_hermitian(phi0);
    const int n = static_cast<int>(phi0.rows());
    SpectrumTable t = gt_map(phi0);
    if (gap_tol < 0.0) gap_tol = default_gap_tol(phi0);
    require_open_cone(t, gap_tol);
    StokesSubdiagonals out;
    out.upper.resize(n - 1);
    out.lower.resize(n - 1);
    std::vector<int> rows, cols;
    for (int k = 1; k <= n - 1; ++k) {
        const RealVector& lk = t.row(k);
        const RealVector& lk1 = t.row(k + 1);
        Complex totp(0.0, 0.0), totm(0.0, 0.0);
        rows.assign(k, 0);
        cols.assign(k, 0);
        for (int r = 0; r < k; ++r) rows[r] = r;
        for (int c = 0; c < k - 1; ++c) cols[c] = c;
        cols[k - 1] = k;
        for (int i = 0; i < k; ++i) {
            Complex sp(0.0, 0.0), sm(0.0, 0.0);
            for (int l = 0; l < k; ++l) {
                if (l == i) continue;
                sp += log_gamma_ratio_arg(lk[l] - lk[i]);
                sm += log_gamma_ratio_arg(lk[i] - lk[l]);
                // Gamma(r/2pi i) = Gamma(1 + r/2pi i) * 2pi i / r
                sp += log_gamma_ratio_arg(lk[l] - lk[i]) + std::log(kTwoPiI / (lk[l] - lk[i]));
                sm += log_gamma_ratio_arg(lk[i] - lk[l]) + std::log(kTwoPiI / (lk[i] - lk[l]));
            }
            for (int l = 0; l < k + 1; ++l) {
                sp -= log_gamma_ratio_arg(lk1[l] - lk[i]);
                sm -= log_gamma_ratio_arg(lk[i] - lk1[l]);
            }
            if (k >= 2) {
                const RealVector& lkm = t.row(k - 1);
                for (int l = 0; l < k - 1; ++l) {
                    sp -= log_gamma_ratio_arg(lkm[l] - lk[i]);
                    sm -= log_gamma_ratio_arg(lk[i] - lkm[l]);
                }
            }
            ComplexMatrix shifted = phi0;
            shifted.diagonal().array() -= lk[i];
            const Complex minor_p =
                minor_det((shifted / kTwoPiI).eval(), rows, cols) * std::exp(sp);
            const Complex minor_m =
                minor_det(((-shifted) / kTwoPiI).eval(), cols, rows) * std::exp(sm);
            totp += minor_p;
            totm += minor_m;
        }
        const double pref =
            std::exp((phi0(k - 1, k - 1).real() + phi0(k, k).real()) / 4.0);
        out.upper[k - 1] = kTwoPiI * pref * totp;
        out.lower[k - 1] = -kTwoPiI * pref * totm;
    }
    return out;
}

/// Monodromy residual || C e^A C^{-1} - S_- S_+ || (chamber U_id, P_sigma = Id).
inline double verify_monodromy(const ComplexMatrix& c, const ComplexMatrix& a,
                               const StokesPair& s) {
    return (c * hermitian_exp(a) * c.adjoint() - s.product()).norm();
}

}  // namespace gtstokes

#endif  // GTSTOKES_CATERPILLAR_HPP
