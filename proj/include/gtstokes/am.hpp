#ifndef GTSTOKES_AM_HPP
#define GTSTOKES_AM_HPP

#include <cmath>
#include <vector>

#include "gtstokes/caterpillar.hpp"
#include "gtstokes/gt.hpp"
#include "gtstokes/special.hpp"
#include "gtstokes/types.hpp"

namespace gtstokes {

/// Unitary factor psi^(k) of the Alekseev-Meinrenken map. Entries combine
///   - the exponential prefactor e^{(l^(k-1)_i - l^(k)_j)/4},
///   - sinh-ratio magnitudes |Gamma(1 + r/2pi i)| = sqrt(r / (2 sinh(r/2))),
///   - the rational factor 1/(l^(k)_j - l^(k-1)_i),
///   - the full coefficient a^(k-1)_i (its phase is the minor phase factor).
/// This is the normalized connection matrix with every Gamma replaced by its
/// modulus; rows beyond k are identity. psi^(1) = Id.
inline ComplexMatrix psi_factor(const ComplexMatrix& a, int k, double gap_tol = -1.0) {
    const int n = static_cast<int>(a.rows());
    if (k < 1 || k > n) throw StructuralError("psi_factor: level out of range");
    ComplexMatrix psi = ComplexMatrix::Identity(n, n);
    if (k == 1) return psi;
    SpectrumTable t = gt_map(a);
    if (gap_tol < 0.0) gap_tol = default_gap_tol(a);
    require_open_cone(t, gap_tol, k);
    const RealVector& hi = t.row(k);
    const RealVector& lo = t.row(k - 1);
    const ComplexVector av = gt_a_coeffs(a, k - 1, gap_tol);
    const double akk = a(k - 1, k - 1).real();
    for (int j = 0; j < k; ++j) {
        const double nj = normalizer_N(t, k, j);
        for (int i = 0; i < k - 1; ++i) {
            double s = 0.0;
            for (int v = 0; v < k; ++v) s += log_gamma_mod_arg(hi[v] - hi[j]);
            for (int v = 0; v < k - 1; ++v) s += log_gamma_mod_arg(lo[v] - lo[i]);
            for (int v = 0; v < k - 1; ++v)
                if (v != i) s -= log_gamma_mod_arg(lo[v] - hi[j]);
            for (int v = 0; v < k; ++v)
                if (v != j) s -= log_gamma_mod_arg(hi[v] - lo[i]);
            const double x = lo[i] - hi[j];
            if (!std::isfinite(s))
                throw DomainError("psi_factor: sinh-ratio underflow, spectrum too spread");
            psi(i, j) = std::exp(s + x / 4.0) / (hi[j] - lo[i]) * av[i] / nj;
        }
        double s = 0.0;
        for (int v = 0; v < k; ++v) s += log_gamma_mod_arg(hi[v] - hi[j]);
        for (int v = 0; v < k - 1; ++v) s -= log_gamma_mod_arg(lo[v] - hi[j]);
        psi(k - 1, j) = std::exp(s + (hi[j] - akk) / 4.0) / nj;
    }
    require_unitary(psi, 1e-9 * n);
    return psi;
}

struct AMFactorization {
    std::vector<ComplexMatrix> psi_factors;  // psi^(1), ..., psi^(n)
    ComplexMatrix psi;                       // their ordered product
    ComplexMatrix gamma;                     // psi e^{A_n} psi^{-1}, positive definite
};

/// The Alekseev-Meinrenken diffeomorphism Herm(n) -> Herm^+(n) in closed form.
inline AMFactorization gamma_am(const ComplexMatrix& a, double gap_tol = -1.0) {
    require_hermitian(a);
    const int n = static_cast<int>(a.rows());
    AMFactorization out;
    out.psi = ComplexMatrix::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        out.psi_factors.push_back(psi_factor(a, k, gap_tol));
        out.psi *= out.psi_factors.back();
    }
    const SpectrumTable t = gt_map(a);
    ComplexMatrix g =
        out.psi * t.row(n).array().exp().matrix().asDiagonal() * out.psi.adjoint();
    out.gamma = (g + g.adjoint()) / 2.0;
    return out;
}

/// Closed form on Herm(2): a' = e^{l1}, c' = e^{m1} + e^{m2} - e^{l1},
/// b' = e^{i Arg b} sqrt(e^{l1+m1} + e^{l1+m2} - e^{2 l1} - e^{m1+m2}),
/// with l1 = a and (m1, m2) the eigenvalues.
inline ComplexMatrix gamma_am_2x2(double a, Complex b, double c) {
    if (std::abs(b) == 0.0)
        throw DomainError("gamma_am_2x2: b = 0 lies outside Herm_0(2)");
    const double tr = a + c;
    const double disc = std::sqrt((a - c) * (a - c) + 4.0 * std::norm(b) * 1.0);
    const double m1 = (tr + disc) / 2.0;
    const double m2 = (tr - disc) / 2.0;
    const double ap = std::exp(a);
    const double cp = std::exp(m1) + std::exp(m2) - std::exp(a);
    const double rad = std::exp(a + m1) + std::exp(a + m2) - std::exp(2.0 * a) -
                       std::exp(m1 + m2);
    if (rad < 0.0)
        throw DomainError("gamma_am_2x2: negative radicand (degenerate input)");
    const Complex bp = (b / std::abs(b)) * std::sqrt(rad);
    ComplexMatrix g(2, 2);
    g << ap, bp, std::conj(bp), cp;
    return g;
}

/// Phase map theta: Herm_0(n) -> T^{n(n-1)/2} with components
/// theta^(i)_j = -Arg( D_R^(i)_{jj} D_L^(i)_{jj} ), a function of the action
/// variables alone. X_theta twists A so that the caterpillar map lands on the
/// positive real section: Gamma_AM = nu(u_cat) o X_theta.
inline TorusElement phase_theta(const ComplexMatrix& a, double gap_tol = -1.0) {
    require_hermitian(a);
    const int n = static_cast<int>(a.rows());
    SpectrumTable t = gt_map(a);
    if (gap_tol < 0.0) gap_tol = default_gap_tol(a);
    require_open_cone(t, gap_tol);
    TorusElement theta;
    for (int i = 1; i <= n - 1; ++i) {
        const ComplexVector dr = dlr_d_right(t, i, n);
        const ComplexVector dl = dlr_d_left(t, i, n);
        RealVector row(i);
        for (int j = 0; j < i; ++j) row[j] = wrap_angle(-std::arg(dr[j] * dl[j]));
        theta.push_back(std::move(row));
    }
    return theta;
}

/// The composed route nu(u_cat, X_theta(A)); must coincide with
/// gamma_am(A).gamma. Exercising it validates the connection formulas, the
/// decomposition diagonals and the phase map in one shot.
inline ComplexMatrix am_via_rh(const ComplexMatrix& a, double gap_tol = -1.0) {
    const TorusElement theta = phase_theta(a, gap_tol);
    const ComplexMatrix twisted = thimm_act_full(a, theta, gap_tol);
    return rh_caterpillar(twisted, gap_tol).nu;
}

}  // namespace gtstokes

#endif  // GTSTOKES_AM_HPP
