#ifndef GTSTOKES_ISO_HPP
#define GTSTOKES_ISO_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "gtstokes/am.hpp"
#include "gtstokes/gt.hpp"
#include "gtstokes/linalg.hpp"
#include "gtstokes/ode.hpp"
#include "gtstokes/types.hpp"

namespace gtstokes {

/// delta_k(A): the leading k x k block of A together with the full diagonal.
inline ComplexMatrix delta_block(const ComplexMatrix& a, int k) {
    const int n = static_cast<int>(a.rows());
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    d.topLeftCorner(k, k) = a.topLeftCorner(k, k);
    d.diagonal() = a.diagonal();
    return d;
}

/// Right-hand side of the isomonodromy flow in direction u_k:
/// (1/2 pi i) [Phi, ad_u^{-1} ad_{E_k} Phi]; Hermitian by construction.
inline ComplexMatrix iso_rhs(const RealVector& u, const ComplexMatrix& phi, int k) {
    const int n = static_cast<int>(u.size());
    if (k < 0 || k >= n) throw StructuralError("iso_rhs: direction out of range");
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        const double du = u[k] - u[j];
        if (du == 0.0) throw DomainError("iso_rhs: coincident deformation parameters");
        // ad_{E_k} Phi has row k and column k only
        m(k, j) = phi(k, j) / (u[k] - u[j]);
        m(j, k) = -phi(j, k) / (u[j] - u[k]);
    }
    ComplexMatrix rhs = (phi * m - m * phi) / kTwoPiI;
    return (rhs + rhs.adjoint()) / 2.0;
}

struct FlowState {
    RealVector u;
    ComplexMatrix phi;
};

struct FlowOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double gap_tol = 1e-9;  // chamber guard on u
};

struct FlowDiagnostics {
    double hermiticity_drift = 0.0;  // max per-step drift before re-symmetrization
    long steps = 0;
};

/// Integrates the isomonodromy equation along the straight segment from
/// state.u to u_target (U_id is convex, so checking the endpoints suffices).
/// Phi is re-symmetrized every step; the drift removed this way is recorded.
inline FlowState iso_flow(const FlowState& state, const RealVector& u_target,
                          const FlowOptions& opt = {},
                          FlowDiagnostics* diag = nullptr) {
    require_hermitian(state.phi);
    if (state.u.size() != u_target.size() || state.u.size() != state.phi.rows())
        throw StructuralError("iso_flow: dimension mismatch");
    if (!strictly_increasing(state.u, opt.gap_tol) ||
        !strictly_increasing(u_target, opt.gap_tol))
        throw DomainError("iso_flow: path endpoint leaves the chamber U_id");
    const RealVector du = u_target - state.u;
    const int n = static_cast<int>(state.u.size());
    FlowDiagnostics local;
    Dop853::Rhs rhs = [&](double t, const ComplexMatrix& phi, ComplexMatrix& out) {
        const RealVector ut = state.u + t * du;
        out = ComplexMatrix::Zero(n, n);
        // re-symmetrize the integrator's trial state and log the drift
        const ComplexMatrix ph = ((phi + phi.adjoint()) / 2.0).eval();
        local.hermiticity_drift =
            std::max(local.hermiticity_drift, (phi - ph).norm());
        for (int k = 0; k < n; ++k)
            if (du[k] != 0.0) out += du[k] * iso_rhs(ut, ph, k);
    };
    FlowState out;
    out.u = u_target;
    out.phi = state.phi;
    Dop853::Options dopt;
    dopt.rtol = opt.rtol;
    dopt.atol = opt.atol;
    auto st = Dop853::integrate(rhs, 0.0, 1.0, out.phi, dopt);
    local.steps = st.steps;
    out.phi = ((out.phi + out.phi.adjoint()) / 2.0).eval();
    if (diag) *diag = local;
    return out;
}

/// The unitary dressing of the leading-term approximation:
/// g(u;A) = (1/(u_2-u_1))^{delta_1(A)/2pi i}
///          prod_{k=2..n-1} ((u_k-u_{k-1})/(u_{k+1}-u_k))^{delta_k(A)/2pi i},
/// factors ordered left to right by k.
inline ComplexMatrix g_factor(const RealVector& u, const ComplexMatrix& a) {
    require_hermitian(a);
    const int n = static_cast<int>(u.size());
    if (n != a.rows()) throw StructuralError("g_factor: dimension mismatch");
    if (!strictly_increasing(u)) throw DomainError("g_factor: u must be increasing");
    ComplexMatrix g = real_power_unitary(1.0 / (u[1] - u[0]), delta_block(a, 1));
    for (int k = 2; k <= n - 1; ++k) {
        const double ratio = (u[k - 1] - u[k - 2]) / (u[k] - u[k - 1]);
        g *= real_power_unitary(ratio, delta_block(a, k));
    }
    return g;
}

/// Boundary-value dressing of the asymptotic expansion of Phi(u):
/// G(u;Phi0) = (u_2-u_1)^{delta_1/2pi i}
///             prod_{k=2..n-1} ((u_{k+1}-u_k)/(u_k-u_{k-1}))^{delta_k/2pi i}.
inline ComplexMatrix boundary_dressing(const RealVector& u, const ComplexMatrix& phi0) {
    require_hermitian(phi0);
    const int n = static_cast<int>(u.size());
    ComplexMatrix g = real_power_unitary(u[1] - u[0], delta_block(phi0, 1));
    for (int k = 2; k <= n - 1; ++k) {
        const double ratio = (u[k] - u[k - 1]) / (u[k - 1] - u[k - 2]);
        g *= real_power_unitary(ratio, delta_block(phi0, k));
    }
    return g;
}

/// Strips the Ad(G(u;Phi0)) dressing from flow samples and extrapolates the
/// boundary value Phi0. G depends on Phi0, so the strip is iterated to a
/// fixed point starting from the most asymptotic sample.
inline ComplexMatrix boundary_fit(const std::vector<FlowState>& samples,
                                  int iterations = 40) {
    if (samples.empty()) throw StructuralError("boundary_fit: no samples");
    const FlowState& last = samples.back();
    ComplexMatrix est = last.phi;
    for (int it = 0; it < iterations; ++it) {
        const ComplexMatrix g = boundary_dressing(last.u, est);
        ComplexMatrix next = g.adjoint() * last.phi * g;
        next = ((next + next.adjoint()) / 2.0).eval();
        const double delta = (next - est).norm();
        est = next;
        if (delta < 1e-14) break;
    }
    return est;
}

/// The explicit diffeomorphism psi(u) = X_theta^{-1} o Ad_{g(u; . )}:
/// conjugate by g(u;A), then undo the phase map. Preserves the GT actions.
inline ComplexMatrix psi_u(const RealVector& u, const ComplexMatrix& a,
                           double gap_tol = -1.0) {
    const ComplexMatrix g = g_factor(u, a);
    ComplexMatrix b = g * a * g.adjoint();
    b = ((b + b.adjoint()) / 2.0).eval();
    // theta depends only on the actions, which Ad_g preserves
    const TorusElement theta = phase_theta(a, gap_tol);
    return thimm_act_full(b, negate_torus(theta), gap_tol);
}

/// Same map through the torus route: psi(u) = X_phi with
/// phi^(i)_j = theta_1(u)^(i)_j - theta^(i)_j, where theta_1 collects the
/// arguments of the scalar ratio powers.
inline ComplexMatrix psi_u_torus(const RealVector& u, const ComplexMatrix& a,
                                 double gap_tol = -1.0) {
    const int n = static_cast<int>(a.rows());
    const SpectrumTable t = gt_map(a);
    const TorusElement theta = phase_theta(a, gap_tol);
    TorusElement phi;
    for (int i = 1; i <= n - 1; ++i) {
        RealVector row(i);
        for (int j = 0; j < i; ++j) {
            double t1 = (t.row(i)[j] - a(i, i).real()) * std::log(u[i] - u[i - 1]) / kTwoPi;
            if (i >= 2)
                t1 -= (t.row(i)[j] - a(i - 1, i - 1).real()) *
                      std::log(u[i - 1] - u[i - 2]) / kTwoPi;
            row[j] = wrap_angle(t1 - theta[i - 1][j]);
        }
        phi.push_back(std::move(row));
    }
    return thimm_act_full(a, phi, gap_tol);
}

struct DecayPoint {
    double min_ratio;  // min over k of (u_{k+1}-u_k)/(u_k-u_{k-1})
    double error;      // || Gamma_AM(psi(u,A)) - nu_oracle(u,A) ||
};

struct DecayReport {
    std::vector<DecayPoint> points;
    double slope = 0.0;  // log-log least squares fit of error vs min_ratio
};

inline double min_gap_ratio(const RealVector& u) {
    double r = std::numeric_limits<double>::infinity();
    for (int k = 1; k + 1 < u.size(); ++k)
        r = std::min(r, (u[k + 1] - u[k]) / (u[k] - u[k - 1]));
    if (!std::isfinite(r)) r = u[u.size() - 1] - u[0];  // n = 2: the single scale
    return r;
}

/// Desk-scale check of the leading-term theorem: along a schedule of
/// u-points with growing gap ratios, compare Gamma_AM(psi(u,A)) with the
/// directly integrated Riemann-Hilbert value S_-(u,A) S_+(u,A).
inline DecayReport verify_mainthm(const ComplexMatrix& a,
                                  const std::vector<RealVector>& schedule,
                                  const OracleConfig& cfg = {}) {
    DecayReport rep;
    for (const RealVector& u : schedule) {
        const ComplexMatrix b = psi_u(u, a);
        const ComplexMatrix gamma = gamma_am(b).gamma;
        LinearSystemSpec spec{u, a};
        const StokesNumericResult s = stokes_numeric(spec, cfg);
        const ComplexMatrix nu = s.s_plus.adjoint() * s.s_plus;
        rep.points.push_back({min_gap_ratio(u), (gamma - nu).norm()});
    }
    if (rep.points.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& p : rep.points) {
            const double x = std::log(p.min_ratio), y = std::log(p.error);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double m = rep.points.size();
        rep.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    return rep;
}

}  // namespace gtstokes

#endif  // GTSTOKES_ISO_HPP
