#ifndef GTSTOKES_ODE_HPP
#define GTSTOKES_ODE_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "gtstokes/linalg.hpp"
#include "gtstokes/types.hpp"

namespace gtstokes {

/// Dormand-Prince 8(5,3) embedded Runge-Kutta (Hairer's DOP853 core, no
/// dense output) for matrix-valued states. Local error is controlled with
/// the usual combined 5th/3rd order estimate and a PI step controller.
class Dop853 {
public:
    using Rhs = std::function<void(double, const ComplexMatrix&, ComplexMatrix&)>;

    struct Options {
        double rtol = 1e-10;
        double atol = 1e-12;
        double h_init = 1e-3;
        double h_min_factor = 1e-14;  // of the interval length
        long max_steps = 2000000;
    };

    struct Stats {
        long steps = 0;
        long rejected = 0;
    };

    /// Integrates y' = f(t, y) from t0 to t1 in place; returns stats.
    static Stats integrate(const Rhs& f, double t0, double t1, ComplexMatrix& y,
                           const Options& opt) {
        static constexpr double c2 = 0.526001519587677318785587544488e-01,
                                c3 = 0.789002279381515978178381316732e-01,
                                c4 = 0.118350341907227396726757197510e+00,
                                c5 = 0.281649658092772603273242802490e+00,
                                c6 = 0.333333333333333333333333333333e+00,
                                c7 = 0.25e+00,
                                c8 = 0.307692307692307692307692307692e+00,
                                c9 = 0.651282051282051282051282051282e+00,
                                c10 = 0.6e+00,
                                c11 = 0.857142857142857142857142857142e+00;
        static constexpr double a21 = 5.26001519587677318785587544488e-2,
                                a31 = 1.97250569845378994544595329183e-2,
                                a32 = 5.91751709536136983633785987549e-2,
                                a41 = 2.95875854768068491816892993775e-2,
                                a43 = 8.87627564304205475450678981324e-2,
                                a51 = 2.41365134159266685502369798665e-1,
                                a53 = -8.84549479328286085344864962717e-1,
                                a54 = 9.24834003261792003115737966543e-1,
                                a61 = 3.7037037037037037037037037037e-2,
                                a64 = 1.70828608729473871279604482173e-1,
                                a65 = 1.25467687566822425016691814123e-1,
                                a71 = 3.7109375e-2,
                                a74 = 1.70252211019544039314978060272e-1,
                                a75 = 6.02165389804559606850219397283e-2,
                                a76 = -1.7578125e-2;
        static constexpr double a81 = 3.70920001185047927108779319836e-2,
                                a84 = 1.70383925712239993810214054705e-1,
                                a85 = 1.07262030446373284651809199168e-1,
                                a86 = -1.53194377486244017527936158236e-2,
                                a87 = 8.27378916381402288758473766002e-3,
                                a91 = 6.24110958716075717114429577812e-1,
                                a94 = -3.36089262944694129406857109825e0,
                                a95 = -8.68219346841726006818189891453e-1,
                                a96 = 2.75920996994467083049415600797e1,
                                a97 = 2.01540675504778934086186788979e1,
                                a98 = -4.34898841810699588477366255144e1,
                                a101 = 4.77662536438264365890433908527e-1,
                                a104 = -2.48811461997166764192642586468e0,
                                a105 = -5.90290826836842996371446475743e-1,
                                a106 = 2.12300514481811942347288949897e1,
                                a107 = 1.52792336328824235832596922938e1,
                                a108 = -3.32882109689848629194453265587e1,
                                a109 = -2.03312017085086261358222928593e-2;
        static constexpr double a111 = -9.3714243008598732571704021658e-1,
                                a114 = 5.18637242884406370830023853209e0,
                                a115 = 1.09143734899672957818500254654e0,
                                a116 = -8.14978701074692612513997267357e0,
                                a117 = -1.85200656599969598641566180701e1,
                                a118 = 2.27394870993505042818970056734e1,
                                a119 = 2.49360555267965238987089396762e0,
                                a1110 = -3.0467644718982195003823669022e0,
                                a121 = 2.27331014751653820792359768449e0,
                                a124 = -1.05344954667372501984066689879e1,
                                a125 = -2.00087205822486249909675718444e0,
                                a126 = -1.79589318631187989172765950534e1,
                                a127 = 2.79488845294199600508499808837e1,
                                a128 = -2.85899827713502369474065508674e0,
                                a129 = -8.87285693353062954433549289258e0,
                                a1210 = 1.23605671757943030647266201528e1,
                                a1211 = 6.43392746015763530355970484046e-1;
        static constexpr double b1 = 5.42937341165687622380535766363e-2,
                                b6 = 4.45031289275240888144113950566e0,
                                b7 = 1.89151789931450038304281599044e0,
                                b8 = -5.8012039600105847814672114227e0,
                                b9 = 3.1116436695781989440891606237e-1,
                                b10 = -1.52160949662516078556178806805e-1,
                                b11 = 2.01365400804030348374776537501e-1,
                                b12 = 4.47106157277725905176885569043e-2;
        static constexpr double e31 = 0.244094488188976377952755905512e+00,
                                e32 = 0.733846688281611857341361741547e+00,
                                e33 = 0.220588235294117647058823529412e-01;
        static constexpr double e51 = 0.1312004499419488073250102996e-01,
                                e56 = -0.1225156446376204440720569753e+01,
                                e57 = -0.4957589496572501915214079952e+00,
                                e58 = 0.1664377182454986536961530415e+01,
                                e59 = -0.3503288487499736816886487290e+00,
                                e510 = 0.3341791187130174790297318841e+00,
                                e511 = 0.8192320648511571246570742613e-01,
                                e512 = -0.2235530786388629525884427845e-01;

        const double dir = (t1 >= t0) ? 1.0 : -1.0;
        const double span = std::abs(t1 - t0);
        double t = t0;
        double h = dir * std::min(opt.h_init, span);
        Stats st;
        ComplexMatrix k1(y.rows(), y.cols()), k2 = k1, k3 = k1, k4 = k1, k5 = k1,
                      k6 = k1, k7 = k1, k8 = k1, k9 = k1, k10 = k1, k11 = k1,
                      k12 = k1, yt = k1, ynew = k1;
        double err_old = 1e-4;
        f(t, y, k1);
        while (dir * (t1 - t) > 0.0) {
            if (dir * (t + h) > dir * t1) h = t1 - t;
            if (std::abs(h) < opt.h_min_factor * span)
                throw DomainError("Dop853: step size underflow");
            if (++st.steps > opt.max_steps)
                throw DomainError("Dop853: step budget exhausted");

            yt = y + h * a21 * k1;
            f(t + c2 * h, yt, k2);
            yt = y + h * (a31 * k1 + a32 * k2);
            f(t + c3 * h, yt, k3);
            yt = y + h * (a41 * k1 + a43 * k3);
            f(t + c4 * h, yt, k4);
            yt = y + h * (a51 * k1 + a53 * k3 + a54 * k4);
            f(t + c5 * h, yt, k5);
            yt = y + h * (a61 * k1 + a64 * k4 + a65 * k5);
            f(t + c6 * h, yt, k6);
            yt = y + h * (a71 * k1 + a74 * k4 + a75 * k5 + a76 * k6);
            f(t + c7 * h, yt, k7);
            yt = y + h * (a81 * k1 + a84 * k4 + a85 * k5 + a86 * k6 + a87 * k7);
            f(t + c8 * h, yt, k8);
            yt = y + h * (a91 * k1 + a94 * k4 + a95 * k5 + a96 * k6 + a97 * k7 + a98 * k8);
            f(t + c9 * h, yt, k9);
            yt = y + h * (a101 * k1 + a104 * k4 + a105 * k5 + a106 * k6 + a107 * k7 +
                          a108 * k8 + a109 * k9);
            f(t + c10 * h, yt, k10);
            yt = y + h * (a111 * k1 + a114 * k4 + a115 * k5 + a116 * k6 + a117 * k7 +
                          a118 * k8 + a119 * k9 + a1110 * k10);
            f(t + c11 * h, yt, k11);
            yt = y + h * (a121 * k1 + a124 * k4 + a125 * k5 + a126 * k6 + a127 * k7 +
                          a128 * k8 + a129 * k9 + a1210 * k10 + a1211 * k11);
            f(t + h, yt, k12);

            ComplexMatrix dy = b1 * k1 + b6 * k6 + b7 * k7 + b8 * k8 + b9 * k9 +
                               b10 * k10 + b11 * k11 + b12 * k12;
            ynew = y + h * dy;

            ComplexMatrix err5 = dy - (e51 * k1 + e56 * k6 + e57 * k7 + e58 * k8 +
                                       e59 * k9 + e510 * k10 + e511 * k11 + e512 * k12);
            ComplexMatrix err3 = dy - (e31 * k1 + e32 * k9 + e33 * k12);

            double n5 = 0.0, n3 = 0.0;
            long cnt = 0;
            for (Eigen::Index c = 0; c < y.cols(); ++c)
                for (Eigen::Index r = 0; r < y.rows(); ++r) {
                    const double sc = opt.atol + opt.rtol * std::max(std::abs(y(r, c)),
                                                                     std::abs(ynew(r, c)));
                    const double d5 = std::abs(err5(r, c)) / sc;
                    const double d3 = std::abs(err3(r, c)) / sc;
                    n5 += d5 * d5;
                    n3 += d3 * d3;
                    ++cnt;
                }
            n5 = std::sqrt(n5 / cnt);
            n3 = std::sqrt(n3 / cnt);
            double denom = n5 * n5 + 0.01 * n3 * n3;
            double err = std::abs(h) * n5 * n5 / std::sqrt(std::max(denom, 1e-300));

            if (err <= 1.0) {
                t += h;
                y.swap(ynew);
                f(t, y, k1);
                const double fac = 0.9 * std::pow(err, -0.7 / 8.0) *
                                   std::pow(err_old, 0.08);
                h *= std::min(6.0, std::max(0.2, fac));
                err_old = std::max(err, 1e-4);
            } else {
                ++st.rejected;
                h *= std::max(0.2, 0.9 * std::pow(err, -1.0 / 8.0));
            }
        }
        return st;
    }
};

/// The linear system dF/dz = (i u - A / (2 pi i z)) F.
struct LinearSystemSpec {
    RealVector u;         // real diagonal; ties allowed if the residue is
                          // diagonal within each tie group
    ComplexMatrix a;      // Hermitian residue

    int dim() const { return static_cast<int>(u.size()); }
};

struct OracleConfig {
    double radius = 0.0;        // matching radius R; 0 -> 40 / min distinct gap
    double r0 = 1e-2;           // Frobenius initialization radius at z = 0
    double rtol = 1e-10;
    double atol = 1e-12;
    int series_terms = 18;      // asymptotic series order at infinity
    int frobenius_terms = 48;
    double overlap_height = 0.0;  // |z| of the Stokes extraction point; 0 -> auto
    double tie_tol = 1e-12;       // u entries closer than this count as equal
};

namespace detail {

inline void validate_spec(const LinearSystemSpec& spec, double tie_tol) {
    require_hermitian(spec.a);
    if (spec.u.size() != spec.a.rows())
        throw StructuralError("oracle: u and A dimension mismatch");
    for (int i = 0; i < spec.dim(); ++i)
        for (int j = 0; j < spec.dim(); ++j)
            if (i != j && std::abs(spec.u[i] - spec.u[j]) <= tie_tol &&
                std::abs(spec.a(i, j)) > 1e-12)
                throw StructuralError(
                    "oracle: residue couples a degenerate u-group off-diagonally");
}

inline double min_distinct_gap(const RealVector& u, double tie_tol) {
    double g = std::numeric_limits<double>::infinity();
    for (int i = 0; i < u.size(); ++i)
        for (int j = i + 1; j < u.size(); ++j) {
            const double d = std::abs(u[i] - u[j]);
            if (d > tie_tol) g = std::min(g, d);
        }
    return std::isfinite(g) ? g : 1.0;
}

}  // namespace detail

/// Coefficients H_m of the formal solution H(z) z^{-[A]/2pi i} e^{i u z}:
///   (u_i - u_j) H_{m+1, ij} = i [ m H_m + (H_m [A] - A H_m)/(2 pi i) ]_{ij}
/// for separated u_i, u_j; entries inside a tie group follow from the
/// next-order consistency condition.
inline std::vector<ComplexMatrix> asymptotic_series(const LinearSystemSpec& spec,
                                                    int terms, double tie_tol = 1e-12) {
    const int n = spec.dim();
    const ComplexMatrix& a = spec.a;
    const RealVector& u = spec.u;
    ComplexMatrix diag_a = a.diagonal().asDiagonal();
    std::vector<ComplexMatrix> h;
    h.push_back(ComplexMatrix::Identity(n, n));
    for (int m = 0; m < terms; ++m) {
        const ComplexMatrix& hm = h[m];
        ComplexMatrix g = double(m) * hm + (hm * diag_a - a * hm) / kTwoPiI;
        ComplexMatrix hn = ComplexMatrix::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (std::abs(u[i] - u[j]) > tie_tol)
                    hn(i, j) = kImag * g(i, j) / (u[i] - u[j]);
        const double mm = m + 1.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (std::abs(u[i] - u[j]) <= tie_tol) {
                    Complex acc(0.0, 0.0);
                    for (int l = 0; l < n; ++l)
                        if (std::abs(u[l] - u[i]) > tie_tol) acc += a(i, l) * hn(l, j);
                    hn(i, j) = acc / (kTwoPiI * mm + a(j, j) - a(i, i));
                }
        h.push_back(std::move(hn));
    }
    return h;
}

/// Canonical solution value at z = R e^{i arg}, from the truncated formal
/// series with the fixed log branch (arg passed explicitly). Matching rays
/// arg = 0 (Sect_+) and arg = -pi (Sect_-) keep every dominance factor
/// |e^{i(u_k - u_j) z}| at exactly 1, so the truncation error enters the
/// transition matrices unamplified.
inline ComplexMatrix canonical_at_match(const LinearSystemSpec& spec, double radius,
                                        double arg, const OracleConfig& cfg) {
    const std::vector<ComplexMatrix> h =
        asymptotic_series(spec, cfg.series_terms, cfg.tie_tol);
    const Complex z = radius * std::exp(Complex(0.0, arg));
    const int n = spec.dim();
    ComplexMatrix w = ComplexMatrix::Zero(n, n);
    Complex zp(1.0, 0.0);
    for (const auto& hm : h) {
        w += hm / zp;
        zp *= z;
    }
    const Complex logz(std::log(radius), arg);
    ComplexVector d(n);
    for (int j = 0; j < n; ++j)
        d[j] = std::exp(-spec.a(j, j).real() * logz / kTwoPiI +
                        kImag * spec.u[j] * z);
    return w * d.asDiagonal();
}

/// Frobenius solution at z -> 0: F0(z) = W(z) z^{-A/2pi i} with W entire,
/// W(0) = I; evaluated at z = r0 on the positive real axis.
inline ComplexMatrix solution_at_zero_value(const LinearSystemSpec& spec, double r0,
                                            int terms) {
    const int n = spec.dim();
    EigenDesc ed = hermitian_eigen_desc(spec.a);
    const ComplexMatrix uhat =
        ed.vectors.adjoint() * spec.u.asDiagonal().toDenseMatrix().cast<Complex>() *
        ed.vectors;
    ComplexMatrix w = ComplexMatrix::Identity(n, n);
    ComplexMatrix coef = ComplexMatrix::Identity(n, n);
    double rp = 1.0;
    for (int m = 1; m <= terms; ++m) {
        const ComplexMatrix rhs = kImag * (uhat * coef);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                coef(i, j) = rhs(i, j) / (double(m) + (ed.values[i] - ed.values[j]) / kTwoPiI);
        rp *= r0;
        w += coef * rp;
        if (coef.norm() * rp < 1e-17 && m > 4) break;
    }
    ComplexVector zp(n);
    for (int j = 0; j < n; ++j)
        zp[j] = std::exp(-ed.values[j] * std::log(r0) / kTwoPiI);
    return ed.vectors * w * zp.asDiagonal() * ed.vectors.adjoint();
}

/// Integrates F along the straight segment z_from -> z_to.
inline ComplexMatrix integrate_linear(const LinearSystemSpec& spec, Complex z_from,
                                      Complex z_to, const ComplexMatrix& f_init,
                                      const OracleConfig& cfg = {}) {
    detail::validate_spec(spec, cfg.tie_tol);
    if (f_init.rows() != spec.dim() || f_init.cols() != spec.dim())
        throw StructuralError("integrate_linear: state dimension mismatch");
    // reject paths passing within 1e-9 of the singular point
    const Complex d = z_to - z_from;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return f_init;
    const double tproj = std::max(0.0, std::min(1.0, -(z_from.real() * d.real() +
                                                       z_from.imag() * d.imag()) / len2));
    if (std::abs(z_from + tproj * d) < 1e-9)
        throw DomainError("integrate_linear: path passes through the origin");

    const int n = spec.dim();
    ComplexMatrix iu = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) iu(j, j) = kImag * spec.u[j];
    const ComplexMatrix& a = spec.a;
    Dop853::Rhs rhs = [&](double t, const ComplexMatrix& f, ComplexMatrix& out) {
        const Complex z = z_from + t * d;
        out = d * (iu * f - (a * f) / (kTwoPiI * z));
    };
    ComplexMatrix f = f_init;
    Dop853::Options opt;
    opt.rtol = cfg.rtol;
    opt.atol = cfg.atol;
    opt.h_init = std::min(0.1, 1.0 / (1.0 + std::abs(d) * spec.u.cwiseAbs().maxCoeff()));
    Dop853::integrate(rhs, 0.0, 1.0, f, opt);
    return f;
}

/// Integrates along a polyline.
inline ComplexMatrix integrate_path(const LinearSystemSpec& spec,
                                    const std::vector<Complex>& waypoints,
                                    const ComplexMatrix& f_init,
                                    const OracleConfig& cfg) {
    ComplexMatrix f = f_init;
    for (size_t s = 0; s + 1 < waypoints.size(); ++s)
        f = integrate_linear(spec, waypoints[s], waypoints[s + 1], f, cfg);
    return f;
}

inline double matching_radius(const LinearSystemSpec& spec, const OracleConfig& cfg) {
    if (cfg.radius > 0.0) return cfg.radius;
    return 40.0 / detail::min_distinct_gap(spec.u, cfg.tie_tol);
}

/// Canonical solution evaluated at z (reachable from the matching ray by a
/// straight segment staying inside the sector).
inline ComplexMatrix canonical_plus_at(const LinearSystemSpec& spec, Complex z,
                                       const OracleConfig& cfg) {
    detail::validate_spec(spec, cfg.tie_tol);
    const double r = matching_radius(spec, cfg);
    return integrate_linear(spec, Complex(r, 0.0), z,
                            canonical_at_match(spec, r, 0.0, cfg), cfg);
}

inline ComplexMatrix canonical_minus_at(const LinearSystemSpec& spec, Complex z,
                                        const OracleConfig& cfg) {
    detail::validate_spec(spec, cfg.tie_tol);
    const double r = matching_radius(spec, cfg);
    return integrate_linear(spec, Complex(-r, 0.0), z,
                            canonical_at_match(spec, r, -kPi, cfg), cfg);
}

struct ConnectionResult {
    ComplexMatrix c;           // F_+(z)^{-1} F_0(z), constant in z
    double unitarity_residual;
};

/// Connection matrix between the canonical solution at infinity (Sect_+) and
/// the holomorphic-normalized solution at 0, evaluated on the positive axis.
inline ConnectionResult connection_numeric(const LinearSystemSpec& spec,
                                           const OracleConfig& cfg = {}) {
    detail::validate_spec(spec, cfg.tie_tol);
    const double r = matching_radius(spec, cfg);
    const double ze = std::min(1.0, 0.5 * r);
    const ComplexMatrix fp = integrate_linear(
        spec, Complex(r, 0.0), Complex(ze, 0.0), canonical_at_match(spec, r, 0.0, cfg), cfg);
    const ComplexMatrix f0 = integrate_linear(
        spec, Complex(cfg.r0, 0.0), Complex(ze, 0.0),
        solution_at_zero_value(spec, cfg.r0, cfg.frobenius_terms), cfg);
    ConnectionResult out;
    out.c = fp.partialPivLu().solve(f0);
    out.unitarity_residual = unitarity_residual(out.c);
    return out;
}

struct StokesNumericResult {
    ComplexMatrix s_plus;          // e^{[A]/2} F_-(z_c)^{-1} F_+(z_c)
    double triangularity_residual; // ||below-diagonal|| / ||S_+||
};

inline double default_overlap_height(const LinearSystemSpec& spec,
                                     const OracleConfig& cfg) {
    if (cfg.overlap_height > 0.0) return cfg.overlap_height;
    const double spread = spec.u.maxCoeff() - spec.u.minCoeff();
    return std::min(2.0, 8.0 / std::max(spread, 1e-9));
}

/// Stokes matrix S_+ from the transition between the two canonical solutions
/// on the overlap ray arg z = -pi/2. The extraction point sits at modest
/// height so the conditioning factor e^{(u_n - u_1) |z_c|} stays bounded;
/// triangularity of the result is emergent, not imposed.
inline StokesNumericResult stokes_numeric(const LinearSystemSpec& spec,
                                          const OracleConfig& cfg = {}) {
    detail::validate_spec(spec, cfg.tie_tol);
    if (!strictly_increasing(spec.u, cfg.tie_tol))
        throw StructuralError("stokes_numeric: u must lie in the chamber U_id");
    const double r = matching_radius(spec, cfg);
    const Complex zc(0.0, -default_overlap_height(spec, cfg));
    const ComplexMatrix fp = integrate_linear(
        spec, Complex(r, 0.0), zc, canonical_at_match(spec, r, 0.0, cfg), cfg);
    const ComplexMatrix fm = integrate_linear(
        spec, Complex(-r, 0.0), zc, canonical_at_match(spec, r, -kPi, cfg), cfg);
    const int n = spec.dim();
    ComplexVector e2(n);
    for (int j = 0; j < n; ++j) e2[j] = std::exp(spec.a(j, j).real() / 2.0);
    StokesNumericResult out;
    out.s_plus = e2.asDiagonal() * fm.partialPivLu().solve(fp);
    double below = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) below += std::norm(out.s_plus(i, j));
    out.triangularity_residual = std::sqrt(below) / out.s_plus.norm();
    return out;
}

/// Independent S_- through the continued solution: F_- evaluated at
/// arg z = -3pi/2 against F_+ at arg z = +pi/2 (same point upstairs,
/// one sheet apart): S_- = F_+(i h)^{-1} F_-(i h e^{-2 pi i}) e^{-[A]/2}.
inline ComplexMatrix stokes_minus_numeric(const LinearSystemSpec& spec,
                                          const OracleConfig& cfg = {}) {
    detail::validate_spec(spec, cfg.tie_tol);
    if (!strictly_increasing(spec.u, cfg.tie_tol))
        throw StructuralError("stokes_minus_numeric: u must lie in the chamber U_id");
    const double r = matching_radius(spec, cfg);
    const Complex zc(0.0, default_overlap_height(spec, cfg));
    const ComplexMatrix fp = integrate_linear(
        spec, Complex(r, 0.0), zc, canonical_at_match(spec, r, 0.0, cfg), cfg);
    const ComplexMatrix fm = integrate_linear(
        spec, Complex(-r, 0.0), zc, canonical_at_match(spec, r, -kPi, cfg), cfg);
    const int n = spec.dim();
    ComplexVector e2(n);
    for (int j = 0; j < n; ++j) e2[j] = std::exp(-spec.a(j, j).real() / 2.0);
    return fp.partialPivLu().solve(fm) * e2.asDiagonal();
}

}  // namespace gtstokes

#endif  // GTSTOKES_ODE_HPP
