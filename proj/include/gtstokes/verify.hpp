#ifndef GTSTOKES_VERIFY_HPP
#define GTSTOKES_VERIFY_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gtstokes/am.hpp"
#include "gtstokes/caterpillar.hpp"
#include "gtstokes/gt.hpp"
#include "gtstokes/io.hpp"
#include "gtstokes/iso.hpp"
#include "gtstokes/ode.hpp"
#include "gtstokes/sampling.hpp"

namespace gtstokes {

struct RunConfig {
    std::uint64_t seed = 7;
    int n = 4;
    int sample_count = 50;
    int jobs = 1;
    double tol_unitary = 1e-9;
    double tol_rh = 1e-8;
    double gap_tol = -1.0;  // negative: per-matrix default
    OracleConfig oracle;
};

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double seconds = 0.0;
};

struct Report {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    json to_json() const {
        json out;
        out["suite"] = suite;
        json arr = json::array();
        for (const auto& c : checks)
            arr.push_back({{"name", c.name},
                           {"residual", c.residual},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass},
                           {"seconds", c.seconds}});
        out["checks"] = arr;
        out["pass"] = all_pass();
        return out;
    }

    std::string to_csv() const {
        std::ostringstream os;
        os << "name,residual,tolerance,pass,seconds\n";
        for (const auto& c : checks)
            os << c.name << "," << format_g17(c.residual) << "," << format_g17(c.tolerance)
               << "," << (c.pass ? 1 : 0) << "," << format_g17(c.seconds) << "\n";
        return os.str();
    }
};

namespace detail {

/// Runs fn(i) for i in [0, count) on `jobs` threads; returns the max of the
/// per-index residuals. Result is independent of the thread count.
inline double parallel_max(int count, int jobs,
                           const std::function<double(int)>& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        double m = 0.0;
        for (int i = 0; i < count; ++i) m = std::max(m, fn(i));
        return m;
    }
    std::atomic<int> next{0};
    std::vector<double> maxima(jobs, 0.0);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&, t] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                maxima[t] = std::max(maxima[t], fn(i));
        });
    for (auto& th : pool) th.join();
    double m = 0.0;
    for (double v : maxima) m = std::max(m, v);
    return m;
}

class Timer {
public:
    Timer() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

inline void add_check(Report& rep, const std::string& name, double residual,
                      double tolerance, double seconds) {
    rep.checks.push_back({name, residual, tolerance, residual <= tolerance, seconds});
}

/// Max angle distance on the circle.
inline double angle_distance(double a, double b) {
    double d = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, kTwoPi - d);
}

}  // namespace detail

/// ------------------------------ gt suite ---------------------------------
inline Report verify_gt(const RunConfig& cfg) {
    Report rep{"gt", {}};
    const int n = cfg.n;
    const int m = cfg.sample_count;

    {
        detail::Timer t;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, i, n);
            return std::max(0.0, -cone_gap(gt_map(a)));
        });
        detail::add_check(rep, "interlacing", r, 1e-10, t.seconds());
    }
    {
        detail::Timer t;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 1000 + i, n);
            double worst = 0.0;
            for (int k = 1; k <= n; ++k) {
                const ComplexMatrix p = diagonalizer_P(a, k);
                worst = std::max(worst, unitarity_residual(p));
                for (int j = 0; j < k; ++j) {
                    const Complex pk = p(k - 1, j);
                    worst = std::max(worst, std::abs(pk.imag()));
                    if (pk.real() < 0.0) worst = std::max(worst, -pk.real());
                }
                // block conjugation must diagonalize the leading block
                const ComplexMatrix ak = p.adjoint() * a * p;
                const SpectrumTable tt = gt_map(a);
                worst = std::max(worst, (ak.topLeftCorner(k, k) -
                                         ComplexMatrix(tt.row(k).cast<Complex>().asDiagonal()))
                                            .norm());
            }
            return worst;
        });
        detail::add_check(rep, "diagonalizer_unitary_positive", r, 1e-9, t.seconds());
    }
    {
        detail::Timer t;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 2000 + i, n);
            double worst = 0.0;
            for (int k = 2; k <= n; ++k)
                worst = std::max(worst,
                                 (diagonalizer_P(a, k) - diagonalizer_P_minor(a, k)).norm());
            for (int k = 1; k <= n - 1; ++k)
                worst = std::max(worst,
                                 (gt_a_coeffs(a, k) - gt_a_coeffs_minor(a, k)).norm());
            return worst / (1.0 + a.norm());
        });
        detail::add_check(rep, "minor_vs_eigen_paths", r, 1e-8, t.seconds());
    }
    {
        detail::Timer t;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 3000 + i, n);
            const SpectrumTable tt = gt_map(a);
            double worst = 0.0;
            for (int k = 1; k <= n - 1; ++k) {
                const ComplexVector av = gt_a_coeffs(a, k);
                for (int j = 0; j < k; ++j)
                    worst = std::max(worst, std::abs(std::norm(av[j]) -
                                                     a_modulus_sq(tt, k, j)));
                for (int j = 0; j < k + 1; ++j)
                    worst = std::max(worst, std::abs(normalizer_N(tt, k + 1, j) -
                                                     normalizer_N_sum(tt, k + 1, j)));
            }
            return worst;
        });
        detail::add_check(rep, "modulus_and_normalizer_identities", r, 1e-8, t.seconds());
    }
    {
        detail::Timer t;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 4000 + i, n);
            const TorusElement th = sample_torus(cfg.seed, 4000 + i, n);
            const GTCoordinates before = gt_coordinates(a);
            const ComplexMatrix b = thimm_act_full(a, th);
            const GTCoordinates after = gt_coordinates(b);
            double worst = 0.0;
            for (int k = 1; k <= n; ++k)
                worst = std::max(worst,
                                 (before.actions.row(k) - after.actions.row(k))
                                     .cwiseAbs()
                                     .maxCoeff());
            for (int k = 1; k <= n - 1; ++k)
                for (int j = 0; j < k; ++j)
                    worst = std::max(worst, detail::angle_distance(
                                                after.angles[k - 1][j],
                                                before.angles[k - 1][j] + th[k - 1][j]));
            return worst;
        });
        detail::add_check(rep, "thimm_action_angle_shift", r, 1e-8, t.seconds());
    }
    {
        detail::Timer t;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 5000 + i, n);
            for (int k1 = 2; k1 <= n; ++k1) {
                const double res =
                    (diagonalizer_P(a, k1) - diagonalizer_P(a, k1 - 1) * ladder_L(a, k1))
                        .norm();
                if (res > 1e-9) return res;
            }
            return (rebuild_from_coordinates(gt_coordinates(a)) - a).norm();
        });
        detail::add_check(rep, "ladder_and_reconstruction", r, 1e-7, t.seconds());
    }
    {
        detail::Timer t;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 6000 + i, n);
            const TorusElement th = sample_torus(cfg.seed, 6100 + i, n);
            // level-order commutativity of the gauge map
            ComplexMatrix fwd = a, bwd = a;
            for (int k = 1; k <= n - 1; ++k) fwd = thimm_act(fwd, k, th[k - 1]);
            for (int k = n - 1; k >= 1; --k) bwd = thimm_act(bwd, k, th[k - 1]);
            return (fwd - bwd).norm();
        });
        detail::add_check(rep, "thimm_level_commutativity", r, 1e-9, t.seconds());
    }
    return rep;
}

/// -------------------------- caterpillar suite ----------------------------
inline Report verify_caterpillar(const RunConfig& cfg) {
    Report rep{"caterpillar", {}};
    const int n = cfg.n;
    const int m = cfg.sample_count;

    {
        detail::Timer t;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, i, n);
            double worst = unitarity_residual(connection_product(a));
            for (int k1 = 2; k1 <= n; ++k1)
                worst = std::max(worst, unitarity_residual(normalized_connection(a, k1)));
            return worst;
        });
        detail::add_check(rep, "connection_unitarity", r, 1e-9, t.seconds());
    }
    {
        detail::Timer t;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 1000 + i, n);
            const CaterpillarResult res = rh_caterpillar(a);
            const SpectrumTable ta = gt_map(a);
            const SpectrumTable tn = gt_map(res.nu);
            double worst = 0.0;
            for (int k = 1; k <= n; ++k)
                for (int j = 0; j < k; ++j)
                    worst = std::max(worst, std::abs(std::log(tn.row(k)[j]) - ta.row(k)[j]));
            return worst;
        });
        detail::add_check(rep, "gt_intertwining", r, 1e-8, t.seconds());
    }
    {
        detail::Timer t;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 2000 + i, n);
            const TorusElement th = sample_torus(cfg.seed, 2000 + i, n);
            const ComplexMatrix lhs = rh_caterpillar(thimm_act_full(a, th)).nu;
            const ComplexMatrix rhs = thimm_act_full(rh_caterpillar(a).nu, th);
            return (lhs - rhs).norm();
        });
        detail::add_check(rep, "thimm_equivariance", r, 1e-8, t.seconds());
    }
    {
        detail::Timer t;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 3000 + i, std::min(n, 5));
            const CaterpillarResult res = rh_caterpillar(a);
            const StokesSubdiagonals sd = stokes_subdiag(a);
            double worst = res.diag_residual;
            for (int k = 0; k + 1 < std::min(n, 5); ++k) {
                worst = std::max(worst,
                                 std::abs(res.stokes.s_plus(k, k + 1) - sd.upper[k]));
                worst = std::max(worst, std::abs(std::conj(sd.upper[k]) - sd.lower[k]));
            }
            return worst;
        });
        detail::add_check(rep, "subdiagonal_formulas", r, 1e-8, t.seconds());
    }
    {
        detail::Timer t;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 4000 + i, n);
            const TorusElement th = sample_torus(cfg.seed, 4000 + i, n);
            const ComplexMatrix b = thimm_act_full(a, th);
            double worst = 0.0;
            for (int lvl = 2; lvl <= n; ++lvl) {
                const DLRFactors f = decompose_DLR(a, lvl);
                worst = std::max(worst, (f.reconstruct() -
                                         normalized_connection(a, lvl)).norm());
                const DLRFactors g = decompose_DLR(b, lvl);
                worst = std::max(worst, (f.r - g.r).norm());
                for (int j = 0; j < n; ++j) {
                    worst = std::max(worst, std::abs(std::abs(f.d_left[j]) -
                                                     std::abs(g.d_left[j])));
                    worst = std::max(worst, std::abs(std::abs(f.d_right[j]) -
                                                     std::abs(g.d_right[j])));
                }
            }
            return worst;
        });
        detail::add_check(rep, "dlr_decomposition", r, 1e-9, t.seconds());
    }
    {
        detail::Timer t;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 5000 + i, n);
            const CaterpillarResult res = rh_caterpillar(a);
            return verify_monodromy(res.c_tilde, a, res.stokes);
        });
        detail::add_check(rep, "caterpillar_monodromy", r, 1e-8, t.seconds());
    }
    return rep;
}

/// ------------------------------ am suite ---------------------------------
inline Report verify_am(const RunConfig& cfg) {
    Report rep{"am", {}};
    const int m = cfg.sample_count;

    {
        detail::Timer t;
        double worst = 0.0;
        for (int n = 2; n <= std::max(2, cfg.n); ++n) {
            worst = std::max(worst, detail::parallel_max(m, cfg.jobs, [&](int i) {
                        const ComplexMatrix a = sample_herm0(cfg.seed, 10000 * n + i, n);
                        double w = 0.0;
                        for (int k = 1; k <= n; ++k)
                            w = std::max(w, unitarity_residual(psi_factor(a, k)));
                        return w;
                    }));
        }
        detail::add_check(rep, "psi_unitarity", worst, 1e-8, t.seconds());
    }
    {
        detail::Timer t;
        const int n = cfg.n;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 20000 + i, n);
            const ComplexMatrix g = gamma_am(a).gamma;
            const SpectrumTable ta = gt_map(a);
            const SpectrumTable tg = gt_map(g);
            double worst = 0.0;
            for (int k = 1; k <= n; ++k)
                for (int j = 0; j < k; ++j)
                    worst = std::max(worst, std::abs(std::log(tg.row(k)[j]) - ta.row(k)[j]));
            return worst;
        });
        detail::add_check(rep, "gt_intertwining", r, 1e-8, t.seconds());
    }
    {
        detail::Timer t;
        const int n = cfg.n;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 30000 + i, n, true);
            const ComplexMatrix g = gamma_am(a).gamma;
            double worst = g.imag().norm();
            for (int k = 1; k <= n - 1; ++k) {
                const ComplexVector aa = gt_a_coeffs(a, k);
                const ComplexVector ag = gt_a_coeffs(g, k);
                for (int j = 0; j < k; ++j) {
                    if (aa[j].real() * ag[j].real() < 0.0) worst = std::max(worst, 1.0);
                    worst = std::max(worst, std::abs(ag[j].imag()));
                }
            }
            return worst;
        });
        detail::add_check(rep, "component_preservation", r, 1e-8, t.seconds());
    }
    {
        detail::Timer t;
        const int n = cfg.n;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 40000 + i, n);
            const TorusElement th = sample_torus(cfg.seed, 40000 + i, n);
            return (gamma_am(thimm_act_full(a, th)).gamma -
                    thimm_act_full(gamma_am(a).gamma, th))
                .norm();
        });
        detail::add_check(rep, "thimm_equivariance", r, 1e-8, t.seconds());
    }
    {
        detail::Timer t;
        const int n = cfg.n;
        double r = detail::parallel_max(m, cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 50000 + i, n);
            return (gamma_am(a).gamma - am_via_rh(a)).norm();
        });
        detail::add_check(rep, "two_path_identity", r, 1e-8, t.seconds());
    }
    {
        detail::Timer t;
        double r = detail::parallel_max(std::max(m, 100), cfg.jobs, [&](int i) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 60000 + i, 2);
            const ComplexMatrix g = gamma_am(a).gamma;
            const ComplexMatrix g2 =
                gamma_am_2x2(a(0, 0).real(), a(0, 1), a(1, 1).real());
            return (g - g2).norm();
        });
        detail::add_check(rep, "closed_form_2x2", r, 1e-10, t.seconds());
    }
    return rep;
}

/// -------------------------- oracle-xcheck suite --------------------------
inline Report verify_oracle_xcheck(const RunConfig& cfg) {
    Report rep{"oracle-xcheck", {}};
    const int m = std::min(cfg.sample_count, 4);

    double conn_unit = 0.0, monodromy = 0.0, triang = 0.0, prop_conn = 0.0,
           stability = 0.0, sminus = 0.0;
    detail::Timer t_all;
    for (int n : {2, 3}) {
        RealVector u(n);
        if (n == 2) u << 0.0, 1.0;
        else u << 0.0, 1.0, 3.0;
        for (int i = 0; i < m; ++i) {
            const ComplexMatrix a = sample_herm0_norm(cfg.seed, 100 * n + i, n, 1.5);
            LinearSystemSpec spec{u, a};
            const ConnectionResult c = connection_numeric(spec, cfg.oracle);
            conn_unit = std::max(conn_unit, c.unitarity_residual);
            const StokesNumericResult s = stokes_numeric(spec, cfg.oracle);
            triang = std::max(triang, s.triangularity_residual);
            StokesPair pair{s.s_plus, s.s_plus.adjoint()};
            monodromy = std::max(monodromy, verify_monodromy(c.c, a, pair));
            // S_- recomputed through the continued minus solution
            const ComplexMatrix sm = stokes_minus_numeric(spec, cfg.oracle);
            sminus = std::max(sminus, (sm - s.s_plus.adjoint()).norm());
            // self-consistency: doubled radius, tightened Frobenius start
            OracleConfig alt = cfg.oracle;
            alt.radius = 2.0 * matching_radius(spec, cfg.oracle);
            alt.r0 = cfg.oracle.r0 / 2.0;
            const StokesNumericResult s2 = stokes_numeric(spec, alt);
            stability = std::max(stability, (s2.s_plus - s.s_plus).norm());

            // Prop 3.10 route: oracle connection of each E_k subsystem
            for (int k1 = 2; k1 <= n; ++k1) {
                const ComplexMatrix p = diagonalizer_P(a, k1 - 1);
                const ComplexMatrix ak = p.adjoint() * a * p;
                RealVector uek = RealVector::Zero(n);
                uek[k1 - 1] = 1.0;
                LinearSystemSpec sub{uek, delta_block(ak, k1)};
                const ConnectionResult ck = connection_numeric(sub, cfg.oracle);
                prop_conn = std::max(
                    prop_conn,
                    (ck.c * ladder_L(a, k1) - normalized_connection(a, k1)).norm());
            }
        }
    }
    const double dt = t_all.seconds() / 6.0;
    detail::add_check(rep, "connection_unitarity", conn_unit, 1e-5, dt);
    detail::add_check(rep, "monodromy_relation", monodromy, 1e-5, dt);
    detail::add_check(rep, "stokes_triangularity", triang, 1e-5, dt);
    detail::add_check(rep, "normalized_connection_vs_oracle", prop_conn, 1e-5, dt);
    detail::add_check(rep, "radius_doubling_stability", stability, 1e-5, dt);
    detail::add_check(rep, "stokes_minus_vs_adjoint", sminus, 1e-4, dt);
    return rep;
}

/// ------------------------------ iso suite --------------------------------
inline Report verify_iso(const RunConfig& cfg) {
    Report rep{"iso", {}};

    {
        detail::Timer t;
        double cons = 0.0, drift = 0.0;
        const int n = 3;
        for (int i = 0; i < std::min(cfg.sample_count, 8); ++i) {
            const ComplexMatrix phi0 = sample_herm0_norm(cfg.seed, 300 + i, n, 1.2);
            RealVector u0(n), u1(n);
            u0 << 0.0, 1.0, 2.5;
            u1 << 0.4, 1.6, 3.1;
            FlowDiagnostics d;
            const FlowState end = iso_flow({u0, phi0}, u1, {}, &d);
            drift = std::max(drift, d.hermiticity_drift);
            cons = std::max(cons, (hermitian_eigen_desc(end.phi).values -
                                   hermitian_eigen_desc(phi0).values)
                                      .cwiseAbs()
                                      .maxCoeff());
            cons = std::max(cons,
                            (end.phi.diagonal() - phi0.diagonal()).cwiseAbs().maxCoeff());
        }
        detail::add_check(rep, "flow_conservation", cons, 1e-8, t.seconds());
        detail::add_check(rep, "hermiticity_drift", drift, 1e-9, t.seconds());
    }
    {
        detail::Timer t;
        // finite-difference check of the component equations
        const int n = 3;
        const ComplexMatrix phi = sample_herm0(cfg.seed, 350, n);
        RealVector u(n);
        u << 0.0, 0.9, 2.2;
        double worst = 0.0;
        const double h = 1e-6;
        for (int k = 0; k < n; ++k) {
            RealVector up = u, um = u;
            up[k] += h;
            um[k] -= h;
            FlowState sp = iso_flow({u, phi}, up);
            FlowState sm = iso_flow({u, phi}, um);
            const ComplexMatrix fd = (sp.phi - sm.phi) / (2.0 * h);
            worst = std::max(worst, (fd - iso_rhs(u, phi, k)).norm());
            // diagonal derivatives vanish
            worst = std::max(worst, iso_rhs(u, phi, k).diagonal().cwiseAbs().maxCoeff());
        }
        detail::add_check(rep, "rhs_finite_difference", worst, 1e-6, t.seconds());
    }
    {
        detail::Timer t;
        // Stokes invariance along a unit path at n = 2
        const ComplexMatrix phi0 = sample_herm0_norm(cfg.seed, 360, 2, 1.0);
        RealVector u0(2), u1(2);
        u0 << 0.0, 1.0;
        u1 << 0.5, 2.2;
        LinearSystemSpec before{u0, phi0};
        const FlowState end = iso_flow({u0, phi0}, u1);
        LinearSystemSpec after{u1, end.phi};
        const double d = (stokes_numeric(before, cfg.oracle).s_plus -
                          stokes_numeric(after, cfg.oracle).s_plus)
                             .norm();
        detail::add_check(rep, "stokes_invariance", d, 1e-4, t.seconds());
    }
    {
        detail::Timer t;
        double worst = 0.0;
        for (int n : {2, 3, 4}) {
            const ComplexMatrix a = sample_herm0(cfg.seed, 400 + n, n);
            RealVector u(n);
            for (int k = 0; k < n; ++k) u[k] = k == 0 ? 0.0 : u[k - 1] + 1.0 + 0.7 * k;
            const ComplexMatrix p1 = psi_u(u, a);
            const ComplexMatrix p2 = psi_u_torus(u, a);
            worst = std::max(worst, (p1 - p2).norm());
            const SpectrumTable ta = gt_map(a), tp = gt_map(p1);
            for (int k = 1; k <= n; ++k)
                worst = std::max(worst,
                                 (ta.row(k) - tp.row(k)).cwiseAbs().maxCoeff());
        }
        detail::add_check(rep, "psi_u_two_paths", worst, 1e-8, t.seconds());
    }
    {
        detail::Timer t;
        // boundary value round trip at n = 2, ratio 1e3
        const ComplexMatrix phi0 = sample_herm0_norm(cfg.seed, 420, 2, 1.0);
        RealVector ufar(2);
        ufar << 0.0, 1000.0;
        const ComplexMatrix g = boundary_dressing(ufar, phi0);
        ComplexMatrix phi_far = g * phi0 * g.adjoint();
        phi_far = ((phi_far + phi_far.adjoint()) / 2.0).eval();
        RealVector unear(2);
        unear << 0.0, 800.0;
        const FlowState moved = iso_flow({ufar, phi_far}, unear);
        const ComplexMatrix est = boundary_fit({moved});
        detail::add_check(rep, "boundary_fit_roundtrip", (est - phi0).norm(), 1e-3,
                          t.seconds());
    }
    return rep;
}

/// ---------------------------- mainthm suite ------------------------------
inline Report verify_mainthm_suite(const RunConfig& cfg) {
    Report rep{"mainthm", {}};
    detail::Timer t;
    double slope_worst = -std::numeric_limits<double>::infinity();
    double monotone = 0.0;
    const int samples = std::max(1, std::min(cfg.sample_count, 10));
    for (int i = 0; i < samples; ++i) {
        const ComplexMatrix a = sample_herm0_norm(cfg.seed, 500 + i, 3, 1.4);
        std::vector<RealVector> sched;
        for (double s : {10.0, 20.0, 40.0, 80.0}) {
            RealVector u(3);
            u << 0.0, 1.0, s;
            sched.push_back(u);
        }
        const DecayReport dr = verify_mainthm(a, sched, cfg.oracle);
        slope_worst = std::max(slope_worst, dr.slope);
        for (size_t p = 0; p + 1 < dr.points.size(); ++p)
            monotone = std::max(monotone, dr.points[p + 1].error - dr.points[p].error);
    }
    // slope <= -0.8 expressed as residual slope + 0.8 <= 0
    detail::add_check(rep, "decay_slope", slope_worst + 0.8, 0.0, t.seconds());
    detail::add_check(rep, "decay_monotone", monotone, 0.0, t.seconds());
    return rep;
}

inline Report run_suite(const std::string& name, const RunConfig& cfg) {
    if (name == "gt") return verify_gt(cfg);
    if (name == "caterpillar") return verify_caterpillar(cfg);
    if (name == "am") return verify_am(cfg);
    if (name == "oracle-xcheck") return verify_oracle_xcheck(cfg);
    if (name == "iso") return verify_iso(cfg);
    if (name == "mainthm") return verify_mainthm_suite(cfg);
    throw StructuralError("unknown verify suite: " + name);
}

}  // namespace gtstokes

#endif  // GTSTOKES_VERIFY_HPP
