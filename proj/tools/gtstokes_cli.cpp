// Command-line front end: GT coordinates, the Alekseev-Meinrenken map, the
// caterpillar Riemann-Hilbert data, the ODE oracle, isomonodromy flows and
// the verification suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gtstokes/am.hpp"
#include "gtstokes/caterpillar.hpp"
#include "gtstokes/gt.hpp"
#include "gtstokes/io.hpp"
#include "gtstokes/iso.hpp"
#include "gtstokes/ode.hpp"
#include "gtstokes/verify.hpp"

namespace {

using namespace gtstokes;

RealVector parse_u(const std::string& s) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    RealVector u(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) u[i] = vals[i];
    return u;
}

void emit(const json& j, const std::string& output) {
    if (output.empty())
        std::cout << j.dump(2) << std::endl;
    else
        write_json(output, j);
}

json stokes_pair_to_json(const StokesPair& s) {
    json out;
    out["s_plus"] = matrix_to_json(s.s_plus);
    out["s_minus"] = matrix_to_json(s.s_minus);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gelfand-Tsetlin coordinates, the Alekseev-Meinrenken diffeomorphism "
                 "and Stokes data at caterpillar points"};
    app.require_subcommand(1);

    std::string input, output, u_str;
    std::uint64_t seed = 7;
    int jobs = 1;
    double tol_unitary = 1e-9, tol_rh = 1e-8, tol_gap = -1.0;
    double radius = 0.0, rtol = 1e-10;
    app.add_option("--input", input, "input matrix JSON")->capture_default_str();
    app.add_option("--output", output, "output path (default: stdout)");
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads for suites")->capture_default_str();
    app.add_option("--tol-unitary", tol_unitary, "unitarity tolerance");
    app.add_option("--tol-rh", tol_rh, "Riemann-Hilbert tolerance");
    app.add_option("--tol-gap", tol_gap, "cone gap tolerance (negative: auto)");

    auto* cmd_gt = app.add_subcommand("gt-coords", "GT action-angle coordinates");
    auto* cmd_am = app.add_subcommand("am-map", "Alekseev-Meinrenken image and factors");
    auto* cmd_rh = app.add_subcommand("rh-cat", "Riemann-Hilbert map at the caterpillar point");
    auto* cmd_sc = app.add_subcommand("stokes-cat", "caterpillar Stokes sub-diagonals");

    auto* cmd_or = app.add_subcommand("oracle", "direct ODE integration oracle");
    cmd_or->add_option("--u", u_str, "comma-separated deformation parameters")->required();
    cmd_or->add_option("--matrix", input, "residue matrix JSON (alias of --input)");
    cmd_or->add_option("--radius", radius, "matching radius (0: auto)");
    cmd_or->add_option("--rtol", rtol, "integrator relative tolerance");
    bool oracle_report = false;
    cmd_or->add_flag("--report", oracle_report, "include residual report");

    auto* cmd_if = app.add_subcommand("iso-flow", "integrate the isomonodromy flow");
    std::string u_from_str, u_to_str;
    int snapshots = 1;
    cmd_if->add_option("--u-from", u_from_str, "start point in U_id")->required();
    cmd_if->add_option("--u-to", u_to_str, "end point in U_id")->required();
    cmd_if->add_option("--snapshots", snapshots, "intermediate snapshots")
        ->capture_default_str();

    auto* cmd_ve = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    int vn = 4, vsamples = 50;
    cmd_ve->add_option("suite", suite,
                       "one of: gt caterpillar am oracle-xcheck iso mainthm")
        ->required();
    cmd_ve->add_option("--n", vn, "matrix dimension")->capture_default_str();
    cmd_ve->add_option("--samples", vsamples, "samples per check")->capture_default_str();

    auto* cmd_vm = app.add_subcommand("verify-mainthm", "leading-term decay study");
    int mn = 3;
    std::string sched_str = "10,20,40,80";
    int msamples = 3;
    cmd_vm->add_option("--n", mn, "dimension (2 or 3)")->capture_default_str();
    cmd_vm->add_option("--schedule", sched_str, "separations s for u = (0,1,s)")
        ->capture_default_str();
    cmd_vm->add_option("--samples", msamples, "random matrices")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_gt->parsed()) {
            const ComplexMatrix a = load_matrix(input);
            emit(gt_coordinates_to_json(gt_coordinates(a, tol_gap)), output);
        } else if (cmd_am->parsed()) {
            const ComplexMatrix a = load_matrix(input);
            const AMFactorization f = gamma_am(a, tol_gap);
            json j;
            j["gamma"] = matrix_to_json(f.gamma);
            json factors = json::array();
            for (const auto& p : f.psi_factors) factors.push_back(matrix_to_json(p));
            j["psi_factors"] = factors;
            json diag;
            diag["psi_unitarity"] = unitarity_residual(f.psi);
            diag["two_path_residual"] = (f.gamma - am_via_rh(a, tol_gap)).norm();
            j["diagnostics"] = diag;
            emit(j, output);
        } else if (cmd_rh->parsed()) {
            const ComplexMatrix a = load_matrix(input);
            const CaterpillarResult r = rh_caterpillar(a, tol_gap);
            json j;
            j["nu"] = matrix_to_json(r.nu);
            j["c_tilde"] = matrix_to_json(r.c_tilde);
            j["s_plus"] = matrix_to_json(r.stokes.s_plus);
            json diag;
            diag["diag_residual"] = r.diag_residual;
            diag["c_tilde_unitarity"] = unitarity_residual(r.c_tilde);
            diag["monodromy_residual"] = verify_monodromy(r.c_tilde, a, r.stokes);
            j["diagnostics"] = diag;
            emit(j, output);
        } else if (cmd_sc->parsed()) {
            const ComplexMatrix a = load_matrix(input);
            const StokesSubdiagonals sd = stokes_subdiag(a, tol_gap);
            json j;
            json up = json::array(), lo = json::array();
            for (Eigen::Index k = 0; k < sd.upper.size(); ++k) {
                up.push_back(complex_to_json(sd.upper[k]));
                lo.push_back(complex_to_json(sd.lower[k]));
            }
            j["s_plus_subdiagonal"] = up;
            j["s_minus_subdiagonal"] = lo;
            emit(j, output);
        } else if (cmd_or->parsed()) {
            const ComplexMatrix a = load_matrix(input);
            LinearSystemSpec spec{parse_u(u_str), a};
            OracleConfig cfg;
            cfg.radius = radius;
            cfg.rtol = rtol;
            const ConnectionResult c = connection_numeric(spec, cfg);
            json j;
            j["c"] = matrix_to_json(c.c);
            if (strictly_increasing(spec.u)) {
                const StokesNumericResult s = stokes_numeric(spec, cfg);
                j["s_plus"] = matrix_to_json(s.s_plus);
                if (oracle_report) {
                    StokesPair pair{s.s_plus, s.s_plus.adjoint()};
                    j["residuals"] = {{"unitarity", c.unitarity_residual},
                                      {"triangularity", s.triangularity_residual},
                                      {"monodromy", verify_monodromy(c.c, a, pair)}};
                }
            } else if (oracle_report) {
                j["residuals"] = {{"unitarity", c.unitarity_residual}};
            }
            emit(j, output);
        } else if (cmd_if->parsed()) {
            const ComplexMatrix phi0 = load_matrix(input);
            const RealVector u0 = parse_u(u_from_str), u1 = parse_u(u_to_str);
            json snaps = json::array();
            FlowState state{u0, phi0};
            for (int s = 1; s <= snapshots; ++s) {
                const double t = double(s) / snapshots;
                FlowDiagnostics d;
                const RealVector ut = u0 + t * (u1 - u0);
                state = iso_flow(state, ut, {}, &d);
                json snap;
                snap["u"] = vector_to_json(state.u);
                snap["phi"] = matrix_to_json(state.phi, true);
                snap["hermiticity_drift"] = d.hermiticity_drift;
                snaps.push_back(snap);
            }
            json j;
            j["snapshots"] = snaps;
            emit(j, output);
        } else if (cmd_ve->parsed()) {
            RunConfig cfg;
            cfg.seed = seed;
            cfg.n = vn;
            cfg.sample_count = vsamples;
            cfg.jobs = jobs;
            const Report rep = run_suite(suite, cfg);
            for (const auto& c : rep.checks)
                std::printf("[%s] %-40s residual=%.3e tol=%.3e (%.2fs)\n",
                            c.pass ? "PASS" : "FAIL", c.name.c_str(), c.residual,
                            c.tolerance, c.seconds);
            const std::string base = output.empty() ? ("verify_" + suite) : output;
            write_json(base + ".json", rep.to_json());
            std::ofstream csv(base + ".csv");
            csv << rep.to_csv();
            return rep.all_pass() ? 0 : 1;
        } else if (cmd_vm->parsed()) {
            std::vector<RealVector> sched;
            for (double s : [&] {
                     std::vector<double> v;
                     std::stringstream ss(sched_str);
                     std::string tok;
                     while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
                     return v;
                 }()) {
                RealVector u(mn);
                if (mn == 2) u << 0.0, s;
                else u << 0.0, 1.0, s;
                sched.push_back(u);
            }
            OracleConfig cfg;
            cfg.rtol = rtol;
            double slope_max = -std::numeric_limits<double>::infinity();
            std::ostringstream csv;
            csv << "sample,ratio,error,slope\n";
            for (int i = 0; i < msamples; ++i) {
                const ComplexMatrix a = sample_herm0_norm(seed, 500 + i, mn, 1.4);
                const DecayReport dr = verify_mainthm(a, sched, cfg);
                for (const auto& p : dr.points)
                    csv << i << "," << format_g17(p.min_ratio) << ","
                        << format_g17(p.error) << "," << format_g17(dr.slope) << "\n";
                slope_max = std::max(slope_max, dr.slope);
                std::printf("sample %d slope %.3f\n", i, dr.slope);
            }
            const std::string base = output.empty() ? "mainthm" : output;
            std::ofstream f(base + ".csv");
            f << csv.str();
            std::printf("worst slope %.3f (pass if <= -0.8)\n", slope_max);
            return slope_max <= -0.8 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
    return 0;
}
