#include <catch2/catch_amalgamated.hpp>

#include "gtstokes/iso.hpp"
#include "gtstokes/sampling.hpp"

using namespace gtstokes;

TEST_CASE("iso rhs structure") {
    RealVector u(3);
    u << 0.0, 1.0, 2.5;
    // diagonal Phi: commutator vanishes
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d.diagonal() << 1.0, -0.5, 2.0;
    for (int k = 0; k < 3; ++k) CHECK(iso_rhs(u, d, k).norm() == 0.0);

    // diagonal entries of the increment vanish in every direction
    const ComplexMatrix phi = sample_herm0(80, 0, 3);
    for (int k = 0; k < 3; ++k) {
        const ComplexMatrix r = iso_rhs(u, phi, k);
        CHECK(r.diagonal().cwiseAbs().maxCoeff() < 1e-15);
        CHECK(hermiticity_residual(r) < 1e-15);
    }
}

TEST_CASE("iso rhs matches finite differences of the flow") {
    RealVector u(3);
    u << 0.0, 0.9, 2.2;
    const ComplexMatrix phi = sample_herm0(81, 0, 3);
    FlowOptions tight;
    tight.rtol = 1e-12;
    tight.atol = 1e-14;
    const double h = 1e-4;
    for (int k = 0; k < 3; ++k) {
        RealVector up = u, um = u;
        up[k] += h;
        um[k] -= h;
        const ComplexMatrix fd =
            (iso_flow({u, phi}, up, tight).phi - iso_flow({u, phi}, um, tight).phi) /
            (2.0 * h);
        CHECK((fd - iso_rhs(u, phi, k)).norm() < 1e-6);
    }
}

TEST_CASE("flow conserves spectrum and diagonal") {
    RealVector u0(3), u1(3);
    u0 << 0.0, 1.0, 2.5;
    u1 << 0.4, 1.7, 3.0;
    const ComplexMatrix phi0 = sample_herm0(82, 0, 3);
    FlowDiagnostics d;
    const FlowState end = iso_flow({u0, phi0}, u1, {}, &d);
    CHECK((hermitian_eigen_desc(end.phi).values - hermitian_eigen_desc(phi0).values)
              .cwiseAbs()
              .maxCoeff() < 1e-8);
    CHECK((end.phi.diagonal() - phi0.diagonal()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(d.hermiticity_drift < 1e-9);
    // diagonal Phi stays fixed
    ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
    diag.diagonal() << 0.3, -0.1, 0.8;
    CHECK((iso_flow({u0, diag}, u1).phi - diag).norm() < 1e-12);
}

TEST_CASE("path leaving the chamber is refused") {
    RealVector u0(2), u1(2);
    u0 << 0.0, 1.0;
    u1 << 1.5, 1.0;
    CHECK_THROWS_AS(iso_flow({u0, sample_herm0(83, 0, 2)}, u1), DomainError);
}

TEST_CASE("stokes data is invariant along the flow") {
    const ComplexMatrix phi0 = sample_herm0_norm(84, 0, 2, 1.0);
    RealVector u0(2), u1(2);
    u0 << 0.0, 1.0;
    u1 << 0.5, 2.2;
    const FlowState end = iso_flow({u0, phi0}, u1);
    const ComplexMatrix s0 = stokes_numeric({u0, phi0}).s_plus;
    const ComplexMatrix s1 = stokes_numeric({u1, end.phi}).s_plus;
    CHECK((s0 - s1).norm() < 1e-4);
}

TEST_CASE("g factor unitarity and the n=2 phase form") {
    RealVector u(2);
    u << 0.0, 2.5;
    const ComplexMatrix a = sample_herm0(85, 0, 2);
    const ComplexMatrix g = g_factor(u, a);
    CHECK(unitarity_residual(g) < 1e-12);
    // delta_1 is diagonal at n=2, so g is the explicit scalar phase pair
    for (int j = 0; j < 2; ++j) {
        const Complex expect =
            std::exp(std::log(1.0 / 2.5) * Complex(a(j, j).real(), 0.0) / kTwoPiI);
        CHECK(std::abs(g(j, j) - expect) < 1e-13);
    }
    CHECK(std::abs(g(0, 1)) + std::abs(g(1, 0)) < 1e-15);

    // equal gaps at n=3: middle ratio is 1, only two factors act
    RealVector u3(3);
    u3 << 0.0, 1.0, 2.0;
    const ComplexMatrix a3 = sample_herm0(85, 1, 3);
    const ComplexMatrix g3 = g_factor(u3, a3);
    const ComplexMatrix expect3 = real_power_unitary(1.0, delta_block(a3, 2));
    CHECK((g_factor(u3, a3) -
           real_power_unitary(1.0 / (u3[1] - u3[0]), delta_block(a3, 1)) * expect3)
              .norm() < 1e-12);
    CHECK(unitarity_residual(g3) < 1e-12);
}

TEST_CASE("psi_u preserves actions and matches the torus route") {
    for (int n : {2, 3, 4}) {
        const ComplexMatrix a = sample_herm0(86, n, n);
        RealVector u(n);
        for (int k = 0; k < n; ++k) u[k] = (k == 0) ? 0.0 : u[k - 1] + 1.0 + 0.8 * k;
        const ComplexMatrix p1 = psi_u(u, a);
        const ComplexMatrix p2 = psi_u_torus(u, a);
        CHECK((p1 - p2).norm() < 1e-8);
        const SpectrumTable ta = gt_map(a), tp = gt_map(p1);
        for (int k = 1; k <= n; ++k)
            CHECK((ta.row(k) - tp.row(k)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("boundary dressing and fit round trip") {
    // constant diagonal: the dressing acts trivially and the fit is exact
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d.diagonal() << 0.4, -0.2;
    RealVector u(2);
    u << 0.0, 50.0;
    CHECK((boundary_fit({{u, d}}) - d).norm() < 1e-12);

    // seed near the asymptotic regime, flow closer in, recover Phi0
    const ComplexMatrix phi0 = sample_herm0_norm(87, 0, 2, 1.0);
    RealVector ufar(2), unear(2);
    ufar << 0.0, 1000.0;
    unear << 0.0, 800.0;
    const ComplexMatrix g = boundary_dressing(ufar, phi0);
    ComplexMatrix seeded = g * phi0 * g.adjoint();
    seeded = ((seeded + seeded.adjoint()) / 2.0).eval();
    const FlowState moved = iso_flow({ufar, seeded}, unear);
    const ComplexMatrix est = boundary_fit({moved});
    CHECK((est - phi0).norm() < 1e-3);
    // the dressing is unitary: spectra agree exactly
    CHECK((hermitian_eigen_desc(est).values - hermitian_eigen_desc(moved.phi).values)
              .cwiseAbs()
              .maxCoeff() < 1e-10);
}

TEST_CASE("main theorem decay at n=2") {
    const ComplexMatrix a = sample_herm0_norm(88, 0, 2, 1.2);
    std::vector<RealVector> sched;
    for (double s : {4.0, 8.0, 16.0}) {
        RealVector u(2);
        u << 0.0, s;
        sched.push_back(u);
    }
    const DecayReport rep = verify_mainthm(a, sched);
    REQUIRE(rep.points.size() == 3);
    CHECK(rep.points[1].error < rep.points[0].error);
    CHECK(rep.points[2].error < rep.points[1].error);
}
