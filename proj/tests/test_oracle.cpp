#include <catch2/catch_amalgamated.hpp>

#include "gtstokes/caterpillar.hpp"
#include "gtstokes/iso.hpp"
#include "gtstokes/ode.hpp"
#include "gtstokes/sampling.hpp"

using namespace gtstokes;

namespace {

LinearSystemSpec spec2(std::uint64_t idx, double norm = 1.2) {
    RealVector u(2);
    u << 0.0, 1.0;
    return {u, sample_herm0_norm(70, idx, 2, norm)};
}

}  // namespace

TEST_CASE("integrator closed forms") {
    // A = 0: F(z) = e^{i u (z - z0)} F0
    RealVector u(2);
    u << 0.0, 2.0;
    LinearSystemSpec s{u, ComplexMatrix::Zero(2, 2)};
    const Complex z0(1.0, 0.0), z1(3.0, -1.5);
    const ComplexMatrix f = integrate_linear(s, z0, z1, ComplexMatrix::Identity(2, 2));
    for (int j = 0; j < 2; ++j) {
        const Complex expect = std::exp(kImag * u[j] * (z1 - z0));
        CHECK(std::abs(f(j, j) - expect) < 1e-10);
    }
    CHECK(std::abs(f(0, 1)) + std::abs(f(1, 0)) < 1e-12);

    // u = 0: F(z) = (z/z0)^{-A/2pi i} via the Hermitian eigenframe
    LinearSystemSpec s2{RealVector::Zero(2), sample_herm0(71, 0, 2)};
    const ComplexMatrix f2 =
        integrate_linear(s2, z0, Complex(2.0, 0.0), ComplexMatrix::Identity(2, 2));
    EigenDesc ed = hermitian_eigen_desc(s2.a);
    ComplexVector pw(2);
    for (int j = 0; j < 2; ++j)
        pw[j] = std::exp(-ed.values[j] * std::log(2.0) / kTwoPiI);
    const ComplexMatrix expect = ed.vectors * pw.asDiagonal() * ed.vectors.adjoint();
    CHECK((f2 - expect).norm() < 1e-9);
}

TEST_CASE("integrator round trip") {
    LinearSystemSpec s = spec2(0);
    const Complex z0(5.0, 0.0), z1(0.5, -2.0);
    OracleConfig cfg;
    const ComplexMatrix fwd = integrate_linear(s, z0, z1, ComplexMatrix::Identity(2, 2), cfg);
    const ComplexMatrix back = integrate_linear(s, z1, z0, fwd, cfg);
    CHECK((back - ComplexMatrix::Identity(2, 2)).norm() < 1e-8);
}

TEST_CASE("paths through the origin are rejected") {
    LinearSystemSpec s = spec2(1);
    CHECK_THROWS_AS(integrate_linear(s, Complex(-1.0, 0.0), Complex(1.0, 0.0),
                                     ComplexMatrix::Identity(2, 2)),
                    DomainError);
}

TEST_CASE("asymptotic matching is stable under radius doubling") {
    LinearSystemSpec s = spec2(2);
    OracleConfig cfg;
    const StokesNumericResult a = stokes_numeric(s, cfg);
    OracleConfig cfg2 = cfg;
    cfg2.radius = 2.0 * matching_radius(s, cfg);
    const StokesNumericResult b = stokes_numeric(s, cfg2);
    CHECK((a.s_plus - b.s_plus).norm() < 1e-7);
}

TEST_CASE("frobenius solution is stable under r0 halving") {
    LinearSystemSpec s = spec2(3);
    OracleConfig cfg;
    const ConnectionResult a = connection_numeric(s, cfg);
    OracleConfig cfg2 = cfg;
    cfg2.r0 = cfg.r0 / 2.0;
    const ConnectionResult b = connection_numeric(s, cfg2);
    CHECK((a.c - b.c).norm() < 1e-8);
}

TEST_CASE("trivial residue gives identity connection and Stokes data") {
    RealVector u(2);
    u << 0.0, 1.0;
    LinearSystemSpec s{u, ComplexMatrix::Zero(2, 2)};
    const ConnectionResult c = connection_numeric(s);
    CHECK((c.c - ComplexMatrix::Identity(2, 2)).norm() < 1e-9);
    const StokesNumericResult st = stokes_numeric(s);
    CHECK((st.s_plus - ComplexMatrix::Identity(2, 2)).norm() < 1e-9);
}

TEST_CASE("oracle at n=2: unitarity, triangularity, monodromy") {
    for (int i = 0; i < 3; ++i) {
        LinearSystemSpec s = spec2(10 + i, 1.6);
        const ConnectionResult c = connection_numeric(s);
        CHECK(c.unitarity_residual < 1e-5);
        const StokesNumericResult st = stokes_numeric(s);
        CHECK(st.triangularity_residual < 1e-5);
        StokesPair pair{st.s_plus, st.s_plus.adjoint()};
        CHECK(verify_monodromy(c.c, s.a, pair) < 1e-5);
    }
}

TEST_CASE("constant isomonodromic family matches the caterpillar formulas") {
    // Phi0 with zero diagonal at n=2 is a fixed point of the flow, so the
    // Stokes data at any u in U_id equals the caterpillar value.
    const Complex b(0.7, 0.4);
    ComplexMatrix phi(2, 2);
    phi << 0.0, b, std::conj(b), 0.0;
    const Complex expected = 2.0 * b * std::sinh(std::abs(b) / 2.0) / std::abs(b);
    for (double sep : {1.0, 3.0}) {
        RealVector u(2);
        u << 0.0, sep;
        const StokesNumericResult st = stokes_numeric({u, phi});
        CHECK(std::abs(st.s_plus(0, 1) - expected) < 1e-6);
        CHECK(std::abs(st.s_plus(0, 0) - 1.0) < 1e-6);
        CHECK(std::abs(st.s_plus(1, 1) - 1.0) < 1e-6);
    }
}

TEST_CASE("independently continued S_minus equals the adjoint") {
    LinearSystemSpec s = spec2(20);
    const StokesNumericResult st = stokes_numeric(s);
    const ComplexMatrix sm = stokes_minus_numeric(s);
    CHECK((sm - st.s_plus.adjoint()).norm() < 1e-4);
}

TEST_CASE("normalized connection against the oracle at n=2 and n=3") {
    for (int n : {2, 3}) {
        const ComplexMatrix a = sample_herm0_norm(72, n, n, 1.4);
        for (int k1 = 2; k1 <= n; ++k1) {
            const ComplexMatrix p = diagonalizer_P(a, k1 - 1);
            const ComplexMatrix ak = p.adjoint() * a * p;
            RealVector uek = RealVector::Zero(n);
            uek[k1 - 1] = 1.0;
            LinearSystemSpec sub{uek, delta_block(ak, k1)};
            const ConnectionResult c = connection_numeric(sub);
            CHECK(c.unitarity_residual < 1e-5);
            CHECK((c.c * ladder_L(a, k1) - normalized_connection(a, k1)).norm() < 1e-5);
        }
    }
}

TEST_CASE("degenerate u with coupling in a tie group is rejected") {
    RealVector u(3);
    u << 0.0, 0.0, 1.0;
    ComplexMatrix a = sample_herm0(73, 0, 3);  // generic: (0,1) entry nonzero
    LinearSystemSpec s{u, a};
    CHECK_THROWS_AS(connection_numeric(s), StructuralError);
}

TEST_CASE("stokes extraction requires the chamber") {
    RealVector u(2);
    u << 1.0, 0.0;
    LinearSystemSpec s{u, sample_herm0(74, 0, 2)};
    CHECK_THROWS_AS(stokes_numeric(s), StructuralError);
}
