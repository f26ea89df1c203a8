#include <catch2/catch_amalgamated.hpp>

#include "gtstokes/linalg.hpp"
#include "gtstokes/sampling.hpp"

using namespace gtstokes;

namespace {

/// Leibniz-expansion determinant, the brute-force oracle for minor_det.
Complex leibniz_det(const ComplexMatrix& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    Complex det(0.0, 0.0);
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Complex term(inversions % 2 == 0 ? 1.0 : -1.0, 0.0);
        for (int i = 0; i < n; ++i) term *= m(i, perm[i]);
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

}  // namespace

TEST_CASE("eigen decomposition, descending order") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 3.0;
    EigenDesc ed = hermitian_eigen_desc(d);
    CHECK(ed.values[0] == Catch::Approx(3.0));
    CHECK(ed.values[1] == Catch::Approx(1.0));

    ComplexMatrix s(2, 2);
    s << 0.0, 1.0, 1.0, 0.0;
    ed = hermitian_eigen_desc(s);
    CHECK(ed.values[0] == Catch::Approx(1.0));
    CHECK(ed.values[1] == Catch::Approx(-1.0));
}

TEST_CASE("eigen reconstruction residual") {
    for (int i = 0; i < 20; ++i) {
        std::mt19937_64 rng = sample_rng(3, i);
        const ComplexMatrix h = gue_sample(rng, 5);
        EigenDesc ed = hermitian_eigen_desc(h);
        const ComplexMatrix rec =
            ed.vectors * ed.values.cast<Complex>().asDiagonal() * ed.vectors.adjoint();
        CHECK((rec - h).norm() <= 1e-11 * (1.0 + h.norm()));
        CHECK(unitarity_residual(ed.vectors) < 1e-12);
    }
}

TEST_CASE("eigen rejects non-hermitian input") {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(hermitian_eigen_desc(m), StructuralError);
}

TEST_CASE("minor determinants") {
    ComplexMatrix a(2, 2);
    a << Complex(1, 1), Complex(2, 0), Complex(0, 3), Complex(4, -1);
    CHECK(minor_det(a, {0}, {0}) == a(0, 0));
    CHECK(std::abs(minor_det(a, {0, 1}, {0, 1}) - leibniz_det(a)) < 1e-14);

    std::mt19937_64 rng = sample_rng(5, 1);
    const ComplexMatrix b = gue_sample(rng, 3);
    // cofactor-style 2x2 minor vs brute force
    ComplexMatrix sub(2, 2);
    sub << b(0, 0), b(0, 2), b(1, 0), b(1, 2);
    CHECK(std::abs(minor_det(b, {0, 1}, {0, 2}) - leibniz_det(sub)) < 1e-13);

    CHECK_THROWS_AS(minor_det(b, {0, 1}, {0}), StructuralError);
    CHECK_THROWS_AS(minor_det(b, {0, 5}, {0, 1}), StructuralError);
}

TEST_CASE("full minor equals LU determinant") {
    std::mt19937_64 rng = sample_rng(5, 2);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix b = gue_sample(rng, 4);
        std::vector<int> all{0, 1, 2, 3};
        const Complex lhs = minor_det(b, all, all);
        const Complex rhs = leibniz_det(b);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("cholesky upper") {
    CHECK((cholesky_upper(ComplexMatrix::Identity(3, 3)) -
           ComplexMatrix::Identity(3, 3))
              .norm() < 1e-15);
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    const ComplexMatrix r = cholesky_upper(d);
    CHECK(r(0, 0).real() == Catch::Approx(2.0));
    CHECK(r(1, 1).real() == Catch::Approx(3.0));

    // round trip on random R0^H R0
    std::mt19937_64 rng = sample_rng(6, 0);
    ComplexMatrix r0 = gue_sample(rng, 4);
    r0 = r0.triangularView<Eigen::Upper>();
    for (int j = 0; j < 4; ++j) r0(j, j) = std::abs(r0(j, j)) + 1.0;
    const ComplexMatrix m = r0.adjoint() * r0;
    CHECK((cholesky_upper(m) - r0).norm() <= 1e-12 * m.norm());
}

TEST_CASE("cholesky names the failing pivot") {
    ComplexMatrix m = ComplexMatrix::Identity(3, 3);
    m(2, 2) = -1.0;
    try {
        cholesky_upper(m);
        FAIL("expected FactorizationError");
    } catch (const FactorizationError& e) {
        CHECK(e.pivot == 3);
    }
}

TEST_CASE("inverse and diagonal exponential round trips") {
    std::mt19937_64 rng = sample_rng(7, 0);
    const ComplexMatrix g = gue_sample(rng, 4) + Complex(0, 1) * gue_sample(rng, 4);
    const ComplexMatrix gi = matrix_inverse(g);
    CHECK((g * gi - ComplexMatrix::Identity(4, 4)).norm() < 1e-10);

    const ComplexMatrix h = gue_sample(rng, 4);
    const ComplexMatrix e = hermitian_exp(h);
    const ComplexMatrix em = hermitian_exp((-h).eval());
    CHECK((e * em - ComplexMatrix::Identity(4, 4)).norm() < 1e-11);
}

TEST_CASE("unitary real powers") {
    std::mt19937_64 rng = sample_rng(8, 0);
    const ComplexMatrix h = gue_sample(rng, 3);
    const ComplexMatrix p = real_power_unitary(2.5, h);
    CHECK(unitarity_residual(p) < 1e-12);
    // group law in the same generator
    const ComplexMatrix q = real_power_unitary(2.5 * 2.5, h);
    CHECK((p * p - q).norm() < 1e-11);
}
