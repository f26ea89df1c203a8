#ifndef GTSTOKES_TYPES_HPP
#define GTSTOKES_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gtstokes {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
inline const Complex kImag{0.0, 1.0};
/// 2*pi*i, the ubiquitous denominator of the residue term A/(2*pi*i*z).
inline const Complex kTwoPiI{0.0, kTwoPi};

/// Default tolerances used by structural checks and guards.
struct Tolerances {
    static constexpr double hermitian = 1e-12;   // relative, ||A - A^H|| <= tol*(1+||A||)
    static constexpr double unitary = 1e-10;     // ||U U^H - I||
    static constexpr double positive_def = 1e-14;
    static constexpr double cone_gap = 1e-8;     // scaled by (1+||A||)
    static constexpr double modulus_floor = 1e-10;  // below this, Arg(a) is undefined
};

/// Input violates a structural precondition (shape, hermiticity, ...).
struct StructuralError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Spectra of leading submatrices fail strict interlacing at some level;
/// the formulas requiring the open cone are singular there.
struct DegenerateSpectrumError : std::runtime_error {
    int level;
    explicit DegenerateSpectrumError(int lev, const std::string& what)
        : std::runtime_error(what), level(lev) {}
};

/// A matrix factorization failed (e.g. Cholesky on an indefinite input).
struct FactorizationError : std::runtime_error {
    int pivot;  // 1-based index of the failing pivot, 0 if not applicable
    explicit FactorizationError(int piv, const std::string& what)
        : std::runtime_error(what), pivot(piv) {}
};

/// Evaluation outside a function's domain (Gamma pole, zero modulus angle, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double hermiticity_residual(const ComplexMatrix& a) {
    return (a - a.adjoint()).norm() / (1.0 + a.norm());
}

inline bool is_hermitian(const ComplexMatrix& a, double tol = Tolerances::hermitian) {
    return a.rows() == a.cols() && hermiticity_residual(a) <= tol;
}

inline void require_hermitian(const ComplexMatrix& a, double tol = Tolerances::hermitian) {
    if (a.rows() != a.cols())
        throw StructuralError("matrix is not square");
    if (!a.allFinite())
        throw StructuralError("matrix has non-finite entries");
    if (hermiticity_residual(a) > tol)
        throw StructuralError("matrix is not Hermitian within tolerance");
}

inline double unitarity_residual(const ComplexMatrix& u) {
    return (u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

inline void require_unitary(const ComplexMatrix& u, double tol = Tolerances::unitary) {
    if (u.rows() != u.cols())
        throw StructuralError("matrix is not square");
    if (unitarity_residual(u) > tol)
        throw StructuralError("matrix is not unitary within tolerance");
}

/// A validated Hermitian matrix. The wrapped value is immutable; the exact
/// symmetrization (A+A^H)/2 is applied once so downstream code can rely on
/// bit-level hermiticity.
class HermitianMatrix {
public:
    explicit HermitianMatrix(const ComplexMatrix& a, double tol = Tolerances::hermitian)
        : mat_((require_hermitian(a, tol), ((a + a.adjoint()) / 2.0).eval())) {}

    const ComplexMatrix& mat() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

private:
    ComplexMatrix mat_;
};

/// Real diagonal deformation parameter u. `strictly_increasing` identifies
/// the chamber U_id where the Stokes triangularity conventions apply.
inline bool strictly_increasing(const RealVector& u, double gap = 0.0) {
    for (Eigen::Index i = 0; i + 1 < u.size(); ++i)
        if (!(u[i + 1] - u[i] > gap)) return false;
    return true;
}

}  // namespace gtstokes

#endif  // GTSTOKES_TYPES_HPP
