#ifndef GTSTOKES_SPECIAL_HPP
#define GTSTOKES_SPECIAL_HPP

#include <cmath>
#include <complex>

#include "gtstokes/types.hpp"

namespace gtstokes {

namespace detail {

/// Stirling series for log Gamma, valid for |z| >= 12 with Re z > 0.
/// The Bernoulli coefficients B_{2k}/(2k(2k-1)) up to k = 12 leave a
/// remainder below 1e-16 at |z| = 12.
inline Complex log_gamma_stirling(Complex z) {
    static const double coef[] = {
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
        43867.0 / 244188.0,
        -174611.0 / 125400.0,
        77683.0 / 5796.0,
        -236364091.0 / 1506960.0,
    };
    const Complex lz = std::log(z);
    Complex s = (z - 0.5) * lz - z + 0.5 * std::log(kTwoPi);
    const Complex z2 = z * z;
    Complex zp = z;
    for (double c : coef) {
        s += c / zp;
        zp *= z2;
    }
    return s;
}

}  // namespace detail

/// Principal log Gamma for complex z: exp(log_gamma_complex(z)) == Gamma(z).
/// Recurrence shifts |z| above the Stirling threshold; the reflection
/// formula covers Re z < 1/2. Poles at z = 0, -1, -2, ... raise DomainError.
inline Complex log_gamma_complex(Complex z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw DomainError("log_gamma_complex: pole at non-positive integer");
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        const Complex s = std::sin(kPi * z);
        if (s == Complex(0.0, 0.0))
            throw DomainError("log_gamma_complex: sin(pi z) vanished");
        return std::log(kPi) - std::log(s) - log_gamma_complex(1.0 - z);
    }
    Complex shift(0.0, 0.0);
    while (std::abs(z) < 12.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return detail::log_gamma_stirling(z) - shift;
}

inline Complex gamma_complex(Complex z) { return std::exp(log_gamma_complex(z)); }

/// log Gamma(1 + r/(2 pi i)) for real r; the argument form that appears in
/// every connection-matrix entry.
inline Complex log_gamma_ratio_arg(double r) {
    return log_gamma_complex(Complex(1.0, -r / kTwoPi));
}

/// log(2 sinh(r/2)) for r > 0, stable against overflow for large r.
inline double log_two_sinh_half(double r) {
    return 0.5 * r + std::log1p(-std::exp(-r));
}

/// log |Gamma(1 + r/(2 pi i))| = (1/2) log( r / (2 sinh(r/2)) ).
/// Follows from the reflection formula; even in r, and -> 0 as r -> 0.
inline double log_gamma_mod_arg(double r) {
    const double x = std::abs(r);
    if (x < 1e-9) return -x * x / 48.0;
    return 0.5 * (std::log(x) - log_two_sinh_half(x));
}

/// Arg Gamma(1 + r/(2 pi i)), continuous in r.
inline double arg_gamma_arg(double r) {
    return std::imag(log_gamma_ratio_arg(r));
}

/// Reduce an angle to [0, 2 pi).
inline double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

}  // namespace gtstokes

#endif  // GTSTOKES_SPECIAL_HPP
