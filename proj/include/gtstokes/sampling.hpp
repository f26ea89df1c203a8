#ifndef GTSTOKES_SAMPLING_HPP
#define GTSTOKES_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "gtstokes/gt.hpp"
#include "gtstokes/types.hpp"

namespace gtstokes {

/// Deterministic per-sample stream: one generator per (seed, index) pair, so
/// suites give identical results regardless of execution order or job count.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed * 0x9e3779b97f4a7c15ULL + index + 1;
    s ^= s >> 30;
    s *= 0xbf58476d1ce4e5b9ULL;
    s ^= s >> 27;
    s *= 0x94d049bb133111ebULL;
    s ^= s >> 31;
    return std::mt19937_64(s);
}

/// GUE-style draw A = (G + G^H)/2 with unit-variance entries.
inline ComplexMatrix gue_sample(std::mt19937_64& rng, int n, bool real_symmetric = false) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double re = gauss(rng);
            const double im = real_symmetric ? 0.0 : gauss(rng);
            g(i, j) = Complex(re, im);
        }
    return ((g + g.adjoint()) / 2.0).eval();
}

/// Draws from Herm_0(n), rejecting samples whose interlacing slack falls
/// below 0.05 (1 + ||A||); keeps the caterpillar formulas well conditioned
/// at a low rejection rate.
inline ComplexMatrix sample_herm0(std::uint64_t seed, std::uint64_t index, int n,
                                  bool real_symmetric = false, double scale = 1.0,
                                  double gap_frac = 0.05) {
    std::mt19937_64 rng = sample_rng(seed, index);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        ComplexMatrix a = gue_sample(rng, n, real_symmetric) * scale;
        if (n == 1) return a;
        const SpectrumTable t = gt_map(a);
        if (cone_gap(t) > gap_frac * (1.0 + a.norm())) return a;
    }
    throw DomainError("sample_herm0: rejection did not terminate");
}

/// Rescales a Herm_0 sample to a target norm, preserving the cone gap ratio.
inline ComplexMatrix sample_herm0_norm(std::uint64_t seed, std::uint64_t index, int n,
                                       double target_norm,
                                       bool real_symmetric = false) {
    ComplexMatrix a = sample_herm0(seed, index, n, real_symmetric);
    return a * (target_norm / a.norm());
}

/// Random torus element with angles in [0, 2 pi).
inline TorusElement sample_torus(std::uint64_t seed, std::uint64_t index, int n) {
    std::mt19937_64 rng = sample_rng(seed ^ 0x7045ULL, index);
    std::uniform_real_distribution<double> uni(0.0, kTwoPi);
    TorusElement t;
    for (int k = 1; k <= n - 1; ++k) {
        RealVector row(k);
        for (int j = 0; j < k; ++j) row[j] = uni(rng);
        t.push_back(std::move(row));
    }
    return t;
}

}  // namespace gtstokes

#endif  // GTSTOKES_SAMPLING_HPP
