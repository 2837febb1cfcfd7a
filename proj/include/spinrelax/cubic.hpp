#pragma once

#include <array>

#include "spinrelax/mat3.hpp"

namespace spinrelax {

// Multiplicity structure of a real-coefficient cubic, decided by the sign of
// the discriminant against a relative tolerance band.
enum class RootPattern { ComplexPair, ThreeReal, Degenerate };

struct CubicRoots {
    std::array<Complex, 3> roots{}; // sorted by (Re, Im) ascending
    double discriminant = 0.0;
    RootPattern pattern = RootPattern::ThreeReal;
};

// Degeneracy band for the discriminant: a small multiple of the magnitude of
// the terms entering the discriminant expression, i.e. its rounding-noise
// floor. (A pure |c2|^6 homogeneity scale over-classifies spectra whose roots
// spread over several orders of magnitude, which is exactly the shape of the
// relaxation spectrum at large dephasing.)
inline double degeneracy_tolerance(double c2, double c1, double c0) {
    const double p = c1 - c2 * c2 / 3.0;
    const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    const double ap = std::abs(p);
    return 1e-13 * (4.0 * ap * ap * ap + 27.0 * q * q);
}

// Roots of lambda^3 + c2 lambda^2 + c1 lambda + c0 (real coefficients).
// Three-real branch uses the trigonometric form; the one-real branch uses
// the cbrt form picked to avoid cancellation. Every root gets one guarded
// Newton polish step. Throws std::invalid_argument on non-finite input.
CubicRoots solve_cubic(double c2, double c1, double c0);
CubicRoots solve_cubic(double c2, double c1, double c0, double degeneracy_tol);

} // namespace spinrelax
