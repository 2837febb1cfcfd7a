#pragma once

#include "spinrelax/mat3.hpp"
#include "spinrelax/params.hpp"

namespace spinrelax {

// Dimensionless dephasing strength gamma = 2 * eta * theta (in units of
// Omega0, with hbar = k_B = 1).
double dephasing_rate(const SystemParams& p);

// The 3x3 generator of the operator triple (D+, D-, D0), d/dtau D = -A D,
// together with its real characteristic coefficients
//   f(lambda) = lambda^3 + c2 lambda^2 + c1 lambda + c0 = det(lambda - A).
// The coefficients are evaluated from closed forms in (eps, delta, gamma)
// rather than by numeric determinant expansion, which keeps them exact near
// discriminant zeros:
//   c2 = -2 gamma, c1 = gamma^2 + Omega0^2, c0 = -delta^2 gamma Omega0^2.
struct BlochMatrix {
    CMat3 entries{};
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;
    double gamma = 0.0; // dephasing rate gamma / Omega0
    SystemParams params{};

    double f(double lambda) const {
        return ((lambda + c2) * lambda + c1) * lambda + c0;
    }
    Complex f(Complex lambda) const {
        return ((lambda + c2) * lambda + c1) * lambda + c0;
    }
};

BlochMatrix build_bloch_matrix(const SystemParams& p);

// Membership diagnostics for the real-characteristic-polynomial class:
// max |Im| over (tr, det, tr adj) and the worst conjugation-swap defect.
struct BlochDefects {
    double char_imag = 0.0; // max imaginary part among tr, det, tr adj
    double swap_defect = 0.0; // max |A - swap-conjugate(A)|
    double row3_imag = 0.0;
};

BlochDefects bloch_defects(const BlochMatrix& a);

// Comparison baseline from the opposite scaling regime, where the Bloch
// matrix is diagonal and 2*Gamma_T = Gamma_L holds identically:
//   gamma_weak = eta * Omega0 * coth(1/(2 theta))   (Ohmic form factor at
//   Omega0 taken as 2*pi*|g(Omega0)|^2 = eta*Omega0),
//   Gamma_L = delta^2 * gamma_weak, Gamma_T = Gamma_L / 2.
// At theta = 0 the coth -> 1 limit is returned. The oscillation frequency of
// this regime is renormalized and not modeled here.
struct WeakCouplingRates {
    double gamma_weak = 0.0;
    double gamma_L = 0.0;
    double gamma_T = 0.0;
};

WeakCouplingRates weak_coupling_rates(const SystemParams& p);

} // namespace spinrelax
