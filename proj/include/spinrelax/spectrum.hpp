#pragma once

#include <optional>
#include <vector>

#include "spinrelax/bloch.hpp"
#include "spinrelax/cubic.hpp"

namespace spinrelax {

using Regime = RootPattern;

const char* regime_name(Regime r);
Regime regime_from_name(const std::string& s);

// Spectral analysis of one Bloch matrix. Eigenvalues are sorted by
// (Re, Im) ascending; directions[k] is the lab-frame longitudinal direction
// of eigenvalue k when that eigenvalue is real and non-defective, otherwise
// empty (complex eigenvalues, and merged roots at discriminant boundaries,
// carry no direction).
struct SpectrumReport {
    std::array<Complex, 3> eigenvalues{};
    Regime regime = Regime::ComplexPair;
    double discriminant = 0.0;
    std::vector<double> gamma_L;          // 1 entry (ComplexPair) or 3 sorted
    std::optional<double> gamma_T;        // absent when all eigenvalues real
    std::optional<double> oscillation_freq;
    std::array<std::optional<Vec3>, 3> directions{};
};

SpectrumReport analyze_spectrum(const BlochMatrix& a);
SpectrumReport analyze_spectrum(const BlochMatrix& a, double degeneracy_tol);

// Left-eigenvector mode of a real eigenvalue: sigma_L = c+ D+ + c+* D- + c0 D0
// decays as exp(-lambda tau) without oscillation. `direction` is the unit lab
// vector with the sign gauge fixed so dot(direction, hamiltonian_axis) >= 0.
struct LongitudinalMode {
    Complex c_plus{};
    double c0 = 0.0;
    Vec3 direction{};
    double hermiticity_defect = 0.0; // residual before the Hermitian truncation
};

LongitudinalMode longitudinal_mode(const BlochMatrix& a, double lambda);

// Convenience wrapper returning only the unit direction vector.
Vec3 longitudinal_direction(const BlochMatrix& a, double lambda);

} // namespace spinrelax
