#pragma once

#include "spinrelax/mat3.hpp"
#include "spinrelax/params.hpp"

namespace spinrelax {

// Energy-eigenbasis frame in lab Pauli coordinates, shared by the spectral
// direction mapping and the dynamics oracle so both sides use one phase
// convention. The operator triple (D+, D-, D0) built on the H_S eigenstates
// maps to lab space as
//   D0      -> axis_n . sigma
//   D+/- -> (axis_m . sigma -/+ ... ) given by D+ = (tau_x + i tau_y)/2 with
//   tau_x = axis_m . sigma, tau_y = axis_e . sigma.
// This is the unique frame (up to rotation about axis_n) under which the
// dephasing coupling sigma_z decomposes as eps*tau_z + delta*tau_x, which is
// what the Bloch matrix entries encode.
struct EigenFrame {
    Vec3 n; // Hamiltonian axis: tau_z image
    Vec3 m; // tau_x image
    Vec3 e; // tau_y image
};

inline EigenFrame eigen_frame(const SystemParams& p) {
    const double eps = p.eps_tilde;
    const double del = p.delta_tilde();
    return EigenFrame{
        {del, 0.0, eps},
        {-eps, 0.0, del},
        {0.0, -1.0, 0.0},
    };
}

// Hamiltonian direction (Delta, 0, eps): the theta -> 0 anchor for the
// longitudinal direction.
inline Vec3 hamiltonian_axis(const SystemParams& p) {
    return {p.delta_tilde(), 0.0, p.eps_tilde};
}

// Lab unit vector of the Hermitian observable c+ D+ + c+* D- + c0 D0.
// Returns the unnormalized vector; callers normalize and fix the sign gauge.
inline Vec3 lab_vector_from_coeffs(Complex c_plus, double c0, const SystemParams& p) {
    const EigenFrame f = eigen_frame(p);
    const double re = c_plus.real();
    const double im = c_plus.imag();
    // c+ D+ + c+* D- = Re(c+) tau_x - Im(c+) tau_y
    return re * f.m + (-im) * f.e + c0 * f.n;
}

// Expectations (<D+>, <D->, <D0>) of a state with lab Bloch vector r.
inline CVec3 expectations_from_bloch(const Vec3& r, const SystemParams& p) {
    const EigenFrame f = eigen_frame(p);
    const Complex d_plus{0.5 * dot(f.m, r), 0.5 * dot(f.e, r)};
    return {d_plus, std::conj(d_plus), Complex{dot(f.n, r), 0.0}};
}

} // namespace spinrelax
