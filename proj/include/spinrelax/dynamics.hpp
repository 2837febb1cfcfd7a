#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "spinrelax/basis.hpp"
#include "spinrelax/bloch.hpp"

namespace spinrelax {

// 2x2 Hermitian unit-trace state in the lab Pauli basis, rho = (I + r.sigma)/2.
// Trace is fixed by the representation; positivity is |r| <= 1.
struct DensityState {
    Vec3 bloch_vector{0.0, 0.0, 0.0};

    double purity() const { return norm(bloch_vector); }

    void validate() const {
        for (double x : bloch_vector)
            if (!std::isfinite(x)) throw std::invalid_argument("DensityState: non-finite");
        if (purity() > 1.0 + 1e-10)
            throw std::invalid_argument("DensityState: |r| > 1");
    }
};

// Expectation triple (<D+>, <D->, <D0>); v[1] = conj(v[0]) and v[2] real.
using ExpectationVector = CVec3;

double conjugate_structure_defect(const ExpectationVector& v);

// Right-hand side of the master equation in Bloch-vector form: precession at
// Omega0 about the Hamiltonian axis plus dephasing of r_x, r_y at rate gamma.
Vec3 bloch_derivative(const Vec3& r, const SystemParams& p);

// The same generator as a real 3x3 matrix, dr/dtau = B r.
Mat3 lab_generator(const SystemParams& p);

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& msg, std::size_t step)
        : std::runtime_error(msg + " at step " + std::to_string(step)), step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

struct Trajectory {
    std::vector<double> tau;
    std::vector<Vec3> r;
};

// Classic fixed-step RK4 with a per-step positivity check (|r| <= 1 + 1e-10);
// a breach raises IntegrationError carrying the step index (dt too large).
// Every step is stored unless store_stride > 1 (the final step is always kept).
Trajectory integrate_master(const DensityState& rho0, const SystemParams& p,
                            double tau_max, double dt, std::size_t store_stride = 1);

double default_dt(const SystemParams& p);
double default_tau_max(const BlochMatrix& a);

// exp(-A tau) applied to expectation vectors, via the spectral decomposition
// of A; falls back to scaling-and-squaring when eigenvalues nearly collide.
class ExpectationPropagator {
public:
    explicit ExpectationPropagator(const BlochMatrix& a);
    ExpectationVector operator()(const ExpectationVector& v0, double tau) const;

private:
    BlochMatrix a_;
    std::array<Complex, 3> lambda_{};
    std::array<CMat3, 3> projector_{};
    bool spectral_ = false;
};

ExpectationVector propagate_expectations(const ExpectationVector& v0,
                                         const BlochMatrix& a, double tau);

// Frobenius norm of the commutator of the two 4x4 superoperator
// representations (Hamiltonian part and dephasing part) in the orthonormal
// Pauli basis {I, sx, sy, sz}/sqrt(2). Zero iff the generators commute.
double superoperator_commutator_norm(const SystemParams& p);

} // namespace spinrelax
