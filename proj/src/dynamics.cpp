#include "spinrelax/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinrelax/cubic.hpp"

namespace spinrelax {

double conjugate_structure_defect(const ExpectationVector& v) {
    return std::max(std::abs(v[0] - std::conj(v[1])), std::abs(v[2].imag()));
}

Vec3 bloch_derivative(const Vec3& r, const SystemParams& p) {
    const double g = dephasing_rate(p);
    const Vec3 axis = hamiltonian_axis(p);
    const Vec3 prec = SystemParams::omega0 * cross(axis, r);
    return {prec[0] - g * r[0], prec[1] - g * r[1], prec[2]};
}

Mat3 lab_generator(const SystemParams& p) {
    const double g = dephasing_rate(p);
    const double w0 = SystemParams::omega0;
    const Vec3 n = hamiltonian_axis(p);
    return Mat3{{{-g, -w0 * n[2], w0 * n[1]},
                 {w0 * n[2], -g, -w0 * n[0]},
                 {-w0 * n[1], w0 * n[0], 0.0}}};
}

Trajectory integrate_master(const DensityState& rho0, const SystemParams& p,
                            double tau_max, double dt, std::size_t store_stride) {
    rho0.validate();
    p.validate();
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("integrate_master: dt must be > 0");
    if (tau_max < 0.0 || !std::isfinite(tau_max))
        throw std::invalid_argument("integrate_master: tau_max must be >= 0");
    if (store_stride == 0) store_stride = 1;

    const auto n_steps = static_cast<std::size_t>(std::ceil(tau_max / dt - 1e-12));

    Trajectory out;
    out.tau.reserve(n_steps / store_stride + 2);
    out.r.reserve(n_steps / store_stride + 2);

    Vec3 r = rho0.bloch_vector;
    out.tau.push_back(0.0);
    out.r.push_back(r);

    for (std::size_t k = 0; k < n_steps; ++k) {
        const Vec3 k1 = bloch_derivative(r, p);
        const Vec3 k2 = bloch_derivative(r + (0.5 * dt) * k1, p);
        const Vec3 k3 = bloch_derivative(r + (0.5 * dt) * k2, p);
        const Vec3 k4 = bloch_derivative(r + dt * k3, p);
        r = r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (!(norm(r) <= 1.0 + 1e-10))
            throw IntegrationError("integrate_master: |r| > 1, dt too large", k + 1);

        if ((k + 1) % store_stride == 0 || k + 1 == n_steps) {
            out.tau.push_back(static_cast<double>(k + 1) * dt);
            out.r.push_back(r);
        }
    }
    return out;
}

double default_dt(const SystemParams& p) {
    return 1e-3 / std::max({1.0, dephasing_rate(p), SystemParams::omega0});
}

double default_tau_max(const BlochMatrix& a) {
    const CubicRoots roots = solve_cubic(a.c2, a.c1, a.c0);
    double min_pos = std::numeric_limits<double>::infinity();
    for (const Complex& z : roots.roots)
        if (z.real() > 1e-12) min_pos = std::min(min_pos, z.real());
    if (!std::isfinite(min_pos)) return 50.0; // dissipation-free: a few periods
    return 20.0 / min_pos;
}

namespace {

CMat3 matrix_exponential(const CMat3& b) {
    // Scaling and squaring with a Taylor series; fine at this size.
    double nrm = frobenius_norm(b);
    int s = 0;
    while (nrm > 0.25 && s < 60) {
        nrm *= 0.5;
        ++s;
    }
    const double scale = std::ldexp(1.0, -s);
    const CMat3 bs = Complex{scale, 0.0} * b;

    CMat3 term = cmat3_identity();
    CMat3 sum = term;
    for (int k = 1; k <= 18; ++k) {
        term = Complex{1.0 / k, 0.0} * (term * bs);
        sum = sum + term;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

} // namespace

ExpectationPropagator::ExpectationPropagator(const BlochMatrix& a) : a_(a) {
    const CubicRoots roots = solve_cubic(a.c2, a.c1, a.c0);
    lambda_ = roots.roots;

    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            min_gap = std::min(min_gap, std::abs(lambda_[i] - lambda_[j]));

    const double scale = std::max(1.0, std::abs(a.c2));
    spectral_ = roots.pattern != RootPattern::Degenerate && min_gap > 1e-6 * scale;
    if (!spectral_) return;

    // P_i = prod_{j != i} (A - lambda_j) / (lambda_i - lambda_j)
    for (int i = 0; i < 3; ++i) {
        CMat3 p = cmat3_identity();
        for (int j = 0; j < 3; ++j) {
            if (j == i) continue;
            CMat3 shifted = a.entries;
            for (int d = 0; d < 3; ++d) shifted[d][d] -= lambda_[j];
            p = (Complex{1.0, 0.0} / (lambda_[i] - lambda_[j])) * (p * shifted);
        }
        projector_[i] = p;
    }
}

ExpectationVector ExpectationPropagator::operator()(const ExpectationVector& v0,
                                                    double tau) const {
    if (!std::isfinite(tau)) throw std::invalid_argument("propagate: non-finite tau");
    if (spectral_) {
        CVec3 out{};
        for (int i = 0; i < 3; ++i) {
            const Complex w = std::exp(-lambda_[i] * tau);
            const CVec3 pv = projector_[i] * v0;
            for (int k = 0; k < 3; ++k) out[k] += w * pv[k];
        }
        return out;
    }
    CMat3 b = Complex{-tau, 0.0} * a_.entries;
    return matrix_exponential(b) * v0;
}

ExpectationVector propagate_expectations(const ExpectationVector& v0,
                                         const BlochMatrix& a, double tau) {
    return ExpectationPropagator(a)(v0, tau);
}

namespace {

// 2x2 complex matrices, row-major.
using M2 = std::array<Complex, 4>;

M2 mul2(const M2& a, const M2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

M2 sub2(const M2& a, const M2& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

M2 commutator2(const M2& a, const M2& b) { return sub2(mul2(a, b), mul2(b, a)); }

Complex hs_inner(const M2& a, const M2& b) { // tr(a^dagger b)
    Complex s{};
    s += std::conj(a[0]) * b[0] + std::conj(a[2]) * b[2];
    s += std::conj(a[1]) * b[1] + std::conj(a[3]) * b[3];
    return s;
}

} // namespace

double superoperator_commutator_norm(const SystemParams& p) {
    p.validate();
    const double g = dephasing_rate(p);
    const double w0 = SystemParams::omega0;
    const double eps = p.eps_tilde;
    const double del = p.delta_tilde();

    const M2 id{1.0, 0.0, 0.0, 1.0};
    const M2 sx{0.0, 1.0, 1.0, 0.0};
    const M2 sy{0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0};
    const M2 sz{1.0, 0.0, 0.0, -1.0};

    // H_S = (Omega0/2)(eps sz + del sx), hbar = 1.
    M2 h;
    for (int k = 0; k < 4; ++k) h[k] = 0.5 * w0 * (eps * sz[k] + del * sx[k]);

    const auto ham_op = [&](const M2& rho) {
        M2 c = commutator2(h, rho);
        M2 out;
        for (int k = 0; k < 4; ++k) out[k] = Complex{0.0, -1.0} * c[k];
        return out;
    };
    const auto dephase_op = [&](const M2& rho) {
        M2 c = commutator2(sz, commutator2(sz, rho));
        M2 out;
        for (int k = 0; k < 4; ++k) out[k] = -(g / 4.0) * c[k];
        return out;
    };

    // Matrix elements in the orthonormal basis {I, sx, sy, sz}/sqrt(2).
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::array<M2, 4> basis{id, sx, sy, sz};
    for (auto& e : basis)
        for (auto& z : e) z *= inv_sqrt2;

    std::array<std::array<Complex, 4>, 4> hm{}, vm{};
    for (int j = 0; j < 4; ++j) {
        const M2 hcol = ham_op(basis[j]);
        const M2 vcol = dephase_op(basis[j]);
        for (int i = 0; i < 4; ++i) {
            hm[i][j] = hs_inner(basis[i], hcol);
            vm[i][j] = hs_inner(basis[i], vcol);
        }
    }

    std::array<std::array<Complex, 4>, 4> comm{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Complex s{};
            for (int k = 0; k < 4; ++k)
                s += hm[i][k] * vm[k][j] - vm[i][k] * hm[k][j];
            comm[i][j] = s;
        }

    double fro = 0.0;
    for (const auto& row : comm)
        for (const Complex& z : row) fro += std::norm(z);
    return std::sqrt(fro);
}

} // namespace spinrelax
