#include "spinrelax/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spinrelax/rng.hpp"

namespace spinrelax {

namespace {
constexpr double kMembershipTol = 1e-10;
constexpr double kCriterionTol = 1e-12;
} // namespace

CharFunctionals char_functionals(const CMat3& m) {
    for (const auto& row : m)
        for (const Complex& z : row)
            if (!(std::isfinite(z.real()) && std::isfinite(z.imag())))
                throw std::invalid_argument("char_functionals: non-finite entry");

    const Complex tr = trace(m);
    const Complex dt = det(m);
    const Complex ta = trace_adjugate(m);

    CharFunctionals fn;
    fn.membership_defect =
        std::max({std::abs(tr.imag()), std::abs(dt.imag()), std::abs(ta.imag())});
    if (fn.membership_defect > kMembershipTol)
        throw std::domain_error("matrix does not have a real characteristic polynomial");

    fn.trace = tr.real();
    fn.det = dt.real();
    fn.tr_adj = ta.real();
    // f(lambda) = lambda^3 - tr lambda^2 + tr_adj lambda - det
    fn.f_at_trace = fn.tr_adj * fn.trace - fn.det;
    const double h = fn.trace / 2.0;
    fn.f_at_half_trace = ((h - fn.trace) * h + fn.tr_adj) * h - fn.det;
    return fn;
}

bool nonneg_real_parts_criterion(const CharFunctionals& fn) {
    return fn.trace >= -kCriterionTol && fn.det >= -kCriterionTol
        && fn.tr_adj >= -kCriterionTol && fn.f_at_trace >= -kCriterionTol;
}

bool triangle_criterion(const CharFunctionals& fn) {
    if (!nonneg_real_parts_criterion(fn))
        throw std::domain_error("triangle criterion requires nonnegative real parts");
    return fn.f_at_half_trace >= -kCriterionTol;
}

InequalityReport check_relaxation_inequalities(const SpectrumReport& rep) {
    InequalityReport out;
    out.regime = rep.regime;
    out.boundary = rep.regime == Regime::Degenerate;

    if (rep.regime == Regime::ComplexPair) {
        out.min_slack = 2.0 * rep.gamma_T.value() - rep.gamma_L.front();
    } else {
        const auto& g = rep.gamma_L;
        out.min_slack = std::min({g[0] + g[1] - g[2], g[1] + g[2] - g[0],
                                  g[2] + g[0] - g[1]});
    }
    out.holds = out.min_slack >= -kCriterionTol;
    return out;
}

CMat3 companion_matrix(double c2, double c1, double c0) {
    CMat3 m = cmat3_zero();
    m[0][2] = -c0;
    m[1][0] = 1.0;
    m[1][2] = -c1;
    m[2][1] = 1.0;
    m[2][2] = -c2;
    return m;
}

namespace {

// Random real cubic built from its roots so positive and negative real parts
// are both well represented: either three reals in [-2, 3] or one real plus
// a conjugate pair with Re in [-2, 3].
void random_cubic_coeffs(const CounterRng& rng, std::uint64_t base, double& c2,
                         double& c1, double& c0) {
    if (rng.uniform(base) < 0.5) {
        const double r1 = rng.uniform(base + 1, -2.0, 3.0);
        const double r2 = rng.uniform(base + 2, -2.0, 3.0);
        const double r3 = rng.uniform(base + 3, -2.0, 3.0);
        c2 = -(r1 + r2 + r3);
        c1 = r1 * r2 + r1 * r3 + r2 * r3;
        c0 = -r1 * r2 * r3;
    } else {
        const double r = rng.uniform(base + 1, -2.0, 3.0);
        const double re = rng.uniform(base + 2, -2.0, 3.0);
        const double im = rng.uniform(base + 3, 0.05, 3.0);
        const double mag2 = re * re + im * im;
        c2 = -(r + 2.0 * re);
        c1 = mag2 + 2.0 * re * r;
        c0 = -r * mag2;
    }
}

// Haar-ish random unitary: modified Gram-Schmidt of a complex Gaussian matrix.
CMat3 random_unitary(const CounterRng& rng, std::uint64_t base) {
    CMat3 u;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            u[i][j] = Complex{rng.gaussian(base + 2 * (3 * i + j)),
                              rng.gaussian(base + 2 * (3 * i + j) + 1)};
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < j; ++k) {
            Complex proj{};
            for (int i = 0; i < 3; ++i) proj += std::conj(u[i][k]) * u[i][j];
            for (int i = 0; i < 3; ++i) u[i][j] -= proj * u[i][k];
        }
        double n = 0.0;
        for (int i = 0; i < 3; ++i) n += std::norm(u[i][j]);
        n = std::sqrt(n);
        for (int i = 0; i < 3; ++i) u[i][j] /= n;
    }
    return u;
}

CMat3 conj_transpose(const CMat3& m) {
    CMat3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            t[i][j] = std::conj(m[j][i]);
    return t;
}

} // namespace

CMat3 sample_real_char_matrix(SampleStyle style, std::uint64_t seed,
                              std::uint64_t index) {
    // Stride the counter space generously; one sample never draws more than 64.
    const std::uint64_t base = index * 64;
    switch (style) {
        case SampleStyle::RealCompanion: {
            const CounterRng rng(seed, 1);
            double c2, c1, c0;
            random_cubic_coeffs(rng, base, c2, c1, c0);
            return companion_matrix(c2, c1, c0);
        }
        case SampleStyle::UnitaryConjugated: {
            // Same cubic stream as RealCompanion: the matrix at (seed, index)
            // is that companion conjugated by a random unitary.
            const CounterRng rng(seed, 1);
            double c2, c1, c0;
            random_cubic_coeffs(rng, base, c2, c1, c0);
            const CMat3 c = companion_matrix(c2, c1, c0);
            const CounterRng urng(seed, 3);
            const CMat3 u = random_unitary(urng, base);
            return u * c * conj_transpose(u); // similarity: spectrum preserved
        }
        case SampleStyle::Bloch: {
            const CounterRng rng(seed, 4);
            SystemParams p;
            p.eps_tilde = rng.uniform(base);
            p.eta = rng.uniform(base + 1, 0.05, 5.0);
            p.theta = rng.uniform(base + 2, 0.0, 5.0);
            return build_bloch_matrix(p).entries;
        }
    }
    throw std::logic_error("unreachable sample style");
}

} // namespace spinrelax
