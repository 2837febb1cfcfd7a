#include "spinrelax/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "spinrelax/basis.hpp"

namespace spinrelax {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::ComplexPair: return "ComplexPair";
        case Regime::ThreeReal: return "ThreeReal";
        case Regime::Degenerate: return "Degenerate";
    }
    return "?";
}

Regime regime_from_name(const std::string& s) {
    if (s == "ComplexPair") return Regime::ComplexPair;
    if (s == "ThreeReal") return Regime::ThreeReal;
    if (s == "Degenerate") return Regime::Degenerate;
    throw std::invalid_argument("unknown regime: " + s);
}

namespace {

constexpr double kResidualTol = 1e-8;
constexpr double kSpacingTolFactor = 1e-8;
constexpr double kEigvecResidualTol = 1e-8;

double poly_scale(const BlochMatrix& a, double lambda) {
    const double x = std::abs(lambda);
    return std::max(1.0, x * x * x + std::abs(a.c2) * x * x + std::abs(a.c1) * x
                             + std::abs(a.c0));
}

// Left null vector of M = lambda*I - A from the largest adjugate row, with a
// pivoted 2x2 solve as fallback when the adjugate degrades.
CVec3 left_null_vector(const CMat3& m, double scale) {
    const CMat3 adj = adjugate(m);
    int best = -1;
    double best_norm = 0.0;
    for (int i = 0; i < 3; ++i) {
        double n = std::abs(adj[i][0]) + std::abs(adj[i][1]) + std::abs(adj[i][2]);
        if (n > best_norm) {
            best_norm = n;
            best = i;
        }
    }
    if (best >= 0 && best_norm > 1e-10 * scale * scale)
        return {adj[best][0], adj[best][1], adj[best][2]};

    // Fallback: fix one component to 1 and solve two of the equations
    // c^T M = 0 for the other two; keep the best-conditioned pivot choice.
    CVec3 best_c{};
    double best_res = std::numeric_limits<double>::infinity();
    for (int fixed = 0; fixed < 3; ++fixed) {
        const int i1 = (fixed + 1) % 3;
        const int i2 = (fixed + 2) % 3;
        // Unknowns c[i1], c[i2]; equations taken from columns i1, i2.
        const Complex a11 = m[i1][i1], a12 = m[i2][i1];
        const Complex a21 = m[i1][i2], a22 = m[i2][i2];
        const Complex b1 = -m[fixed][i1], b2 = -m[fixed][i2];
        const Complex dt = a11 * a22 - a12 * a21;
        if (std::abs(dt) < 1e-14 * scale * scale) continue;
        CVec3 c{};
        c[fixed] = 1.0;
        c[i1] = (b1 * a22 - b2 * a12) / dt;
        c[i2] = (a11 * b2 - a21 * b1) / dt;
        // Residual over all three columns.
        double res = 0.0;
        for (int j = 0; j < 3; ++j) {
            Complex r = c[0] * m[0][j] + c[1] * m[1][j] + c[2] * m[2][j];
            res += std::norm(r);
        }
        res = std::sqrt(res);
        if (res < best_res) {
            best_res = res;
            best_c = c;
        }
    }
    if (!std::isfinite(best_res))
        throw std::domain_error("degenerate branch point");
    return best_c;
}

} // namespace

LongitudinalMode longitudinal_mode(const BlochMatrix& a, double lambda) {
    if (!std::isfinite(lambda))
        throw std::invalid_argument("longitudinal_mode: non-finite eigenvalue");

    const double scale = poly_scale(a, lambda);
    if (std::abs(a.f(lambda)) > kResidualTol * scale)
        throw std::domain_error("lambda is not an eigenvalue of A");

    // A merged (defective) eigenvalue at a discriminant boundary has no
    // single decaying direction; flag instead of interpolating.
    const CubicRoots roots = solve_cubic(a.c2, a.c1, a.c0);
    std::array<double, 3> gaps{};
    for (int i = 0; i < 3; ++i) gaps[i] = std::abs(roots.roots[i] - Complex{lambda, 0.0});
    std::sort(gaps.begin(), gaps.end());
    const double spacing_tol = kSpacingTolFactor * std::max(1.0, std::abs(a.c2));
    if (gaps[1] < spacing_tol) // distance to the nearest *other* root
        throw std::domain_error("degenerate branch point");

    // M = lambda*I - A; rows of adj(M) span the left eigenvector.
    CMat3 m = cmat3_zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m[i][j] = (i == j ? Complex{lambda, 0.0} : Complex{}) - a.entries[i][j];

    const double entry_scale = std::max(1.0, std::abs(lambda) + std::abs(a.c2));
    CVec3 c = left_null_vector(m, entry_scale);

    double cnorm = std::sqrt(std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]));
    if (cnorm == 0.0) throw std::domain_error("degenerate branch point");
    for (auto& x : c) x /= cnorm;

    // Validate c^T A = lambda c^T.
    double res = 0.0;
    for (int j = 0; j < 3; ++j) {
        Complex r = c[0] * a.entries[0][j] + c[1] * a.entries[1][j]
                  + c[2] * a.entries[2][j] - lambda * c[j];
        res += std::norm(r);
    }
    if (std::sqrt(res) > kEigvecResidualTol * entry_scale)
        throw std::domain_error("degenerate branch point");

    // Swap-conjugate partner (c2*, c1*, c3*) is a left eigenvector too; for a
    // simple real eigenvalue it equals exp(i psi) c. Rotating by psi/2 makes c
    // swap-self-conjugate, i.e. the Hermitian representative.
    const CVec3 partner{std::conj(c[1]), std::conj(c[0]), std::conj(c[2])};
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(c[i]) > std::abs(c[k])) k = i;
    const double psi = std::arg(partner[k] / c[k]);
    const Complex rot = std::polar(1.0, psi / 2.0);
    CVec3 w{rot * c[0], rot * c[1], rot * c[2]};

    LongitudinalMode mode;
    mode.hermiticity_defect =
        std::max(std::abs(w[0] - std::conj(w[1])), std::abs(w[2].imag()));
    mode.c_plus = 0.5 * (w[0] + std::conj(w[1]));
    mode.c0 = w[2].real();

    Vec3 l = lab_vector_from_coeffs(mode.c_plus, mode.c0, a.params);
    const double ln = norm(l);
    if (ln == 0.0) throw std::domain_error("degenerate branch point");
    l = (1.0 / ln) * l;

    // Sign gauge: nonnegative overlap with the low-temperature anchor.
    const double anchor_dot = dot(l, hamiltonian_axis(a.params));
    if (anchor_dot < -1e-12) {
        l = -1.0 * l;
    } else if (std::abs(anchor_dot) <= 1e-12) {
        // Orthogonal to the anchor: deterministic tie-break.
        double key = l[2] != 0.0 ? l[2] : (l[0] != 0.0 ? l[0] : l[1]);
        if (key < 0.0) l = -1.0 * l;
    }
    mode.direction = l;
    return mode;
}

Vec3 longitudinal_direction(const BlochMatrix& a, double lambda) {
    return longitudinal_mode(a, lambda).direction;
}

SpectrumReport analyze_spectrum(const BlochMatrix& a) {
    return analyze_spectrum(a, degeneracy_tolerance(a.c2, a.c1, a.c0));
}

SpectrumReport analyze_spectrum(const BlochMatrix& a, double degeneracy_tol) {
    const CubicRoots roots = solve_cubic(a.c2, a.c1, a.c0, degeneracy_tol);

    SpectrumReport rep;
    rep.eigenvalues = roots.roots;
    rep.regime = roots.pattern;
    rep.discriminant = roots.discriminant;

    for (const Complex& z : roots.roots) {
        if (std::abs(a.f(z)) > 1e-9 * poly_scale(a, std::abs(z)))
            throw std::runtime_error("spectrum: root residual out of tolerance");
        if (z.real() < -1e-12 * std::max(1.0, std::abs(z)))
            throw std::runtime_error("spectrum: negative relaxation rate");
    }

    switch (roots.pattern) {
        case Regime::ComplexPair: {
            int real_slot = -1;
            for (int i = 0; i < 3; ++i)
                if (roots.roots[i].imag() == 0.0) real_slot = i;
            rep.gamma_L = {roots.roots[real_slot].real()};
            for (int i = 0; i < 3; ++i) {
                if (i == real_slot) continue;
                rep.gamma_T = roots.roots[i].real();
                rep.oscillation_freq = std::abs(roots.roots[i].imag());
            }
            break;
        }
        case Regime::ThreeReal:
        case Regime::Degenerate: {
            rep.gamma_L = {roots.roots[0].real(), roots.roots[1].real(),
                           roots.roots[2].real()};
            break;
        }
    }

    for (int i = 0; i < 3; ++i) {
        if (roots.roots[i].imag() != 0.0) continue;
        try {
            rep.directions[i] = longitudinal_direction(a, roots.roots[i].real());
        } catch (const std::domain_error&) {
            // merged root at a discriminant boundary: no unique direction
        }
    }
    return rep;
}

} // namespace spinrelax
