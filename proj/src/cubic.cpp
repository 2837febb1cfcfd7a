#include "spinrelax/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinrelax {

namespace {

// Compensated Horner evaluation of x^3 + c2 x^2 + c1 x + c0. The plain
// double evaluation carries O(|x|^3 * eps) noise, which at |x| ~ 1e3 swamps
// Newton near ill-conditioned roots; the error-free transformations keep the
// residual trustworthy down to the root's ulp.
struct DD {
    double hi, lo;
};

DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

double eval_accurate(double c2, double c1, double c0, double x) {
    DD acc = two_sum(x, c2);
    DD p = two_prod(acc.hi, x);
    double lo = std::fma(acc.lo, x, p.lo);
    DD s = two_sum(p.hi, c1);
    lo += s.lo;
    p = two_prod(s.hi, x);
    lo = std::fma(lo, x, p.lo);
    s = two_sum(p.hi, c0);
    return s.hi + (lo + s.lo);
}


// Newton to the floating-point fixed point with the compensated residual,
// keeping the best iterate. The seed from the closed form can carry
// cancellation error many orders above ulp at large |c2|.
double polish_real(double c2, double c1, double c0, double x) {
    double best = x;
    double best_f = std::abs(eval_accurate(c2, c1, c0, x));
    const double scale = std::abs(x) + std::abs(c2) + 1.0;
    for (int it = 0; it < 6; ++it) {
        const double fp = (3.0 * x + 2.0 * c2) * x + c1;
        if (std::abs(fp) < 1e-14 * scale * scale) break; // flat slope: stop
        const double step = eval_accurate(c2, c1, c0, x) / fp;
        x -= step;
        const double f = std::abs(eval_accurate(c2, c1, c0, x));
        if (f < best_f) {
            best_f = f;
            best = x;
        }
        if (std::abs(step) <= std::abs(x) * 1e-17) break;
    }
    return best;
}

// c0 == 0: an exact zero root plus the quadratic lambda^2 + c2 lambda + c1.
// Solving it directly keeps the structural zero modes exact (no rounding
// residue on conserved components or on the zero-temperature pair).
CubicRoots solve_with_zero_root(double c2, double c1, double degeneracy_tol) {
    CubicRoots out;
    const double qd = c2 * c2 - 4.0 * c1;
    // Cubic discriminant of {0, quadratic roots} collapses to c1^2 * qd.
    out.discriminant = c1 * c1 * qd;

    if (out.discriminant > degeneracy_tol) {
        out.pattern = RootPattern::ThreeReal;
        const double sq = std::sqrt(qd);
        const double r1 = (c2 >= 0.0) ? (-c2 - sq) / 2.0 : (-c2 + sq) / 2.0;
        const double r2 = c1 / r1;
        out.roots = {Complex{0.0, 0.0}, Complex{r1, 0.0}, Complex{r2, 0.0}};
    } else if (out.discriminant < -degeneracy_tol) {
        out.pattern = RootPattern::ComplexPair;
        const Complex z{-c2 / 2.0, std::sqrt(-qd) / 2.0};
        out.roots = {Complex{0.0, 0.0}, std::conj(z), z};
    } else {
        out.pattern = RootPattern::Degenerate;
        const double small = 1e-12 * std::max(1.0, c2 * c2);
        if (std::abs(c1) <= small) {
            if (std::abs(c2) <= 1e-12)
                out.roots = {Complex{}, Complex{}, Complex{}};
            else
                out.roots = {Complex{}, Complex{}, Complex{-c2, 0.0}};
        } else {
            out.roots = {Complex{0.0, 0.0}, Complex{-c2 / 2.0, 0.0},
                         Complex{-c2 / 2.0, 0.0}};
        }
    }
    std::sort(out.roots.begin(), out.roots.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

} // namespace

CubicRoots solve_cubic(double c2, double c1, double c0) {
    return solve_cubic(c2, c1, c0, degeneracy_tolerance(c2, c1, c0));
}

CubicRoots solve_cubic(double c2, double c1, double c0, double degeneracy_tol) {
    if (!(std::isfinite(c2) && std::isfinite(c1) && std::isfinite(c0)))
        throw std::invalid_argument("solve_cubic: non-finite coefficient");

    if (c0 == 0.0) return solve_with_zero_root(c2, c1, degeneracy_tol);

    // Depressed form t^3 + p t + q with lambda = t - c2/3.
    const double shift = c2 / 3.0;
    const double p = c1 - c2 * c2 / 3.0;
    const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;

    CubicRoots out;
    out.discriminant = -4.0 * p * p * p - 27.0 * q * q;

    if (out.discriminant > degeneracy_tol) {
        out.pattern = RootPattern::ThreeReal;
        // p < 0 here; three distinct real roots via the trigonometric form.
        const double m = 2.0 * std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (p * m);
        arg = std::clamp(arg, -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            const double t = m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
            out.roots[k] = Complex{polish_real(c2, c1, c0, t - shift), 0.0};
        }
    } else if (out.discriminant < -degeneracy_tol) {
        out.pattern = RootPattern::ComplexPair;
        const double s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        // Take the cbrt of the larger-magnitude branch to avoid cancellation.
        const double w = (q >= 0.0) ? (-q / 2.0 - s) : (-q / 2.0 + s);
        const double u = std::cbrt(w);
        const double v = (u == 0.0) ? 0.0 : -p / (3.0 * u);
        const double real_root = polish_real(c2, c1, c0, (u + v) - shift);
        // The pair from the exact root-sum and pairwise-product identities:
        // keeps Gamma_L + 2*Gamma_T = -c2 at ulp level.
        const double pair_sum = -c2 - real_root;
        const double pair_re = pair_sum / 2.0;
        const double pair_prod = c1 - real_root * pair_sum;
        double im2 = pair_prod - pair_re * pair_re;
        if (!(im2 > 0.0)) im2 = 0.75 * (u - v) * (u - v); // boundary fallback
        const Complex z{pair_re, std::sqrt(im2)};
        out.roots[0] = Complex{real_root, 0.0};
        out.roots[1] = std::conj(z);
        out.roots[2] = z;
    } else {
        out.pattern = RootPattern::Degenerate;
        const double p_scale = std::max(1.0, c2 * c2);
        if (std::abs(p) < 1e-12 * p_scale) {
            // Triple root.
            const double r = std::cbrt(-q) - shift;
            out.roots = {Complex{r, 0.0}, Complex{r, 0.0}, Complex{r, 0.0}};
        } else {
            // Double root r plus simple root s (kept unpolished: the double
            // root is a critical point of f, where Newton is undefined).
            const double r = -1.5 * q / p;
            const double simple = polish_real(c2, c1, c0, 3.0 * q / p - shift);
            out.roots = {Complex{r - shift, 0.0}, Complex{r - shift, 0.0},
                         Complex{simple, 0.0}};
        }
    }

    std::sort(out.roots.begin(), out.roots.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    return out;
}

} // namespace spinrelax
