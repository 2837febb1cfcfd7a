// Small fixed-size 3x3 linear algebra used throughout; no external deps.

#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace spinrelax {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using CMat3 = std::array<std::array<Complex, 3>, 3>;

inline CMat3 cmat3_zero() {
    return CMat3{{{Complex{}, Complex{}, Complex{}},
                  {Complex{}, Complex{}, Complex{}},
                  {Complex{}, Complex{}, Complex{}}}};
}

inline CMat3 cmat3_identity() {
    CMat3 m = cmat3_zero();
    m[0][0] = m[1][1] = m[2][2] = 1.0;
    return m;
}

inline CMat3 operator*(const CMat3& a, const CMat3& b) {
    CMat3 c = cmat3_zero();
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j)
                c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline CMat3 operator+(const CMat3& a, const CMat3& b) {
    CMat3 c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            c[i][j] = a[i][j] + b[i][j];
    return c;
}

inline CMat3 operator*(Complex s, const CMat3& a) {
    CMat3 c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            c[i][j] = s * a[i][j];
    return c;
}

inline CVec3 operator*(const CMat3& a, const CVec3& v) {
    CVec3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r[i] += a[i][j] * v[j];
    return r;
}

inline Complex trace(const CMat3& a) { return a[0][0] + a[1][1] + a[2][2]; }

inline Complex det(const CMat3& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
         - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
         + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

// Sum of principal 2x2 minors == trace of the adjugate.
inline Complex trace_adjugate(const CMat3& a) {
    Complex m01 = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    Complex m02 = a[0][0] * a[2][2] - a[0][2] * a[2][0];
    Complex m12 = a[1][1] * a[2][2] - a[1][2] * a[2][1];
    return m01 + m02 + m12;
}

// Transpose of the cofactor matrix; rows of adj(M) are left null vectors
// of M when det(M) = 0.
inline CMat3 adjugate(const CMat3& a) {
    CMat3 c;
    c[0][0] = a[1][1] * a[2][2] - a[1][2] * a[2][1];
    c[0][1] = a[0][2] * a[2][1] - a[0][1] * a[2][2];
    c[0][2] = a[0][1] * a[1][2] - a[0][2] * a[1][1];
    c[1][0] = a[1][2] * a[2][0] - a[1][0] * a[2][2];
    c[1][1] = a[0][0] * a[2][2] - a[0][2] * a[2][0];
    c[1][2] = a[0][2] * a[1][0] - a[0][0] * a[1][2];
    c[2][0] = a[1][0] * a[2][1] - a[1][1] * a[2][0];
    c[2][1] = a[0][1] * a[2][0] - a[0][0] * a[2][1];
    c[2][2] = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    return c;
}

inline double frobenius_norm(const CMat3& a) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            s += std::norm(a[i][j]);
    return std::sqrt(s);
}

inline double norm(const Vec3& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 operator*(double s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

} // namespace spinrelax
