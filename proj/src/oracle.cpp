#include "spinrelax/oracle.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

namespace spinrelax::oracle {

std::array<Complex, 3> eigenvalues(const CMat3& m) {
    Eigen::Matrix3cd em;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            em(i, j) = m[i][j];
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(em, false);
    std::array<Complex, 3> out;
    for (int i = 0; i < 3; ++i) out[i] = solver.eigenvalues()(i);
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

void char_coeffs_numeric(const CMat3& m, double& c2, double& c1, double& c0) {
    c2 = -trace(m).real();
    c1 = trace_adjugate(m).real();
    c0 = -det(m).real();
}

} // namespace spinrelax::oracle
