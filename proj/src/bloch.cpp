#include "spinrelax/bloch.hpp"

#include <algorithm>
#include <cmath>

namespace spinrelax {

double dephasing_rate(const SystemParams& p) {
    p.validate();
    return 2.0 * p.eta * p.theta;
}

BlochMatrix build_bloch_matrix(const SystemParams& p) {
    p.validate();
    const double eps = p.eps_tilde;
    const double del = p.delta_tilde();
    const double g = dephasing_rate(p);
    const double w0 = SystemParams::omega0;

    const double d2 = del * del;
    const double diag_pair = (d2 + 2.0 * eps * eps) * g / 2.0;
    const double off_pair = -d2 * g / 2.0;
    const double mix = -eps * del * g / 2.0;

    BlochMatrix a;
    a.entries[0][0] = Complex{diag_pair, -w0};
    a.entries[0][1] = off_pair;
    a.entries[0][2] = mix;
    a.entries[1][0] = off_pair;
    a.entries[1][1] = Complex{diag_pair, w0};
    a.entries[1][2] = mix;
    a.entries[2][0] = 2.0 * mix;
    a.entries[2][1] = 2.0 * mix;
    a.entries[2][2] = d2 * g;

    a.gamma = g;
    a.params = p;
    a.c2 = -2.0 * g;
    a.c1 = g * g + w0 * w0;
    a.c0 = -d2 * g * w0 * w0;
    return a;
}

BlochDefects bloch_defects(const BlochMatrix& a) {
    BlochDefects d;
    d.char_imag = std::max({std::abs(trace(a.entries).imag()),
                            std::abs(det(a.entries).imag()),
                            std::abs(trace_adjugate(a.entries).imag())});
    // Swap rows 1<->2 and columns 1<->2, then conjugate; must reproduce A.
    static constexpr int sw[3] = {1, 0, 2};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            worst = std::max(worst,
                             std::abs(a.entries[i][j] - std::conj(a.entries[sw[i]][sw[j]])));
    d.swap_defect = worst;
    d.row3_imag = std::max({std::abs(a.entries[2][0].imag()),
                            std::abs(a.entries[2][1].imag()),
                            std::abs(a.entries[2][2].imag())});
    return d;
}

WeakCouplingRates weak_coupling_rates(const SystemParams& p) {
    p.validate();
    const double del = p.delta_tilde();
    WeakCouplingRates r;
    if (p.theta == 0.0) {
        r.gamma_weak = p.eta * SystemParams::omega0; // coth -> 1 limit
    } else {
        const double x = 1.0 / (2.0 * p.theta);
        r.gamma_weak = p.eta * SystemParams::omega0 / std::tanh(x);
    }
    r.gamma_L = del * del * r.gamma_weak;
    r.gamma_T = r.gamma_L / 2.0;
    return r;
}

} // namespace spinrelax
