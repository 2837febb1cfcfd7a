#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinrelax {

// Dimensionless model inputs. Internal units: hbar = k_B = 1 and the spin
// eigenfrequency Omega0 = 1, so rates are in units of Omega0 and the
// temperature enters as theta = k_B T / (hbar Omega0).
struct SystemParams {
    double eps_tilde = 0.0; // bias fraction eps/(hbar Omega0), in [0, 1]
    double eta = 1.0;       // Ohmic coupling strength, > 0
    double theta = 0.0;     // dimensionless temperature, >= 0

    static constexpr double omega0 = 1.0;

    // delta_tilde is derived, never stored: eps^2 + delta^2 = 1.
    double delta_tilde() const { return std::sqrt((1.0 - eps_tilde) * (1.0 + eps_tilde)); }

    void validate() const {
        if (!(std::isfinite(eps_tilde) && std::isfinite(eta) && std::isfinite(theta)))
            throw std::invalid_argument("SystemParams: non-finite field");
        if (eps_tilde < 0.0 || eps_tilde > 1.0)
            throw std::invalid_argument("eps-tilde out of [0,1]");
        if (!(eta > 0.0))
            throw std::invalid_argument("eta must be > 0");
        if (theta < 0.0)
            throw std::invalid_argument("theta must be >= 0");
    }
};

inline SystemParams make_params(double eps_tilde, double eta, double theta) {
    SystemParams p{eps_tilde, eta, theta};
    p.validate();
    return p;
}

} // namespace spinrelax
