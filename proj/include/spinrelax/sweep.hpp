#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinrelax/spectrum.hpp"

namespace spinrelax {

enum class TraceDirection { Upward, Downward };

const char* trace_name(TraceDirection t);

// One temperature grid point. Directions are aligned with the eigenvalue
// slots of the report and carry branch labels assigned by continuity along
// the sweep; the sign gauge follows the previous grid point.
struct SweepRecord {
    double theta = 0.0;
    double gamma = 0.0;
    SystemParams params{};
    SpectrumReport report;
    std::optional<double> ratio; // Gamma_L / Gamma_T, complex-pair regime only
    std::array<int, 3> branch{-1, -1, -1}; // -1: no direction in that slot
};

std::vector<SweepRecord> sweep_temperature(double eps_tilde, double eta,
                                           double theta_min, double theta_max,
                                           std::size_t n_points);

struct RegionInfo {
    std::string label; // "I", "II", ...
    Regime regime = Regime::ComplexPair;
    double theta_lo = 0.0;
    double theta_hi = 0.0;
};

struct DirectionJump {
    double theta = 0.0;
    Vec3 from_direction{};
    Vec3 to_direction{};
    TraceDirection trace = TraceDirection::Upward;
};

struct BifurcationReport {
    std::vector<double> critical_thetas; // sorted
    std::vector<double> critical_gammas; // 2*eta*theta at each critical point
    std::vector<std::pair<double, double>> brackets;
    std::vector<double> residual_discriminants;
    std::vector<RegionInfo> regions;
    std::vector<DirectionJump> jumps;
};

struct BifurcationOptions {
    double tol = 1e-10;          // bisection tolerance in theta
    std::size_t scan_points = 2000;
    std::size_t jump_grid = 2001; // sweep resolution used to locate jumps
};

// Dense discriminant pre-scan over theta plus bisection on each sign-change
// bracket. Errors if a range endpoint sits inside the degeneracy band
// (widen the range). Region labels alternate with the regime sequence.
BifurcationReport find_bifurcations(double eps_tilde, double eta, double theta_min,
                                    double theta_max,
                                    const BifurcationOptions& opts = {});

// Boundary eps value above which no all-real eigenvalue window exists for any
// gamma. Bisects window existence over the search range; independent of eta.
double critical_epsilon(double eps_lo, double eps_hi, double tol = 1e-6);

// Follows one longitudinal branch through the sweep (which must be ordered in
// the trace direction) and records a jump whenever the followed branch's real
// eigenvalue merges into the complex pair. Errors if no record in the sweep
// carries a real-eigenvalue direction.
std::vector<DirectionJump> track_direction_jumps(const std::vector<SweepRecord>& sweep,
                                                 TraceDirection trace);

} // namespace spinrelax
