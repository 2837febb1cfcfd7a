#include "spinrelax/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinrelax/basis.hpp"
#include "spinrelax/parallel.hpp"

namespace spinrelax {

const char* trace_name(TraceDirection t) {
    return t == TraceDirection::Upward ? "upward" : "downward";
}

namespace {

constexpr double kBranchMatchThreshold = 0.5;

struct DiscriminantCurve {
    double eps_tilde;
    double eta;

    double gamma(double theta) const { return 2.0 * eta * theta; }

    double at_gamma(double g) const {
        const double e2 = eps_tilde * eps_tilde;
        const double d2 = 1.0 - e2;
        // Discriminant of lambda^3 - 2g lambda^2 + (g^2+1) lambda - d2*g,
        // collapsed in g^2; matches solve_cubic's value analytically.
        const double u = g * g;
        return -4.0 * e2 * u * u + (36.0 * d2 - 27.0 * d2 * d2 - 8.0) * u - 4.0;
    }

    double at_theta(double theta) const { return at_gamma(gamma(theta)); }

    // Rounding-noise floor of at_gamma's terms.
    double band_gamma(double g) const {
        const double e2 = eps_tilde * eps_tilde;
        const double d2 = 1.0 - e2;
        const double u = g * g;
        return 1e-13
               * (4.0 * e2 * u * u + std::abs(36.0 * d2 - 27.0 * d2 * d2 - 8.0) * u
                  + 4.0);
    }

    double band(double theta) const { return band_gamma(gamma(theta)); }
};

std::string roman(std::size_t n) {
    static const char* ones[] = {"", "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX"};
    std::string out;
    while (n >= 10) {
        out += "X";
        n -= 10;
    }
    return out + ones[n];
}

// Directions present in a record, as (slot, vector) pairs.
std::vector<std::pair<int, Vec3>> record_directions(const SweepRecord& rec) {
    std::vector<std::pair<int, Vec3>> out;
    for (int i = 0; i < 3; ++i)
        if (rec.report.directions[i]) out.push_back({i, *rec.report.directions[i]});
    return out;
}

} // namespace

std::vector<SweepRecord> sweep_temperature(double eps_tilde, double eta,
                                           double theta_min, double theta_max,
                                           std::size_t n_points) {
    if (n_points < 2) throw std::invalid_argument("sweep: n_points must be >= 2");
    if (!(theta_min >= 0.0) || !(theta_max > theta_min))
        throw std::invalid_argument("sweep: invalid theta range");

    std::vector<SweepRecord> records(n_points);
    const double step = (theta_max - theta_min) / static_cast<double>(n_points - 1);

    parallel_for(n_points, [&](std::size_t i) {
        const double theta = theta_min + step * static_cast<double>(i);
        const SystemParams p = make_params(eps_tilde, eta, theta);
        const BlochMatrix a = build_bloch_matrix(p);
        SweepRecord rec;
        rec.theta = theta;
        rec.gamma = a.gamma;
        rec.params = p;
        rec.report = analyze_spectrum(a);
        if (rec.report.regime == Regime::ComplexPair && rec.report.gamma_T
            && *rec.report.gamma_T > 0.0)
            rec.ratio = rec.report.gamma_L.front() / *rec.report.gamma_T;
        records[i] = std::move(rec);
    });

    // Sequential continuity pass: branch labels plus the sign gauge override.
    int next_branch = 0;
    std::vector<std::pair<int, Vec3>> prev; // (branch, gauged direction)
    for (auto& rec : records) {
        auto dirs = record_directions(rec);
        std::vector<std::pair<int, Vec3>> current;
        std::vector<bool> claimed(prev.size(), false);
        for (auto& [slot, d] : dirs) {
            int best = -1;
            double best_score = 0.0;
            for (std::size_t j = 0; j < prev.size(); ++j) {
                if (claimed[j]) continue;
                const double score = std::abs(dot(d, prev[j].second));
                if (score > best_score) {
                    best_score = score;
                    best = static_cast<int>(j);
                }
            }
            int label;
            if (best >= 0 && best_score >= kBranchMatchThreshold) {
                claimed[best] = true;
                label = prev[best].first;
                if (dot(d, prev[best].second) < 0.0) {
                    d = -1.0 * d;
                    rec.report.directions[slot] = d;
                }
            } else {
                label = next_branch++;
            }
            rec.branch[slot] = label;
            current.push_back({label, d});
        }
        if (!current.empty()) prev = std::move(current);
    }
    return records;
}

BifurcationReport find_bifurcations(double eps_tilde, double eta, double theta_min,
                                    double theta_max, const BifurcationOptions& opts) {
    make_params(eps_tilde, eta, 0.0); // validates eps/eta
    if (!(opts.tol > 0.0)) throw std::invalid_argument("bifurcations: tol must be > 0");
    if (!(theta_min >= 0.0) || !(theta_max > theta_min))
        throw std::invalid_argument("bifurcations: invalid theta range");
    const std::size_t n = std::max<std::size_t>(opts.scan_points, 8);

    const DiscriminantCurve curve{eps_tilde, eta};
    const double d_lo = curve.at_theta(theta_min);
    const double d_hi = curve.at_theta(theta_max);
    if (std::abs(d_lo) <= curve.band(theta_min) || std::abs(d_hi) <= curve.band(theta_max))
        throw std::invalid_argument(
            "bifurcations: range endpoint inside the degeneracy band; widen the range");

    BifurcationReport rep;
    const double step = (theta_max - theta_min) / static_cast<double>(n);
    double t_prev = theta_min;
    double d_prev = d_lo;
    for (std::size_t i = 1; i <= n; ++i) {
        const double t = (i == n) ? theta_max : theta_min + step * static_cast<double>(i);
        const double d = curve.at_theta(t);
        if (d == 0.0) {
            rep.critical_thetas.push_back(t);
            rep.brackets.push_back({t, t});
            rep.residual_discriminants.push_back(0.0);
        } else if (d_prev * d < 0.0) {
            double lo = t_prev, hi = t;
            double f_lo = d_prev;
            while (hi - lo > opts.tol) {
                const double mid = 0.5 * (lo + hi);
                const double f_mid = curve.at_theta(mid);
                if (f_mid == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (f_lo * f_mid < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    f_lo = f_mid;
                }
            }
            const double crit = 0.5 * (lo + hi);
            rep.critical_thetas.push_back(crit);
            rep.brackets.push_back({t_prev, t});
            rep.residual_discriminants.push_back(curve.at_theta(crit));
        }
        t_prev = t;
        d_prev = d;
    }

    for (double tc : rep.critical_thetas) rep.critical_gammas.push_back(curve.gamma(tc));

    std::vector<double> bounds;
    bounds.push_back(theta_min);
    bounds.insert(bounds.end(), rep.critical_thetas.begin(), rep.critical_thetas.end());
    bounds.push_back(theta_max);
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        RegionInfo region;
        region.label = roman(i + 1);
        region.theta_lo = bounds[i];
        region.theta_hi = bounds[i + 1];
        const double mid = 0.5 * (bounds[i] + bounds[i + 1]);
        const double d = curve.at_theta(mid);
        region.regime = std::abs(d) <= curve.band(mid)
                            ? Regime::Degenerate
                            : (d > 0.0 ? Regime::ThreeReal : Regime::ComplexPair);
        rep.regions.push_back(region);
    }

    if (opts.jump_grid >= 2) {
        const auto sweep =
            sweep_temperature(eps_tilde, eta, theta_min, theta_max, opts.jump_grid);
        auto up = track_direction_jumps(sweep, TraceDirection::Upward);
        auto sweep_down = sweep;
        std::reverse(sweep_down.begin(), sweep_down.end());
        auto down = track_direction_jumps(sweep_down, TraceDirection::Downward);
        rep.jumps = std::move(up);
        rep.jumps.insert(rep.jumps.end(), down.begin(), down.end());
    }
    return rep;
}

namespace {

// Any-gamma window existence for the all-real-eigenvalue regime. Density
// doubles until the window is seen or the cap is reached (the window narrows
// to zero width at the boundary eps).
bool real_window_exists(double eps_tilde, double gamma_cap) {
    const DiscriminantCurve curve{eps_tilde, 1.0};
    for (std::size_t n = 2000; n <= 65536; n *= 2) {
        for (std::size_t i = 1; i <= n; ++i) {
            const double g = gamma_cap * static_cast<double>(i) / static_cast<double>(n);
            if (curve.at_gamma(g) > curve.band_gamma(g)) return true;
        }
    }
    return false;
}

} // namespace

double critical_epsilon(double eps_lo, double eps_hi, double tol) {
    if (!(eps_lo > 0.0 && eps_hi < 1.0 && eps_lo < eps_hi))
        throw std::invalid_argument("critical_epsilon: search range must be inside (0,1)");
    if (!(tol > 0.0)) throw std::invalid_argument("critical_epsilon: tol must be > 0");

    // The window's upper edge in gamma^2 is bounded by 1/(4 eps^2) + 4.5.
    const double gamma_cap = std::sqrt(1.0 / (4.0 * eps_lo * eps_lo) + 5.0);

    bool lo_has = real_window_exists(eps_lo, gamma_cap);
    bool hi_has = real_window_exists(eps_hi, gamma_cap);
    if (lo_has == hi_has)
        throw std::invalid_argument(
            "critical_epsilon: window existence does not change over the range");

    double lo = eps_lo, hi = eps_hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (real_window_exists(mid, gamma_cap) == lo_has)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// At a degenerate record, the repeated rate (the merging pair) and the
// surviving simple rate.
void split_degenerate_rates(const SpectrumReport& rep, double& double_root,
                            double& simple_root) {
    const auto& g = rep.gamma_L;
    if (std::abs(g[1] - g[0]) <= std::abs(g[2] - g[1])) {
        double_root = 0.5 * (g[0] + g[1]);
        simple_root = g[2];
    } else {
        double_root = 0.5 * (g[1] + g[2]);
        simple_root = g[0];
    }
}

} // namespace

std::vector<DirectionJump> track_direction_jumps(const std::vector<SweepRecord>& sweep,
                                                 TraceDirection trace) {
    if (sweep.size() < 2) throw std::invalid_argument("track: sweep too short");
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        const bool ordered = trace == TraceDirection::Upward
                                 ? sweep[i].theta > sweep[i - 1].theta
                                 : sweep[i].theta < sweep[i - 1].theta;
        if (!ordered)
            throw std::invalid_argument("track: sweep not sorted in trace order");
    }

    std::vector<DirectionJump> jumps;
    bool following = false;
    Vec3 followed{};
    double followed_rate = 0.0;
    std::size_t prev_count = 0;

    for (const auto& rec : sweep) {
        const auto dirs = record_directions(rec);
        if (dirs.empty()) continue;

        if (!following) {
            // Start on the branch closest to the trace's endpoint anchor.
            const Vec3 anchor = trace == TraceDirection::Upward
                                    ? hamiltonian_axis(rec.params)
                                    : Vec3{0.0, 0.0, 1.0};
            double best = -1.0;
            for (const auto& [slot, d] : dirs) {
                const double score = std::abs(dot(d, anchor));
                if (score > best) {
                    best = score;
                    followed = d;
                    followed_rate = rec.report.eigenvalues[slot].real();
                }
            }
            following = true;
            prev_count = dirs.size();
            continue;
        }

        // The followed branch vanishes when two real eigenvalues merge into
        // the complex pair and the followed rate tracks the merged pair, not
        // the survivor. Decided by eigenvalue continuity, which stays robust
        // even when the direction swing at the boundary is moderate.
        if (prev_count == 3 && dirs.size() == 1) {
            double merged_rate;
            if (rec.report.regime == Regime::ComplexPair) {
                merged_rate = *rec.report.gamma_T;
            } else {
                double simple;
                split_degenerate_rates(rec.report, merged_rate, simple);
            }
            const auto& [slot, survivor] = dirs.front();
            const double survivor_rate = rec.report.eigenvalues[slot].real();
            if (std::abs(followed_rate - merged_rate)
                < std::abs(followed_rate - survivor_rate)) {
                DirectionJump j;
                j.theta = rec.theta;
                j.from_direction = followed;
                j.to_direction = survivor;
                j.trace = trace;
                jumps.push_back(j);
                followed = survivor;
                followed_rate = survivor_rate;
                prev_count = dirs.size();
                continue;
            }
        }

        double best_score = -1.0;
        Vec3 best_dir{};
        double best_rate = 0.0;
        for (const auto& [slot, d] : dirs) {
            const double score = std::abs(dot(d, followed));
            if (score > best_score) {
                best_score = score;
                best_dir = d;
                best_rate = rec.report.eigenvalues[slot].real();
            }
        }
        followed = dot(best_dir, followed) >= 0.0 ? best_dir : -1.0 * best_dir;
        followed_rate = best_rate;
        prev_count = dirs.size();
    }

    if (!following)
        throw std::runtime_error("track: sweep carries no longitudinal direction");
    return jumps;
}

} // namespace spinrelax
