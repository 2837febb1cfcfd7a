// Acceptance suite: one line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "spinrelax/dynamics.hpp"
#include "spinrelax/io.hpp"
#include "spinrelax/sweep.hpp"
#include "spinrelax/verify.hpp"

using namespace spinrelax;

namespace {

constexpr std::uint64_t kSeed = 2024;

int g_failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) { return format_sig12(x); }

int direction_slot(const SpectrumReport& rep) {
    for (int i = 0; i < 3; ++i)
        if (rep.directions[i]) return i;
    return -1;
}

void criterion_1_sign_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    const EquivalenceResult r = run_prop1_equivalence(100000, kSeed);
    std::ostringstream os;
    os << "nonneg-real-parts criterion vs eigenvalue oracle, 1e5 samples x 3 styles: "
       << r.evaluated << " evaluated, " << r.excluded << " boundary-excluded, "
       << r.disagreements << " disagreements, " << fmt(seconds_since(t0)) << " s";
    report(1, r.disagreements == 0 && r.evaluated > 50000, os.str());
}

void criterion_2_triangle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    const EquivalenceResult r = run_prop2_equivalence(100000, kSeed);
    std::ostringstream os;
    os << "triangle criterion vs direct inequalities: " << r.evaluated
       << " evaluated, " << r.filtered << " hypothesis-filtered, " << r.excluded
       << " boundary-excluded, " << r.disagreements << " disagreements, "
       << fmt(seconds_since(t0)) << " s";
    report(2, r.disagreements == 0 && r.evaluated > 10000, os.str());
}

GridResult g_grid; // shared between criteria 3 and 4

void criterion_3_inequalities() {
    g_grid = run_inequality_grid(400);
    std::ostringstream os;
    os << "2*Gamma_T >= Gamma_L and the rate triangle over " << g_grid.points
       << " grid points: " << g_grid.inequality_violations
       << " violations, worst slack " << fmt(g_grid.worst_slack);
    report(3, g_grid.inequality_violations == 0 && g_grid.worst_slack >= -1e-12,
           os.str());
}

void criterion_4_trace_sum_rule() {
    std::ostringstream os;
    os << "|sum Re lambda - tr A| (tr A = 2 gamma) over the same grid: worst "
       << fmt(g_grid.worst_trace_residual) << ", " << g_grid.trace_violations
       << " above 1e-10";
    report(4, g_grid.trace_violations == 0 && g_grid.worst_trace_residual <= 1e-10,
           os.str());
}

void criterion_5_eps0_analytics() {
    bool ok = true;
    std::ostringstream os;

    double worst_rate = 0.0, worst_ratio = 0.0;
    for (int i = 1; i <= 90; ++i) {
        const double theta = 0.01 * i; // gamma = 2*theta < 2
        const SpectrumReport rep =
            analyze_spectrum(build_bloch_matrix(make_params(0.0, 1.0, theta)));
        worst_rate = std::max(worst_rate,
                              std::abs(rep.gamma_L.front() - 2.0 * theta));
        worst_ratio = std::max(
            worst_ratio, std::abs(rep.gamma_L.front() / *rep.gamma_T - 2.0));
    }
    ok = ok && worst_rate <= 1e-12 && worst_ratio <= 1e-12;

    double worst_crit = 0.0;
    for (double eta : {0.5, 1.0, 2.0}) {
        BifurcationOptions opts;
        opts.jump_grid = 0;
        const auto rep = find_bifurcations(0.0, eta, 0.02 / eta, 3.0 / eta, opts);
        if (rep.critical_thetas.size() != 1) {
            ok = false;
            continue;
        }
        worst_crit = std::max(worst_crit,
                              std::abs(rep.critical_thetas.front() - 1.0 / eta));
    }
    ok = ok && worst_crit <= 1e-8;

    os << "eps=0: |Gamma_L - gamma| <= " << fmt(worst_rate)
       << ", |ratio - 2| <= " << fmt(worst_ratio)
       << ", |theta_c - 1/eta| <= " << fmt(worst_crit);
    report(5, ok, os.str());
}

std::vector<double> g_criticals_eps02; // shared with criterion 7

void criterion_6_regime_structure() {
    bool ok = true;
    std::ostringstream os;

    BifurcationOptions opts;
    opts.jump_grid = 0;
    const auto two = find_bifurcations(0.2, 1.0, 1e-3, 3.0, opts);
    g_criticals_eps02 = two.critical_thetas;
    ok = ok && two.critical_thetas.size() == 2 && two.regions.size() == 3
         && two.regions[0].regime == Regime::ComplexPair
         && two.regions[1].regime == Regime::ThreeReal
         && two.regions[2].regime == Regime::ComplexPair;

    std::size_t none_count = 0;
    for (double eps : {0.4, 0.6}) {
        const auto none = find_bifurcations(eps, 1.0, 1e-3, 50.0, opts);
        none_count += none.critical_thetas.size();
    }
    ok = ok && none_count == 0;

    const double eps_star = critical_epsilon(0.2, 0.4);
    ok = ok && eps_star > 0.2 && eps_star < 0.4;

    os << "eps=0.2: " << two.critical_thetas.size() << " critical thetas";
    if (two.critical_thetas.size() == 2)
        os << " (" << fmt(two.critical_thetas[0]) << ", "
           << fmt(two.critical_thetas[1]) << ")";
    os << "; eps in {0.4, 0.6}: " << none_count
       << " critical thetas; boundary eps* = " << fmt(eps_star);
    report(6, ok, os.str());
}

void criterion_7_hysteresis() {
    bool ok = g_criticals_eps02.size() == 2;
    std::ostringstream os;

    auto sweep = sweep_temperature(0.2, 1.0, 1e-4, 3.0, 3001);
    const double grid_step = sweep[1].theta - sweep[0].theta;
    const auto up = track_direction_jumps(sweep, TraceDirection::Upward);
    auto down_sweep = sweep;
    std::reverse(down_sweep.begin(), down_sweep.end());
    const auto down = track_direction_jumps(down_sweep, TraceDirection::Downward);

    ok = ok && up.size() == 1 && down.size() == 1;
    double theta_a = 0.0, theta_c = 0.0;
    if (ok) {
        theta_a = up.front().theta;
        theta_c = down.front().theta;
        ok = ok && theta_a > theta_c;
        ok = ok && std::abs(theta_a - g_criticals_eps02[1]) <= 2.0 * grid_step;
        ok = ok && std::abs(theta_c - g_criticals_eps02[0]) <= 2.0 * grid_step;
    }

    // Endpoint anchors: theta_min <= 1e-3/eta and theta_max >= 1e3/eta.
    const SystemParams p_lo = make_params(0.2, 1.0, 1e-4);
    const SpectrumReport rep_lo = analyze_spectrum(build_bloch_matrix(p_lo));
    const SpectrumReport rep_hi =
        analyze_spectrum(build_bloch_matrix(make_params(0.2, 1.0, 2000.0)));
    const int slot_lo = direction_slot(rep_lo);
    const int slot_hi = direction_slot(rep_hi);
    double lo_err = 1.0, hi_err = 1.0;
    if (slot_lo >= 0 && slot_hi >= 0) {
        lo_err = norm(*rep_lo.directions[slot_lo] - hamiltonian_axis(p_lo));
        hi_err = norm(*rep_hi.directions[slot_hi] - Vec3{0.0, 0.0, 1.0});
    }
    ok = ok && lo_err <= 1e-3 && hi_err <= 1e-2;

    os << "eps=0.2 jumps: upward at " << fmt(theta_a) << ", downward at "
       << fmt(theta_c) << " (grid step " << fmt(grid_step)
       << "); endpoint errors " << fmt(lo_err) << " / " << fmt(hi_err);
    report(7, ok, os.str());
}

void criterion_8_dynamics_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const DynamicsResult r = run_dynamics_oracle(100, kSeed);
    std::ostringstream os;
    os << "RK4 vs exp(-A tau) over " << r.cases << " cases: worst deviation "
       << fmt(r.worst_oracle_deviation) << "; stationary "
       << fmt(r.stationary_deviation) << "; contractivity violations "
       << r.contractivity_violations << "; decay-fit rel err "
       << fmt(r.worst_decay_fit_relerr) << "; " << fmt(seconds_since(t0)) << " s";
    report(8,
           r.failures == 0 && r.worst_oracle_deviation <= 1e-8
               && r.stationary_deviation <= 1e-12 && r.contractivity_violations == 0
               && r.worst_decay_fit_relerr <= 1e-4,
           os.str());
}

void criterion_9_commutator() {
    const double zero_eps = superoperator_commutator_norm(make_params(1.0, 1.0, 1.0));
    const double zero_theta = superoperator_commutator_norm(make_params(0.2, 1.0, 0.0));
    const double generic = superoperator_commutator_norm(make_params(0.2, 1.0, 1.0));
    const bool ok = zero_eps <= 1e-14 && zero_theta <= 1e-14 && generic > 1e-6;
    std::ostringstream os;
    os << "superoperator commutator norm: eps=1 -> " << fmt(zero_eps)
       << ", theta=0 -> " << fmt(zero_theta) << ", generic -> " << fmt(generic);
    report(9, ok, os.str());
}

void criterion_10_determinism() {
    const auto sweep_once = [] {
        return sweep_csv(sweep_temperature(0.2, 1.0, 1e-4, 3.0, 501));
    };
    const bool sweep_same = sweep_once() == sweep_once();

    const auto verify_once = [] {
        nlohmann::json j;
        j["prop1"] = to_json(run_prop1_equivalence(2000, 7));
        j["dynamics"] = to_json(run_dynamics_oracle(5, 7));
        return j.dump();
    };
    const bool verify_same = verify_once() == verify_once();

    const auto bif_once = [] {
        return to_json(find_bifurcations(0.2, 1.0, 1e-3, 3.0)).dump();
    };
    const bool bif_same = bif_once() == bif_once();

    std::ostringstream os;
    os << "byte-identical reruns: sweep " << (sweep_same ? "yes" : "NO")
       << ", verify " << (verify_same ? "yes" : "NO") << ", bifurcations "
       << (bif_same ? "yes" : "NO");
    report(10, sweep_same && verify_same && bif_same, os.str());
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();

    criterion_1_sign_equivalence();
    criterion_2_triangle_equivalence();
    criterion_3_inequalities();
    criterion_4_trace_sum_rule();
    criterion_5_eps0_analytics();
    criterion_6_regime_structure();
    criterion_7_hysteresis();
    criterion_8_dynamics_oracle();
    criterion_9_commutator();
    criterion_10_determinism();

    std::printf("%d/10 criteria passed in %s s\n", 10 - g_failures,
                format_sig12(seconds_since(t0)).c_str());
    return g_failures == 0 ? 0 : 1;
}
