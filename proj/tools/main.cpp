// spinrelax CLI: spectral analysis, temperature sweeps, bifurcation reports,
// master-equation trajectories and randomized verification suites.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spinrelax/dynamics.hpp"
#include "spinrelax/io.hpp"
#include "spinrelax/svg.hpp"
#include "spinrelax/sweep.hpp"
#include "spinrelax/verify.hpp"

namespace {

using namespace spinrelax;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitIoFailure = 3;

struct ParamFlags {
    double eps_tilde = 0.0;
    double eta = 1.0;
    std::optional<double> theta;
    std::optional<double> kelvin;
    std::optional<double> hbar_omega0;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f, bool with_theta) {
    cmd->add_option("--eps-tilde", f.eps_tilde, "bias fraction, in [0,1]")->required();
    cmd->add_option("--eta", f.eta, "Ohmic coupling strength, > 0")->required();
    if (with_theta) {
        cmd->add_option("--theta", f.theta, "dimensionless temperature k_B T / (hbar Omega0)");
        cmd->add_option("--kelvin", f.kelvin, "temperature in Kelvin (with --hbar-omega0)");
        cmd->add_option("--hbar-omega0", f.hbar_omega0,
                        "level splitting hbar*Omega0 expressed in Kelvin");
    }
}

SystemParams resolve_params(const ParamFlags& f) {
    double theta;
    if (f.kelvin || f.hbar_omega0) {
        if (!(f.kelvin && f.hbar_omega0))
            throw std::invalid_argument("--kelvin and --hbar-omega0 must be given together");
        if (f.theta)
            throw std::invalid_argument("--theta conflicts with --kelvin/--hbar-omega0");
        if (!(*f.hbar_omega0 > 0.0))
            throw std::invalid_argument("--hbar-omega0 must be > 0");
        theta = *f.kelvin / *f.hbar_omega0;
    } else if (f.theta) {
        theta = *f.theta;
    } else {
        throw std::invalid_argument("temperature missing: give --theta or --kelvin/--hbar-omega0");
    }
    return make_params(f.eps_tilde, f.eta, theta);
}

void emit(const std::string& content, const std::string& path) {
    if (path.empty())
        std::cout << content;
    else
        write_text_file(path, content);
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void print_spectrum_human(const SystemParams& p, const BlochMatrix& a,
                          const SpectrumReport& rep) {
    std::cout << "eps_tilde=" << format_sig12(p.eps_tilde)
              << " eta=" << format_sig12(p.eta) << " theta=" << format_sig12(p.theta)
              << " gamma=" << format_sig12(a.gamma) << "\n";
    std::cout << "regime: " << regime_name(rep.regime)
              << "  discriminant=" << format_sig12(rep.discriminant) << "\n";
    for (int i = 0; i < 3; ++i) {
        const Complex z = rep.eigenvalues[i];
        std::cout << "lambda" << i + 1 << " = " << format_sig12(z.real());
        if (z.imag() != 0.0) std::cout << (z.imag() > 0 ? " + " : " - ")
                                       << format_sig12(std::abs(z.imag())) << "i";
        if (rep.directions[i]) {
            const Vec3& l = *rep.directions[i];
            std::cout << "   l = (" << format_sig12(l[0]) << ", " << format_sig12(l[1])
                      << ", " << format_sig12(l[2]) << ")";
        }
        std::cout << "\n";
    }
    std::cout << "Gamma_L:";
    for (double g : rep.gamma_L) std::cout << ' ' << format_sig12(g);
    std::cout << "\n";
    if (rep.gamma_T)
        std::cout << "Gamma_T: " << format_sig12(*rep.gamma_T)
                  << "  oscillation_freq: " << format_sig12(*rep.oscillation_freq)
                  << "\n";
    if (rep.gamma_T && *rep.gamma_T > 0.0)
        std::cout << "Gamma_L/Gamma_T: "
                  << format_sig12(rep.gamma_L.front() / *rep.gamma_T) << "\n";
}

std::vector<PlotSeries> sweep_rate_series(const std::vector<SweepRecord>& records) {
    std::vector<PlotSeries> series(4);
    series[0].label = "Gamma_L(1)";
    series[1].label = "Gamma_L(2)";
    series[2].label = "Gamma_L(3)";
    series[3].label = "Gamma_T";
    const double nan = std::nan("");
    for (const auto& rec : records) {
        for (std::size_t k = 0; k < 3; ++k)
            series[k].points.push_back(
                {rec.theta, k < rec.report.gamma_L.size() ? rec.report.gamma_L[k] : nan});
        series[3].points.push_back(
            {rec.theta, rec.report.gamma_T ? *rec.report.gamma_T : nan});
    }
    return series;
}

std::vector<PlotSeries> sweep_direction_series(const std::vector<SweepRecord>& records) {
    std::vector<PlotSeries> series(9);
    const char axes[] = {'x', 'y', 'z'};
    for (int slot = 0; slot < 3; ++slot)
        for (int c = 0; c < 3; ++c)
            series[3 * slot + c].label =
                std::string("l") + axes[c] + std::to_string(slot + 1);
    const double nan = std::nan("");
    for (const auto& rec : records)
        for (int slot = 0; slot < 3; ++slot)
            for (int c = 0; c < 3; ++c)
                series[3 * slot + c].points.push_back(
                    {rec.theta,
                     rec.report.directions[slot] ? (*rec.report.directions[slot])[c] : nan});
    return series;
}

int cmd_spectrum(const ParamFlags& flags, bool as_json) {
    const SystemParams p = resolve_params(flags);
    const BlochMatrix a = build_bloch_matrix(p);
    const SpectrumReport rep = analyze_spectrum(a);
    if (as_json)
        std::cout << json_text(to_json(rep));
    else
        print_spectrum_human(p, a, rep);
    return kExitOk;
}

int cmd_sweep(const ParamFlags& flags, double theta_min, double theta_max,
              std::size_t n_points, const std::string& out,
              const std::string& json_path, const std::string& svg_prefix) {
    const auto records =
        sweep_temperature(flags.eps_tilde, flags.eta, theta_min, theta_max, n_points);
    emit(sweep_csv(records), out);
    if (!json_path.empty()) write_text_file(json_path, json_text(to_json(records)));
    if (!svg_prefix.empty()) {
        write_text_file(svg_prefix + "_rates.svg",
                        render_line_plot("Relaxation constants vs theta", "theta",
                                         "rate / Omega0", sweep_rate_series(records)));
        PlotSeries ratio{"Gamma_L/Gamma_T", {}};
        const double nan = std::nan("");
        for (const auto& rec : records)
            ratio.points.push_back({rec.theta, rec.ratio ? *rec.ratio : nan});
        write_text_file(svg_prefix + "_ratio.svg",
                        render_line_plot("Gamma_L/Gamma_T vs theta", "theta", "ratio",
                                         {ratio}));
        write_text_file(svg_prefix + "_directions.svg",
                        render_line_plot("Longitudinal direction components", "theta",
                                         "component", sweep_direction_series(records)));
    }
    return kExitOk;
}

int cmd_bifurcations(const ParamFlags& flags, double theta_min, double theta_max,
                     const BifurcationOptions& opts, const std::string& out) {
    const BifurcationReport rep =
        find_bifurcations(flags.eps_tilde, flags.eta, theta_min, theta_max, opts);
    emit(json_text(to_json(rep)), out);
    return kExitOk;
}

int cmd_direction(const ParamFlags& flags, double theta_min, double theta_max,
                  std::size_t n_points, const std::string& trace_str,
                  const std::string& out, const std::string& csv_path) {
    TraceDirection trace;
    if (trace_str == "up" || trace_str == "upward")
        trace = TraceDirection::Upward;
    else if (trace_str == "down" || trace_str == "downward")
        trace = TraceDirection::Downward;
    else
        throw std::invalid_argument("--trace must be up or down");

    auto sweep = sweep_temperature(flags.eps_tilde, flags.eta, theta_min, theta_max,
                                   n_points);
    if (!csv_path.empty()) write_text_file(csv_path, sweep_csv(sweep));
    if (trace == TraceDirection::Downward)
        std::reverse(sweep.begin(), sweep.end());
    const auto jumps = track_direction_jumps(sweep, trace);

    nlohmann::json j;
    j["trace"] = trace_name(trace);
    j["jumps"] = nlohmann::json::array();
    for (const auto& jump : jumps) {
        nlohmann::json item;
        item["theta"] = round_sig12(jump.theta);
        item["from"] = {round_sig12(jump.from_direction[0]),
                        round_sig12(jump.from_direction[1]),
                        round_sig12(jump.from_direction[2])};
        item["to"] = {round_sig12(jump.to_direction[0]),
                      round_sig12(jump.to_direction[1]),
                      round_sig12(jump.to_direction[2])};
        item["trace"] = trace_name(jump.trace);
        j["jumps"].push_back(item);
    }
    emit(json_text(j), out);
    return kExitOk;
}

int cmd_simulate(const ParamFlags& flags, const std::string& rho0_str,
                 std::optional<double> tau_max, std::optional<double> dt,
                 std::optional<std::size_t> stride, const std::string& out,
                 const std::string& svg_prefix) {
    const SystemParams p = resolve_params(flags);

    Vec3 r0{};
    {
        std::istringstream is(rho0_str);
        char comma1 = 0, comma2 = 0;
        if (!(is >> r0[0] >> comma1 >> r0[1] >> comma2 >> r0[2]) || comma1 != ','
            || comma2 != ',')
            throw std::invalid_argument("--rho0 must be rx,ry,rz");
    }
    const DensityState rho0{r0};
    rho0.validate();

    const BlochMatrix a = build_bloch_matrix(p);
    const double t_max = tau_max.value_or(default_tau_max(a));
    const double step = dt.value_or(default_dt(p));
    std::size_t keep = stride.value_or(0);
    if (keep == 0) {
        const double steps = t_max / step;
        keep = std::max<std::size_t>(1, static_cast<std::size_t>(steps / 2000.0));
    }

    const Trajectory traj = integrate_master(rho0, p, t_max, step, keep);
    emit(trajectory_csv(traj), out);
    if (!svg_prefix.empty()) {
        std::vector<PlotSeries> series(3);
        series[0].label = "rx";
        series[1].label = "ry";
        series[2].label = "rz";
        for (std::size_t k = 0; k < traj.tau.size(); ++k)
            for (int c = 0; c < 3; ++c)
                series[c].points.push_back({traj.tau[k], traj.r[k][c]});
        write_text_file(svg_prefix + "_trajectory.svg",
                        render_line_plot("Bloch vector trajectory", "tau", "component",
                                         series));
    }
    return kExitOk;
}

int cmd_weak_compare(const ParamFlags& flags, bool as_json) {
    const SystemParams p = resolve_params(flags);
    const BlochMatrix a = build_bloch_matrix(p);
    const SpectrumReport rep = analyze_spectrum(a);
    const WeakCouplingRates weak = weak_coupling_rates(p);

    if (as_json) {
        nlohmann::json j;
        j["strong"] = to_json(rep);
        j["strong"]["gamma"] = round_sig12(a.gamma);
        nlohmann::json w;
        w["gamma_weak"] = round_sig12(weak.gamma_weak);
        w["gamma_L"] = round_sig12(weak.gamma_L);
        w["gamma_T"] = round_sig12(weak.gamma_T);
        w["ratio"] = weak.gamma_T > 0.0 ? nlohmann::json(2.0) : nlohmann::json(nullptr);
        w["omega_R"] = "not modeled";
        j["weak"] = w;
        std::cout << json_text(j);
        return kExitOk;
    }

    std::cout << "strong coupling: gamma=" << format_sig12(a.gamma)
              << " regime=" << regime_name(rep.regime) << "\n  Gamma_L:";
    for (double g : rep.gamma_L) std::cout << ' ' << format_sig12(g);
    std::cout << "\n";
    if (rep.gamma_T) {
        std::cout << "  Gamma_T: " << format_sig12(*rep.gamma_T) << "\n";
        if (*rep.gamma_T > 0.0)
            std::cout << "  Gamma_L/Gamma_T: "
                      << format_sig12(rep.gamma_L.front() / *rep.gamma_T) << "\n";
    }
    std::cout << "weak coupling: gamma_weak=" << format_sig12(weak.gamma_weak)
              << "\n  Gamma_L: " << format_sig12(weak.gamma_L)
              << "\n  Gamma_T: " << format_sig12(weak.gamma_T);
    if (weak.gamma_T > 0.0) std::cout << "\n  Gamma_L/Gamma_T: 2";
    std::cout << "\n  Omega_R: not modeled\n";
    return kExitOk;
}

int cmd_verify(std::size_t samples, std::uint64_t seed, const std::string& suite,
               bool as_json) {
    if (samples == 0) throw std::invalid_argument("--samples must be > 0");

    const bool all = suite == "all";
    std::vector<nlohmann::json> results;
    bool ok = true;
    std::string first_failure;

    const auto note = [&](const nlohmann::json& j) {
        results.push_back(j);
        if (!j["passed"].get<bool>()) {
            ok = false;
            if (first_failure.empty())
                first_failure = j.value("first_counterexample", std::string{});
        }
    };

    if (all || suite == "prop1") note(to_json(run_prop1_equivalence(samples, seed)));
    if (all || suite == "prop2") note(to_json(run_prop2_equivalence(samples, seed)));
    if (all || suite == "inequalities") note(to_json(run_inequality_grid()));
    if (all || suite == "dynamics")
        note(to_json(run_dynamics_oracle(std::min<std::size_t>(samples, 100), seed)));
    if (results.empty()) throw std::invalid_argument("unknown suite: " + suite);

    if (as_json) {
        nlohmann::json j;
        j["seed"] = seed;
        j["samples"] = samples;
        j["suites"] = results;
        j["passed"] = ok;
        std::cout << json_text(j);
    } else {
        for (const auto& r : results) {
            std::cout << r["suite"].get<std::string>() << ": "
                      << (r["passed"].get<bool>() ? "pass" : "FAIL");
            if (r.contains("evaluated"))
                std::cout << "  evaluated=" << r["evaluated"].get<std::size_t>()
                          << " excluded=" << r["excluded"].get<std::size_t>()
                          << " disagreements=" << r["disagreements"].get<std::size_t>()
                          << " min_margin=" << format_sig12(r["min_margin"].get<double>());
            if (r.contains("points"))
                std::cout << "  points=" << r["points"].get<std::size_t>()
                          << " worst_slack=" << format_sig12(r["worst_slack"].get<double>())
                          << " worst_trace_residual="
                          << format_sig12(r["worst_trace_residual"].get<double>());
            if (r.contains("worst_oracle_deviation"))
                std::cout << "  cases=" << r["cases"].get<std::size_t>()
                          << " worst_deviation="
                          << format_sig12(r["worst_oracle_deviation"].get<double>())
                          << " worst_decay_fit_relerr="
                          << format_sig12(r["worst_decay_fit_relerr"].get<double>());
            std::cout << "\n";
        }
    }
    if (!ok) {
        std::cerr << "verification failed; first counterexample: " << first_failure
                  << "\n";
        return kExitVerifyFailure;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strong-coupling spin relaxation analysis"};
    app.require_subcommand(1);

    // spectrum
    ParamFlags sp_flags;
    bool sp_json = false;
    auto* sp = app.add_subcommand("spectrum", "Analyze the relaxation spectrum at one point");
    add_param_flags(sp, sp_flags, true);
    sp->add_flag("--json", sp_json, "emit the report as JSON");

    // sweep
    ParamFlags sw_flags;
    double sw_tmin = 0.0, sw_tmax = 1.0;
    std::size_t sw_n = 201;
    std::string sw_out, sw_json, sw_svg;
    auto* sw = app.add_subcommand("sweep", "Temperature sweep to CSV/JSON/SVG");
    add_param_flags(sw, sw_flags, false);
    sw->add_option("--theta-min", sw_tmin, "grid start")->required();
    sw->add_option("--theta-max", sw_tmax, "grid end")->required();
    sw->add_option("--n-points", sw_n, "grid size (>= 2)")->required();
    sw->add_option("--out", sw_out, "CSV output path (default stdout)");
    sw->add_option("--json", sw_json, "also write records as JSON");
    sw->add_option("--svg", sw_svg, "also write SVG plots with this path prefix");

    // bifurcations
    ParamFlags bf_flags;
    double bf_tmin = 1e-4, bf_tmax = 0.0;
    BifurcationOptions bf_opts;
    std::string bf_out;
    auto* bf = app.add_subcommand("bifurcations", "Locate discriminant sign changes");
    add_param_flags(bf, bf_flags, false);
    bf->add_option("--theta-min", bf_tmin, "range start (default 1e-4)");
    bf->add_option("--theta-max", bf_tmax, "range end")->required();
    bf->add_option("--tol", bf_opts.tol, "bisection tolerance in theta");
    bf->add_option("--scan-points", bf_opts.scan_points, "pre-scan density (>= 2000 recommended)");
    bf->add_option("--jump-grid", bf_opts.jump_grid, "sweep resolution for jump detection");
    bf->add_option("--out", bf_out, "JSON output path (default stdout)");

    // direction
    ParamFlags dr_flags;
    double dr_tmin = 1e-4, dr_tmax = 3.0;
    std::size_t dr_n = 2001;
    std::string dr_trace = "up", dr_out, dr_csv;
    auto* dr = app.add_subcommand("direction", "Track longitudinal-direction jumps");
    add_param_flags(dr, dr_flags, false);
    dr->add_option("--theta-min", dr_tmin, "grid start");
    dr->add_option("--theta-max", dr_tmax, "grid end")->required();
    dr->add_option("--n-points", dr_n, "grid size");
    dr->add_option("--trace", dr_trace, "up or down")->required();
    dr->add_option("--out", dr_out, "jump-list JSON path (default stdout)");
    dr->add_option("--csv", dr_csv, "also write the full sweep CSV");

    // simulate
    ParamFlags sm_flags;
    std::string sm_rho0, sm_out, sm_svg;
    std::optional<double> sm_tau, sm_dt;
    std::optional<std::size_t> sm_stride;
    auto* sm = app.add_subcommand("simulate", "Integrate the master equation");
    add_param_flags(sm, sm_flags, true);
    sm->add_option("--rho0", sm_rho0, "initial Bloch vector rx,ry,rz")->required();
    sm->add_option("--tau-max", sm_tau, "integration horizon (default 20/min rate)");
    sm->add_option("--dt", sm_dt, "step size (default 1e-3/max(1,gamma))");
    sm->add_option("--stride", sm_stride, "store every k-th step (default auto)");
    sm->add_option("--out", sm_out, "CSV output path (default stdout)");
    sm->add_option("--svg", sm_svg, "also write an SVG trajectory plot");

    // weak-compare
    ParamFlags wc_flags;
    bool wc_json = false;
    auto* wc = app.add_subcommand("weak-compare",
                                  "Compare against the weak-coupling baseline");
    add_param_flags(wc, wc_flags, true);
    wc->add_flag("--json", wc_json, "emit JSON");

    // verify
    std::size_t vf_samples = 10000;
    std::uint64_t vf_seed = 0;
    std::string vf_suite = "all";
    bool vf_json = false;
    auto* vf = app.add_subcommand("verify", "Randomized equivalence and invariant suites");
    vf->add_option("--samples", vf_samples, "sample count")->required();
    vf->add_option("--seed", vf_seed, "rng seed");
    vf->add_option("--suite", vf_suite, "prop1|prop2|inequalities|dynamics|all");
    vf->add_flag("--json", vf_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidInput;
    }

    try {
        if (sp->parsed()) return cmd_spectrum(sp_flags, sp_json);
        if (sw->parsed())
            return cmd_sweep(sw_flags, sw_tmin, sw_tmax, sw_n, sw_out, sw_json, sw_svg);
        if (bf->parsed()) return cmd_bifurcations(bf_flags, bf_tmin, bf_tmax, bf_opts, bf_out);
        if (dr->parsed())
            return cmd_direction(dr_flags, dr_tmin, dr_tmax, dr_n, dr_trace, dr_out, dr_csv);
        if (sm->parsed())
            return cmd_simulate(sm_flags, sm_rho0, sm_tau, sm_dt, sm_stride, sm_out, sm_svg);
        if (wc->parsed()) return cmd_weak_compare(wc_flags, wc_json);
        if (vf->parsed()) return cmd_verify(vf_samples, vf_seed, vf_suite, vf_json);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIoFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailure;
    }
    return kExitOk;
}
