#include "spinrelax/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

#include "spinrelax/dynamics.hpp"
#include "spinrelax/oracle.hpp"
#include "spinrelax/parallel.hpp"
#include "spinrelax/rng.hpp"

namespace spinrelax {

namespace {

constexpr double kBoundaryBand = 1e-9;

SampleStyle style_of(std::size_t i) {
    switch (i % 3) {
        case 0: return SampleStyle::RealCompanion;
        case 1: return SampleStyle::UnitaryConjugated;
        default: return SampleStyle::Bloch;
    }
}

const char* style_name(SampleStyle s) {
    switch (s) {
        case SampleStyle::RealCompanion: return "real-companion";
        case SampleStyle::UnitaryConjugated: return "unitary-conjugated";
        case SampleStyle::Bloch: return "bloch";
    }
    return "?";
}

std::string describe_sample(SampleStyle style, std::uint64_t seed, std::size_t index,
                            const CharFunctionals& fn) {
    std::ostringstream os;
    os << "style=" << style_name(style) << " seed=" << seed << " index=" << index
       << " tr=" << fn.trace << " det=" << fn.det << " tradj=" << fn.tr_adj
       << " f(tr)=" << fn.f_at_trace << " f(tr/2)=" << fn.f_at_half_trace;
    return os.str();
}

struct ShardTally {
    std::size_t evaluated = 0;
    std::size_t excluded = 0;
    std::size_t filtered = 0;
    std::size_t disagreements = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    std::size_t first_bad = std::numeric_limits<std::size_t>::max();
    std::string first_detail;
};

template <typename PerSample>
EquivalenceResult run_equivalence(const std::string& name, std::size_t samples,
                                  std::uint64_t seed, PerSample per_sample) {
    const unsigned workers = worker_count(samples);
    const std::size_t shard_size = (samples + workers - 1) / std::max(1u, workers);
    const std::size_t shards = shard_size == 0 ? 0 : (samples + shard_size - 1) / shard_size;

    std::vector<ShardTally> tallies(shards);
    parallel_for(shards, [&](std::size_t s) {
        ShardTally& t = tallies[s];
        const std::size_t lo = s * shard_size;
        const std::size_t hi = std::min(samples, lo + shard_size);
        for (std::size_t i = lo; i < hi; ++i) per_sample(i, t);
    });

    EquivalenceResult out;
    out.suite = name;
    out.requested = samples;
    out.min_margin = std::numeric_limits<double>::infinity();
    for (const auto& t : tallies) {
        out.evaluated += t.evaluated;
        out.excluded += t.excluded;
        out.filtered += t.filtered;
        out.disagreements += t.disagreements;
        out.min_margin = std::min(out.min_margin, t.min_margin);
        if (!t.first_detail.empty() && out.first_counterexample.empty())
            out.first_counterexample = t.first_detail;
    }
    if (!std::isfinite(out.min_margin)) out.min_margin = 0.0;
    (void)seed;
    return out;
}

} // namespace

EquivalenceResult run_prop1_equivalence(std::size_t samples, std::uint64_t seed) {
    return run_equivalence(
        "prop1", samples, seed, [seed](std::size_t i, ShardTally& t) {
            const SampleStyle style = style_of(i);
            const CMat3 m = sample_real_char_matrix(style, seed, i);
            const CharFunctionals fn = char_functionals(m);

            const double margin =
                std::min({std::abs(fn.trace), std::abs(fn.det), std::abs(fn.tr_adj),
                          std::abs(fn.f_at_trace)});
            const auto eig = oracle::eigenvalues(m);
            double min_abs_re = std::numeric_limits<double>::infinity();
            double min_re = std::numeric_limits<double>::infinity();
            for (const Complex& z : eig) {
                min_abs_re = std::min(min_abs_re, std::abs(z.real()));
                min_re = std::min(min_re, z.real());
            }
            if (margin < kBoundaryBand || min_abs_re < kBoundaryBand) {
                ++t.excluded;
                return;
            }
            ++t.evaluated;
            t.min_margin = std::min(t.min_margin, std::min(margin, min_abs_re));

            const bool predicted = nonneg_real_parts_criterion(fn);
            const bool direct = min_re >= 0.0;
            if (predicted != direct) {
                ++t.disagreements;
                if (i < t.first_bad) {
                    t.first_bad = i;
                    t.first_detail = describe_sample(style, seed, i, fn);
                }
            }
        });
}

EquivalenceResult run_prop2_equivalence(std::size_t samples, std::uint64_t seed) {
    return run_equivalence(
        "prop2", samples, seed, [seed](std::size_t i, ShardTally& t) {
            const SampleStyle style = style_of(i);
            const CMat3 m = sample_real_char_matrix(style, seed, i);
            const CharFunctionals fn = char_functionals(m);

            if (!nonneg_real_parts_criterion(fn)) {
                ++t.filtered; // hypothesis of the triangle criterion not met
                return;
            }
            const auto eig = oracle::eigenvalues(m);
            const double r0 = eig[0].real(), r1 = eig[1].real(), r2 = eig[2].real();
            const double tri_slack =
                std::min({r0 + r1 - r2, r1 + r2 - r0, r2 + r0 - r1});
            const double margin = std::min(std::abs(fn.f_at_half_trace),
                                           std::abs(tri_slack));
            if (margin < kBoundaryBand) {
                ++t.excluded;
                return;
            }
            ++t.evaluated;
            t.min_margin = std::min(t.min_margin, margin);

            const bool predicted = triangle_criterion(fn);
            const bool direct = tri_slack >= 0.0;
            if (predicted != direct) {
                ++t.disagreements;
                if (i < t.first_bad) {
                    t.first_bad = i;
                    t.first_detail = describe_sample(style, seed, i, fn);
                }
            }
        });
}

GridResult run_inequality_grid(std::size_t theta_points) {
    GridResult out;
    out.suite = "inequalities";
    out.worst_slack = std::numeric_limits<double>::infinity();

    std::vector<double> eps_values;
    for (int i = 0; i <= 20; ++i) eps_values.push_back(0.05 * i);
    const std::vector<double> eta_values{0.1, 1.0, 10.0};
    std::vector<double> theta_values(theta_points);
    const double log_lo = std::log(1e-3), log_hi = std::log(50.0);
    for (std::size_t i = 0; i < theta_points; ++i)
        theta_values[i] = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i)
                                                / static_cast<double>(theta_points - 1));

    struct PointOutcome {
        double slack = 0.0;
        double trace_residual = 0.0;
        bool inequality_bad = false;
        bool trace_bad = false;
        std::string detail;
    };

    const std::size_t total = eps_values.size() * eta_values.size() * theta_values.size();
    std::vector<PointOutcome> outcomes(total);

    parallel_for(total, [&](std::size_t idx) {
        const std::size_t it = idx % theta_values.size();
        const std::size_t rest = idx / theta_values.size();
        const std::size_t ie = rest % eta_values.size();
        const std::size_t ip = rest / eta_values.size();

        const SystemParams p =
            make_params(eps_values[ip], eta_values[ie], theta_values[it]);
        const BlochMatrix a = build_bloch_matrix(p);
        const SpectrumReport rep = analyze_spectrum(a);
        const InequalityReport ineq = check_relaxation_inequalities(rep);

        PointOutcome& o = outcomes[idx];
        o.slack = ineq.min_slack;
        o.inequality_bad = !ineq.holds;

        double sum_re = 0.0;
        for (const Complex& z : rep.eigenvalues) sum_re += z.real();
        o.trace_residual = std::abs(sum_re - 2.0 * a.gamma); // tr A = 2 gamma
        o.trace_bad = o.trace_residual > 1e-10;

        if (o.inequality_bad || o.trace_bad) {
            std::ostringstream os;
            os << "eps=" << p.eps_tilde << " eta=" << p.eta << " theta=" << p.theta
               << " regime=" << regime_name(rep.regime) << " slack=" << o.slack
               << " trace_residual=" << o.trace_residual;
            o.detail = os.str();
        }
    });

    out.points = total;
    for (const auto& o : outcomes) {
        out.worst_slack = std::min(out.worst_slack, o.slack);
        out.worst_trace_residual = std::max(out.worst_trace_residual, o.trace_residual);
        if (o.inequality_bad) ++out.inequality_violations;
        if (o.trace_bad) ++out.trace_violations;
        if ((o.inequality_bad || o.trace_bad) && out.first_counterexample.empty())
            out.first_counterexample = o.detail;
    }
    return out;
}

namespace {

// Least-squares slope of log|l . r(tau)|; the fitted rate must reproduce the
// spectral Gamma_L.
double fitted_decay_rate(const SystemParams& p, double gamma_L,
                         const Vec3& l) {
    const double dt = default_dt(p);
    const double tau_end = 5.0 / gamma_L;
    const DensityState rho0{0.9 * l};
    const Trajectory traj = integrate_master(rho0, p, tau_end, dt, 10);

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < traj.tau.size(); ++k) {
        const double val = dot(l, traj.r[k]);
        if (val <= 0.0) break;
        const double y = std::log(val);
        sx += traj.tau[k];
        sy += y;
        sxx += traj.tau[k] * traj.tau[k];
        sxy += traj.tau[k] * y;
        ++n;
    }
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    return -(static_cast<double>(n) * sxy - sx * sy) / denom;
}

} // namespace

DynamicsResult run_dynamics_oracle(std::size_t cases, std::uint64_t seed) {
    DynamicsResult out;
    out.suite = "dynamics";
    out.cases = cases;

    // Stationary state: rho = I/2 stays put.
    {
        const SystemParams p = make_params(0.3, 1.0, 0.7);
        const Trajectory traj = integrate_master(DensityState{}, p, 5.0, 1e-3, 100);
        for (const Vec3& r : traj.r)
            out.stationary_deviation = std::max(out.stationary_deviation, norm(r));
        if (out.stationary_deviation > 1e-12) {
            ++out.failures;
            out.first_counterexample = "stationary state drifted";
        }
    }

    struct CaseOutcome {
        double deviation = 0.0;
        double conjugate_defect = 0.0;
        std::size_t contractivity_violations = 0;
        std::string detail;
    };
    std::vector<CaseOutcome> outcomes(cases);

    const CounterRng rng(seed, 7);
    parallel_for(cases, [&](std::size_t i) {
        const std::uint64_t base = i * 16;
        SystemParams p;
        p.eps_tilde = rng.uniform(base);
        p.eta = rng.uniform(base + 1, 0.2, 2.0);
        p.theta = rng.uniform(base + 2, 0.25, 1.0);

        // Random state inside the Bloch ball.
        Vec3 r0{rng.uniform(base + 3, -1.0, 1.0), rng.uniform(base + 4, -1.0, 1.0),
                rng.uniform(base + 5, -1.0, 1.0)};
        const double rn = norm(r0);
        const double radius = 0.95 * std::cbrt(rng.uniform(base + 6));
        r0 = rn > 0.0 ? (radius / rn) * r0 : Vec3{0.0, 0.0, radius};

        const BlochMatrix a = build_bloch_matrix(p);
        const double g = a.gamma;
        const double dt = 1e-3 / std::max(1.0, g);
        const double tau_max = 10.0 / g;

        const Trajectory traj = integrate_master(DensityState{r0}, p, tau_max, dt, 10);
        const ExpectationPropagator prop(a);
        const ExpectationVector v0 = expectations_from_bloch(r0, p);

        CaseOutcome& o = outcomes[i];
        double prev_norm = norm(r0);
        for (std::size_t k = 0; k < traj.tau.size(); ++k) {
            const ExpectationVector v_rk = expectations_from_bloch(traj.r[k], p);
            const ExpectationVector v_sp = prop(v0, traj.tau[k]);
            for (int c = 0; c < 3; ++c)
                o.deviation = std::max(o.deviation, std::abs(v_rk[c] - v_sp[c]));
            o.conjugate_defect =
                std::max({o.conjugate_defect, conjugate_structure_defect(v_rk),
                          conjugate_structure_defect(v_sp)});
            const double cur_norm = norm(traj.r[k]);
            if (cur_norm > prev_norm + 1e-10) ++o.contractivity_violations;
            prev_norm = cur_norm;
        }
        if (o.deviation > 1e-8 || o.contractivity_violations > 0) {
            std::ostringstream os;
            os << "case=" << i << " eps=" << p.eps_tilde << " eta=" << p.eta
               << " theta=" << p.theta << " r0=(" << r0[0] << "," << r0[1] << ","
               << r0[2] << ") deviation=" << o.deviation
               << " contractivity_violations=" << o.contractivity_violations;
            o.detail = os.str();
        }
    });

    for (const auto& o : outcomes) {
        out.worst_oracle_deviation = std::max(out.worst_oracle_deviation, o.deviation);
        out.worst_conjugate_defect =
            std::max(out.worst_conjugate_defect, o.conjugate_defect);
        out.contractivity_violations += o.contractivity_violations;
        if (!o.detail.empty()) {
            ++out.failures;
            if (out.first_counterexample.empty()) out.first_counterexample = o.detail;
        }
    }

    // Decay-rate recovery on fixed low-temperature cases.
    for (double eps : {0.1, 0.2, 0.5}) {
        const SystemParams p = make_params(eps, 1.0, 0.3);
        const BlochMatrix a = build_bloch_matrix(p);
        const SpectrumReport rep = analyze_spectrum(a);
        const double gamma_L = rep.gamma_L.front();
        int slot = -1;
        for (int k = 0; k < 3; ++k)
            if (rep.directions[k]) slot = k;
        const double fitted = fitted_decay_rate(p, gamma_L, *rep.directions[slot]);
        const double rel = std::abs(fitted - gamma_L) / gamma_L;
        out.worst_decay_fit_relerr = std::max(out.worst_decay_fit_relerr, rel);
        if (rel > 1e-4) {
            ++out.failures;
            if (out.first_counterexample.empty()) {
                std::ostringstream os;
                os << "decay fit eps=" << eps << " fitted=" << fitted
                   << " gamma_L=" << gamma_L;
                out.first_counterexample = os.str();
            }
        }
    }

    if (out.worst_conjugate_defect > 1e-10) ++out.failures;
    return out;
}

} // namespace spinrelax
