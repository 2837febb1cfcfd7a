#pragma once

#include <cstdint>
#include <string>

#include "spinrelax/criteria.hpp"

namespace spinrelax {

// Randomized equivalence of a closed-form criterion against the brute-force
// eigenvalue oracle. Samples with any decision quantity inside the boundary
// band are excluded: the statements are exact, and sign flips at exact-zero
// boundaries are classification noise, not counterexamples.
struct EquivalenceResult {
    std::string suite;
    std::size_t requested = 0;
    std::size_t evaluated = 0;
    std::size_t excluded = 0;
    std::size_t filtered = 0; // prop2 only: samples failing the hypothesis
    std::size_t disagreements = 0;
    double min_margin = 0.0; // closest included sample to a decision boundary
    std::string first_counterexample;
    bool passed() const { return disagreements == 0; }
};

EquivalenceResult run_prop1_equivalence(std::size_t samples, std::uint64_t seed);
EquivalenceResult run_prop2_equivalence(std::size_t samples, std::uint64_t seed);

// Relaxation-constant inequalities and the trace sum rule over the fixed
// acceptance grid: eps in {0, 0.05, ..., 1} x eta in {0.1, 1, 10} x theta in
// `theta_points` log-spaced values of [1e-3, 50].
struct GridResult {
    std::string suite;
    std::size_t points = 0;
    std::size_t inequality_violations = 0;
    std::size_t trace_violations = 0;
    double worst_slack = 0.0;          // most negative inequality margin
    double worst_trace_residual = 0.0; // max |sum Re - tr A|
    std::string first_counterexample;
    bool passed() const { return inequality_violations == 0 && trace_violations == 0; }
};

GridResult run_inequality_grid(std::size_t theta_points = 400);

// Master-equation integration against the exp(-A tau) propagator, plus the
// stationary-state, contractivity and decay-rate-recovery checks.
struct DynamicsResult {
    std::string suite;
    std::size_t cases = 0;
    double worst_oracle_deviation = 0.0; // max-norm over compared times
    double worst_conjugate_defect = 0.0;
    double stationary_deviation = 0.0;
    std::size_t contractivity_violations = 0;
    double worst_decay_fit_relerr = 0.0;
    std::size_t failures = 0;
    std::string first_counterexample;
    bool passed() const { return failures == 0; }
};

DynamicsResult run_dynamics_oracle(std::size_t cases, std::uint64_t seed);

} // namespace spinrelax
