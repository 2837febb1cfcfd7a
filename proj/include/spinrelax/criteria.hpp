#pragma once

#include <cstdint>

#include "spinrelax/spectrum.hpp"

namespace spinrelax {

// Functionals of a 3x3 matrix with real characteristic polynomial
// f(lambda) = det(lambda - M) = lambda^3 - tr*lambda^2 + tr_adj*lambda - det.
// membership_defect records the largest imaginary magnitude among the three
// functionals before real-casting; matrices above 1e-10 are rejected.
struct CharFunctionals {
    double trace = 0.0;
    double det = 0.0;
    double tr_adj = 0.0;
    double f_at_trace = 0.0;
    double f_at_half_trace = 0.0;
    double membership_defect = 0.0;
};

CharFunctionals char_functionals(const CMat3& m);

// All eigenvalue real parts are >= 0 iff tr, det, tr adj and f(tr) are all
// nonnegative. Evaluated with tolerance -1e-12 per condition.
bool nonneg_real_parts_criterion(const CharFunctionals& fn);

// Given nonnegative real parts, the three triangle inequalities
// Re l_i + Re l_j >= Re l_k hold iff f(tr/2) >= 0. Throws if the
// nonnegativity hypothesis fails.
bool triangle_criterion(const CharFunctionals& fn);

// Relaxation-constant inequalities of one spectrum: 2*Gamma_T >= Gamma_L in
// the complex-pair regime, the triangle inequalities among the three rates
// otherwise. `boundary` marks degenerate spectra, where equality is expected.
struct InequalityReport {
    Regime regime = Regime::ComplexPair;
    bool boundary = false;
    bool holds = false;
    double min_slack = 0.0; // most negative margin across the checks
};

InequalityReport check_relaxation_inequalities(const SpectrumReport& rep);

// Seeded generators of matrices with a provably real characteristic
// polynomial, for randomized verification. Matrix `index` under a fixed seed
// is reproducible regardless of sharding.
enum class SampleStyle { RealCompanion, UnitaryConjugated, Bloch };

CMat3 sample_real_char_matrix(SampleStyle style, std::uint64_t seed,
                              std::uint64_t index);

// Companion matrix of lambda^3 + c2 lambda^2 + c1 lambda + c0.
CMat3 companion_matrix(double c2, double c1, double c0);

} // namespace spinrelax
