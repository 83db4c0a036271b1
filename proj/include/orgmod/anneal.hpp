#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "orgmod/graph.hpp"
#include "orgmod/matrix.hpp"
#include "orgmod/prior.hpp"

namespace orgmod {

struct AnnealConfig {
    // Outer temperature steps; 0 means one per vertex.
    int outer_steps = 0;
    // T starts at start_factor * T0 and ends at final_ratio * T0.
    double start_factor = 1.1;
    double final_ratio = 0.1;
    // Multiplicative per-entry field noise injected before each EM phase.
    double noise_low = 0.995;
    double noise_high = 1.005;
    // EM phase stops when the mean squared field change drops below the
    // tolerance; 0 means sqrt of machine epsilon.
    double em_tolerance = 0.0;
    int em_max_iterations = 500;
    std::uint64_t seed = 0;
    // Keep every snapshot_stride-th snapshot (the last one always).
    int snapshot_stride = 1;

    void validate() const;
};

struct TrailSnapshot {
    double temperature = 0.0;
    double expected_modularity = 0.0;
    int em_iterations = 0;
    // Omitted when N * C exceeds the memory cap; the final snapshot always
    // carries it.
    std::optional<Matrix> expectation;
};

struct AnnealTrail {
    std::vector<TrailSnapshot> snapshots;
};

struct AnnealResult {
    Clustering clustering;
    Matrix final_expectation;
    AnnealTrail trail;
    double critical_temperature = 0.0;
    std::vector<double> transitions;
};

// T0 = 2 * radius(B) * radius(S) / C: above it the uniform mean field is the
// unique stable fixed point, so annealing starts just above and ends well
// below.
double critical_temperature(const Graph& g, const PriorStructure& prior);

// Field at the infinite-temperature fixed point:
//   E0_jk = (2/C) sum_{i != j} B_ij sum_l S_kl,
// evaluated through b_apply against the rank-one matrix whose k-th column is
// the constant (1/C) sum_l S_kl.
Matrix initial_mean_field(const Graph& g, const PriorStructure& prior);

// Row softmax of beta * field, max-subtracted. Rows sum to 1 exactly up to
// rounding; beta = 0 gives the uniform matrix. Rejects non-finite fields.
Matrix e_step(const Matrix& field, double beta);

// Self-consistent field of an expectation: 2 * b_apply(expectation) * S.
Matrix m_step(const Graph& g, const Matrix& expectation, const PriorStructure& prior);

struct EmOutcome {
    Matrix field;
    Matrix expectation;
    int iterations = 0;
};

// Alternates e_step / m_step at fixed beta until the mean squared
// fixed-point residual (the full field change) falls below tolerance or the
// iteration cap is hit. A field entry whose step opposes its previous step
// — the signature of the period-2 cycle the synchronous update falls into
// when the graph operator's most negative eigenvalue rivals its radius —
// moves only a fraction `damping` of the way; entries moving steadily apply
// in full, so genuine symmetry breaking is never slowed. Damping leaves
// every fixed point in place; 1 recovers the plain synchronous update.
EmOutcome em_until_converged(const Graph& g, const PriorStructure& prior, Matrix field,
                             double beta, double tolerance, int max_iterations,
                             double damping = 1.0);

// Geometric cooling from start_factor * T0 down to final_ratio * T0 with a
// noisy EM phase per step. Each phase runs with damping = T / (T + T0) on
// direction-reversing steps: with every linearized EM multiplier bounded by
// T0 / T in magnitude, that fraction maps the worst oscillating mode to
// zero, so cooling cannot lock onto an anti-aligned cycle. Deterministic
// for a fixed config: identical inputs yield bit-identical results.
AnnealResult anneal(const Graph& g, const PriorStructure& prior, const AnnealConfig& config);

// Row argmax; ties go to the lowest cluster index.
Clustering harden(const Matrix& expectation);

// Temperatures at which the expected modularity jumps by more than
// max(abs_floor, rel_factor * total range) between consecutive snapshots.
// A run of consecutive above-threshold jumps counts once, reported at the
// colder end of its largest single jump.
std::vector<double> detect_transitions(const AnnealTrail& trail, double abs_floor = 0.01,
                                       double rel_factor = 0.05);

} // namespace orgmod
