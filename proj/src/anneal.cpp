#include "orgmod/anneal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "orgmod/errors.hpp"
#include "orgmod/quality.hpp"

namespace orgmod {
namespace {

// Snapshots drop the expectation matrix above this many entries so long
// trails on large graphs stay affordable.
constexpr long long kSnapshotEntryCap = 1000000;

// Counter-style noise stream: state is a pure function of (seed, step,
// counter), so runs are reproducible bit for bit regardless of platform or
// thread scheduling.
struct NoiseStream {
    std::uint64_t state;

    NoiseStream(std::uint64_t seed, std::uint64_t step) {
        state = seed ^ (0x9e3779b97f4a7c15ULL * (step + 1));
        next(); // decorrelate nearby (seed, step) pairs
    }

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

double default_em_tolerance() {
    return std::sqrt(std::numeric_limits<double>::epsilon());
}

void check_prior(const Graph& g, const PriorStructure& prior) {
    if (prior.cluster_count <= 0)
        throw std::invalid_argument("anneal: prior has no clusters");
    (void)g;
}

} // namespace

void AnnealConfig::validate() const {
    if (outer_steps < 0)
        throw std::invalid_argument("anneal config: outer_steps must be non-negative");
    if (!(start_factor > 1.0))
        throw std::invalid_argument("anneal config: start_factor must exceed 1");
    if (!(final_ratio > 0.0) || !(final_ratio < 1.0))
        throw std::invalid_argument("anneal config: final_ratio must lie in (0, 1)");
    if (!(noise_low <= 1.0 && 1.0 <= noise_high))
        throw std::invalid_argument("anneal config: noise interval must contain 1");
    if (em_tolerance < 0.0)
        throw std::invalid_argument("anneal config: em_tolerance must be non-negative");
    if (em_max_iterations < 1)
        throw std::invalid_argument("anneal config: em_max_iterations must be positive");
    if (snapshot_stride < 1)
        throw std::invalid_argument("anneal config: snapshot_stride must be positive");
}

double critical_temperature(const Graph& g, const PriorStructure& prior) {
    check_prior(g, prior);
    const double radius_b = graph_operator_radius(g).value;
    const double radius_s = spectral_radius(prior.similarity).value;
    return 2.0 * radius_b * radius_s / prior.cluster_count;
}

Matrix initial_mean_field(const Graph& g, const PriorStructure& prior) {
    check_prior(g, prior);
    const int n = g.vertex_count();
    const int c = prior.cluster_count;
    Matrix seedmat(n, c, 0.0);
    for (int k = 0; k < c; ++k) {
        double srow = 0.0;
        for (int l = 0; l < c; ++l) srow += prior.similarity(k, l);
        const double fill = srow / c;
        for (int i = 0; i < n; ++i) seedmat(i, k) = fill;
    }
    Matrix field = b_apply(g, seedmat);
    for (double& v : field.data()) v *= 2.0;
    return field;
}

Matrix e_step(const Matrix& field, double beta) {
    if (field.empty())
        throw std::invalid_argument("e_step: empty field");
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument("e_step: beta must be finite and non-negative");
    for (double v : field.data())
        if (!std::isfinite(v))
            throw NumericError("e_step: non-finite field entry");

    Matrix out(field.rows(), field.cols(), 0.0);
    for (int i = 0; i < field.rows(); ++i) {
        const double* fi = field.row(i);
        double* oi = out.row(i);
        double top = fi[0];
        for (int k = 1; k < field.cols(); ++k) top = std::max(top, fi[k]);
        double sum = 0.0;
        for (int k = 0; k < field.cols(); ++k) {
            oi[k] = std::exp(beta * (fi[k] - top));
            sum += oi[k];
        }
        for (int k = 0; k < field.cols(); ++k) oi[k] /= sum;
    }
    return out;
}

Matrix m_step(const Graph& g, const Matrix& expectation, const PriorStructure& prior) {
    check_prior(g, prior);
    if (expectation.rows() != g.vertex_count() || expectation.cols() != prior.cluster_count)
        throw std::invalid_argument("m_step: expectation shape mismatch");
    Matrix field = matmul(b_apply(g, expectation), prior.similarity);
    for (double& v : field.data()) v *= 2.0;
    return field;
}

EmOutcome em_until_converged(const Graph& g, const PriorStructure& prior, Matrix field,
                             double beta, double tolerance, int max_iterations, double damping) {
    if (tolerance <= 0.0) tolerance = default_em_tolerance();
    if (max_iterations < 1)
        throw std::invalid_argument("em_until_converged: need at least one iteration");
    if (!(damping > 0.0) || damping > 1.0)
        throw std::invalid_argument("em_until_converged: damping must be in (0, 1]");
    EmOutcome out;
    out.field = std::move(field);
    const double entries = static_cast<double>(out.field.rows()) * out.field.cols();
    std::vector<double> previous_step;
    for (int it = 1; it <= max_iterations; ++it) {
        out.expectation = e_step(out.field, beta);
        Matrix next = m_step(g, out.expectation, prior);
        auto& a = out.field.data();
        const auto& b = next.data();
        const bool have_previous = !previous_step.empty();
        if (!have_previous) previous_step.resize(a.size());
        double residual = 0.0;
        for (std::size_t idx = 0; idx < a.size(); ++idx) {
            const double d = b[idx] - a[idx];
            residual += d * d;
            // An entry moving against its previous step is riding the
            // period-2 oscillation; damping only those entries leaves
            // aligned symmetry breaking at full speed.
            const double eta =
                have_previous && d * previous_step[idx] < 0.0 ? damping : 1.0;
            previous_step[idx] = d;
            a[idx] += eta * d;
        }
        out.iterations = it;
        if (residual / entries < tolerance) break;
    }
    return out;
}

AnnealResult anneal(const Graph& g, const PriorStructure& prior, const AnnealConfig& config) {
    check_prior(g, prior);
    config.validate();
    const int outer = config.outer_steps > 0 ? config.outer_steps : g.vertex_count();
    const double t0 = critical_temperature(g, prior);
    if (!(t0 > 0.0))
        throw NumericError("anneal: critical temperature is not positive");
    const double cooling =
        outer > 1 ? std::pow(config.final_ratio / config.start_factor, 1.0 / (outer - 1)) : 1.0;
    const double tol = config.em_tolerance > 0.0 ? config.em_tolerance : default_em_tolerance();
    const bool keep_expectations =
        static_cast<long long>(g.vertex_count()) * prior.cluster_count <= kSnapshotEntryCap;

    AnnealResult result;
    result.critical_temperature = t0;

    Matrix field = initial_mean_field(g, prior);
    Matrix expectation;
    double temperature = config.start_factor * t0;
    for (int step = 0; step < outer; ++step) {
        NoiseStream noise(config.seed, static_cast<std::uint64_t>(step));
        const double span = config.noise_high - config.noise_low;
        for (double& v : field.data()) v *= config.noise_low + span * noise.uniform();

        // The per-mode EM multipliers are bounded by t0 / temperature in
        // magnitude, so this damping puts every oscillating mode strictly
        // inside the unit disk while leaving supercritical growth intact.
        const double damping = temperature / (temperature + t0);
        EmOutcome em = em_until_converged(g, prior, std::move(field), 1.0 / temperature, tol,
                                          config.em_max_iterations, damping);
        field = std::move(em.field);
        expectation = std::move(em.expectation);

        const bool last = step == outer - 1;
        if (step % config.snapshot_stride == 0 || last) {
            TrailSnapshot snap;
            snap.temperature = temperature;
            snap.expected_modularity = expected_modularity(g, expectation);
            snap.em_iterations = em.iterations;
            if (keep_expectations || last) snap.expectation = expectation;
            result.trail.snapshots.push_back(std::move(snap));
        }
        temperature *= cooling;
    }

    result.final_expectation = std::move(expectation);
    result.clustering = harden(result.final_expectation);
    result.transitions = detect_transitions(result.trail);
    return result;
}

Clustering harden(const Matrix& expectation) {
    if (expectation.empty())
        throw std::invalid_argument("harden: empty expectation");
    Clustering c;
    c.cluster_count = expectation.cols();
    c.assignment.resize(expectation.rows());
    for (int i = 0; i < expectation.rows(); ++i) {
        const double* row = expectation.row(i);
        int best = 0;
        for (int k = 1; k < expectation.cols(); ++k)
            if (row[k] > row[best]) best = k;
        c.assignment[i] = best;
    }
    return c;
}

std::vector<double> detect_transitions(const AnnealTrail& trail, double abs_floor,
                                       double rel_factor) {
    const auto& snaps = trail.snapshots;
    std::vector<double> found;
    if (snaps.size() < 2) return found;

    double lo = snaps.front().expected_modularity;
    double hi = lo;
    for (const auto& s : snaps) {
        lo = std::min(lo, s.expected_modularity);
        hi = std::max(hi, s.expected_modularity);
    }
    const double threshold = std::max(abs_floor, rel_factor * (hi - lo));

    // Consecutive above-threshold jumps are one physical transition smeared
    // over several cooling steps; report the colder end of the biggest jump.
    bool in_run = false;
    double run_best_jump = 0.0;
    double run_temperature = 0.0;
    for (std::size_t i = 1; i < snaps.size(); ++i) {
        const double jump =
            std::abs(snaps[i].expected_modularity - snaps[i - 1].expected_modularity);
        if (jump > threshold) {
            if (!in_run || jump > run_best_jump) {
                run_best_jump = jump;
                run_temperature = snaps[i].temperature;
            }
            in_run = true;
        } else if (in_run) {
            found.push_back(run_temperature);
            in_run = false;
            run_best_jump = 0.0;
        }
    }
    if (in_run) found.push_back(run_temperature);
    return found;
}

} // namespace orgmod
