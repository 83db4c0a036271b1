#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "orgmod/anneal.hpp"
#include "orgmod/graph.hpp"
#include "orgmod/io.hpp"
#include "orgmod/prior.hpp"

namespace orgmod {

struct SweepConfig {
    std::vector<std::pair<int, int>> grids{{3, 3}, {4, 4}, {5, 5}};
    std::vector<Kernel> kernels{Kernel::exponential, Kernel::linear};
    // Scales solved per kernel so the nearest-neighbor similarity hits the
    // same coverage targets; see default_lambdas.
    std::vector<double> exponential_lambdas;
    std::vector<double> linear_lambdas;
    int cluster_min = 2;  // identity-prior cluster range, inclusive
    int cluster_max = 25;
    int seeds_per_config = 1;
    AnnealConfig anneal; // template; per-run seeds derive from anneal.seed

    void validate() const;
    const std::vector<double>& lambdas(Kernel k) const;
};

// Scales at which the similarity between grid neighbors equals each target
// in {0, 0.25, 0.5, 0.75}. The exponential kernel never reaches 0, so its
// first member solves for 0.01 instead.
std::vector<double> default_lambdas(Kernel k);

struct SweepRow {
    std::string id;
    std::string method; // "organized" or "identity"
    int grid_rows = 0;
    int grid_cols = 0;
    Kernel kernel = Kernel::exponential;
    double lambda = 0.0;
    int clusters = 0;
    int seed_index = 0;
    std::uint64_t seed = 0;
    double modularity_value = 0.0;
    double organized_value = 0.0;
    int nonempty = 0;
    int crossings = -1; // -1: not scored (identity rows except the baseline)
    bool baseline = false;
    bool pareto = false;
    Clustering clustering;
    // Scalar trail kept for artifact emission; expectations dropped.
    AnnealResult outcome;
    double elapsed_ms = 0.0; // console reporting only, never serialized
};

struct RunReport {
    std::vector<SweepRow> rows; // organized rows first, then identity rows
    int baseline_row = -1;      // index into rows
    double elapsed_ms = 0.0;
};

// Runs every (grid, kernel, lambda, seed) combination with the grid prior
// plus every (cluster count, seed) combination with the identity prior.
// Row order is fixed by the config, not by scheduling; per-row seeds depend
// only on (anneal.seed, row index), so any parallelism level gives the same
// report. The best identity row by modularity becomes the "two phases"
// baseline and gets a force-directed layout from random positions (10
// restarts, fewest crossings kept); Pareto flags are then computed over the
// organized rows plus that baseline point.
RunReport run_sweep(const Graph& g, const SweepConfig& config, int parallelism);

// Deterministic report serialization; same key discipline as result files.
std::string write_report_json(const Graph& g, const SweepConfig& config, const RunReport& report);

// Reads a sweep config from JSON text; unknown keys are rejected.
SweepConfig parse_sweep_config(const std::string& text);

} // namespace orgmod
