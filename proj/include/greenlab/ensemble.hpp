#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "greenlab/green.hpp"
#include "greenlab/spectrum.hpp"

namespace greenlab {

enum class EnsembleMethod { direct, fredholm, both };

std::string to_string(EnsembleMethod m);
EnsembleMethod ensemble_method_from_string(const std::string& s);

struct EnsembleConfig {
    std::uint64_t master_seed = 0;
    int num_paths = 1;
    int n = 2000;
    int k = 5;
    EnsembleMethod method = EnsembleMethod::direct;
    int workers = 1;
    std::string output_dir;
    // "", "zero" or "drift:<c>"; replaces the sampled path on every index,
    // used for analytic sanity runs.
    std::string path_override;
};

struct PathRecord {
    int index = 0;
    std::string path;  // descriptor, e.g. "seed:123"
    bool ok = false;
    std::string error;
    double alpha = 0.0;
    double wronskian_spread = 0.0;
    std::vector<double> lambdas;
    std::vector<std::string> flags;
};

struct StatSummary {
    double mean = 0, variance = 0, min = 0, q25 = 0, median = 0, q75 = 0, max = 0;
};

struct EnsembleAggregates {
    int num_ok = 0;
    int excluded = 0;
    StatSummary alpha;
    std::vector<StatSummary> lambdas;  // index i summarizes lambda_{i+1}
};

struct EnsembleResult {
    EnsembleConfig config;
    std::vector<PathRecord> per_path;
    EnsembleAggregates aggregates;
    double wall_seconds = 0.0;
    std::string version;
};

// Runs the per-path pipeline (sample -> u,v -> wronskian -> G -> spectrum)
// over derived seeds split from the master seed.  Results depend only on
// (master_seed, num_paths, n, k, method, path_override); the worker count
// changes nothing but wall time.  Numerical failures on a path are
// recorded and excluded from the aggregates, not fatal.
EnsembleResult run_ensemble(const EnsembleConfig& config);

// Reduction in path-index order; exposed for direct testing.
EnsembleAggregates aggregate_records(const std::vector<PathRecord>& records,
                                     int k);

// results.csv, aggregates.json and manifest.json under dir.
void write_results(const EnsembleResult& result, const std::string& dir);

// Fixed-size worker pool over [0, count); fn must be safe to call
// concurrently for distinct indices.
void parallel_for_index(int count, int workers,
                        const std::function<void(int)>& fn);

}  // namespace greenlab
