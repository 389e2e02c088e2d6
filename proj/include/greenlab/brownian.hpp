#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "greenlab/grid.hpp"

namespace greenlab {

namespace rng {

// SplitMix64 finalizer; the whole generator is stateless so draws are
// addressable by (key, counter) and independent of evaluation order.
std::uint64_t mix(std::uint64_t z);

// Key of the index-th derived stream of a master seed.
std::uint64_t split_stream(std::uint64_t master_seed, std::uint64_t index);

// counter-th uniform in (0,1) of the stream identified by key.
double uniform_draw(std::uint64_t key, std::uint64_t counter);

// Standard normal quantile function (Wichura's PPND16), |error| ~ 1e-16.
double normal_quantile(double p);

// counter-th N(0,1) draw of a stream.
double normal_draw(std::uint64_t key, std::uint64_t counter);

}  // namespace rng

enum class PathKind { sampled, piecewise, deterministic };

// Brownian motion (or a deterministic surrogate) sampled at grid nodes.
// values[0] = 0 always.  For sampled paths the increments are the exact
// N(0, step) draws that built the values, so they telescope without
// rounding.
struct BrownianPath {
    GridPtr grid;
    std::vector<double> values;
    PathKind kind = PathKind::deterministic;
    std::uint64_t seed = 0;  // meaningful for kind == sampled / piecewise
    int piecewise_m = 0;     // meaningful for kind == piecewise
    std::string label;       // meaningful for kind == deterministic

    std::vector<double> stored_increments;  // empty unless sampled
};

BrownianPath sample_brownian(const GridPtr& grid, std::uint64_t seed);

// Piecewise-linear approximant through the source values at the m+1
// nodes j/m, resampled on the full source grid.  m must divide n.
BrownianPath piecewise_linear(const BrownianPath& source, int m);

BrownianPath zero_path(const GridPtr& grid);
BrownianPath linear_path(const GridPtr& grid, double c);  // B(x) = c x
BrownianPath path_from_samples(const GridPtr& grid, std::vector<double> values);

// Restriction to every factor-th node: the exact Brownian path on the
// coarse grid, for nested refinement studies.
BrownianPath coarsen(const BrownianPath& path, int factor);

// dB_j = values[j+1] - values[j], j = 0..n-1.
std::vector<double> increments(const BrownianPath& path);

// Human-readable descriptor, e.g. "seed:7", "zero", "drift:4".
std::string describe(const BrownianPath& path);

}  // namespace greenlab
