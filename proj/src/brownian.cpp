#include "greenlab/brownian.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace greenlab {

namespace rng {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ull;
}  // namespace

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t split_stream(std::uint64_t master_seed, std::uint64_t index) {
    return mix(master_seed + (index + 1) * kStreamSalt);
}

double uniform_draw(std::uint64_t key, std::uint64_t counter) {
    const std::uint64_t z = mix(key + (counter + 1) * kGolden);
    // 53 significant bits, shifted into the open interval (0,1).
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

// PPND16 rational approximations (Wichura, Applied Statistics 37).
double normal_quantile(double p) {
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                  6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
              1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
        const double den =
            (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                  3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
              4.2313330701600911252e+1) * r + 1.0);
        return q * num / den;
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
        value = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        value = num / den;
    }
    return (q < 0.0) ? -value : value;
}

double normal_draw(std::uint64_t key, std::uint64_t counter) {
    return normal_quantile(uniform_draw(key, counter));
}

}  // namespace rng

BrownianPath sample_brownian(const GridPtr& grid, std::uint64_t seed) {
    const int n = grid->n;
    const double sqrth = std::sqrt(grid->step);
    BrownianPath p;
    p.grid = grid;
    p.kind = PathKind::sampled;
    p.seed = seed;
    p.values.resize(n + 1);
    p.stored_increments.resize(n);
    p.values[0] = 0.0;
    for (int j = 0; j < n; ++j) {
        p.stored_increments[j] = sqrth * rng::normal_draw(seed, static_cast<std::uint64_t>(j));
        p.values[j + 1] = p.values[j] + p.stored_increments[j];
    }
    return p;
}

BrownianPath piecewise_linear(const BrownianPath& source, int m) {
    const int n = source.grid->n;
    if (m < 1 || n % m != 0)
        throw ResolutionError("piecewise resolution m=" + std::to_string(m) +
                              " does not divide n=" + std::to_string(n));
    const int q = n / m;  // fine nodes per coarse interval
    BrownianPath p;
    p.grid = source.grid;
    p.kind = PathKind::piecewise;
    p.seed = source.seed;
    p.piecewise_m = m;
    p.label = source.label;
    p.values.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        const int j = i / q;
        const int r = i % q;
        if (r == 0) {
            p.values[i] = source.values[i];
        } else {
            const double t = static_cast<double>(r) / q;
            const double a = source.values[j * q];
            const double b = source.values[(j + 1) * q];
            p.values[i] = a + t * (b - a);
        }
    }
    return p;
}

BrownianPath zero_path(const GridPtr& grid) {
    BrownianPath p;
    p.grid = grid;
    p.kind = PathKind::deterministic;
    p.label = "zero";
    p.values.assign(grid->n + 1, 0.0);
    return p;
}

BrownianPath linear_path(const GridPtr& grid, double c) {
    BrownianPath p;
    p.grid = grid;
    p.kind = PathKind::deterministic;
    char buf[64];
    std::snprintf(buf, sizeof buf, "drift:%g", c);
    p.label = buf;
    p.values.resize(grid->n + 1);
    for (int i = 0; i <= grid->n; ++i) p.values[i] = c * grid->nodes[i];
    return p;
}

BrownianPath path_from_samples(const GridPtr& grid, std::vector<double> values) {
    if (static_cast<int>(values.size()) != grid->n + 1)
        throw ShapeError("path needs " + std::to_string(grid->n + 1) +
                         " samples, got " + std::to_string(values.size()));
    if (values[0] != 0.0)
        throw InvalidPathError("Brownian path must start at 0, got " +
                               std::to_string(values[0]));
    BrownianPath p;
    p.grid = grid;
    p.kind = PathKind::deterministic;
    p.label = "samples";
    p.values = std::move(values);
    return p;
}

BrownianPath coarsen(const BrownianPath& path, int factor) {
    const int n = path.grid->n;
    if (factor < 1 || n % factor != 0)
        throw ResolutionError("coarsening factor " + std::to_string(factor) +
                              " does not divide n=" + std::to_string(n));
    BrownianPath p;
    p.grid = make_grid(n / factor);
    p.kind = path.kind == PathKind::sampled ? PathKind::sampled : path.kind;
    p.seed = path.seed;
    p.label = path.label;
    p.values.resize(p.grid->n + 1);
    for (int i = 0; i <= p.grid->n; ++i) p.values[i] = path.values[i * factor];
    return p;
}

std::vector<double> increments(const BrownianPath& path) {
    if (!path.stored_increments.empty()) return path.stored_increments;
    const int n = path.grid->n;
    std::vector<double> d(n);
    for (int j = 0; j < n; ++j) d[j] = path.values[j + 1] - path.values[j];
    return d;
}

std::string describe(const BrownianPath& path) {
    switch (path.kind) {
        case PathKind::sampled:
            return "seed:" + std::to_string(path.seed);
        case PathKind::piecewise: {
            std::string base = path.label.empty() ? "seed:" + std::to_string(path.seed)
                                                  : path.label;
            return "piecewise(m=" + std::to_string(path.piecewise_m) + ") of " + base;
        }
        case PathKind::deterministic:
            return path.label.empty() ? "deterministic" : path.label;
    }
    return "path";
}

}  // namespace greenlab
