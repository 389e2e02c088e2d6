#include "greenlab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace greenlab {

EigenPairs eigendecompose(const NystromMatrix& m, int k) {
    const int dim = m.grid->n + 1;
    if (k < 1 || k > dim)
        throw DomainError("k must lie in [1, n+1], got " + std::to_string(k));
    return symmetric_eigen_topk(m.entries, k);
}

SpectrumResult spectrum_of_L(const GreenKernel& gk, int k) {
    const Grid& g = *gk.grid;
    NystromMatrix nm = nystrom_matrix(gk);
    EigenPairs pairs = eigendecompose(nm, k);

    for (int i = 0; i < k; ++i)
        if (std::abs(pairs.values[i]) < kBetaCutoff)
            throw CutoffError("eigenvalue " + std::to_string(i + 1) +
                              " of T is below the reporting cutoff; "
                              "k is too large for this grid");

    struct Mode {
        double beta;
        double lambda;
        GridFunction fn;
    };
    std::vector<Mode> modes;
    modes.reserve(k);
    for (int i = 0; i < k; ++i) {
        std::vector<double> e(g.n + 1);
        for (int j = 0; j <= g.n; ++j)
            e[j] = pairs.vectors(j, i) / std::sqrt(g.weights[j]);
        // rows 0 and n of the Nystrom matrix vanish, so these components
        // are exact zeros of the eigenfunction
        e.front() = 0.0;
        e.back() = 0.0;
        GridFunction fn(gk.grid, std::move(e));
        const double norm = std::sqrt(inner_product(fn, fn));
        int first = 1;
        while (first < g.n && fn[first] == 0.0) ++first;
        const double sign = (fn[first] < 0.0) ? -1.0 : 1.0;
        std::vector<double> scaled(g.n + 1);
        for (int j = 0; j <= g.n; ++j) scaled[j] = fn[j] * sign / norm;
        modes.push_back(Mode{pairs.values[i], 1.0 / pairs.values[i],
                             GridFunction(gk.grid, std::move(scaled))});
    }
    std::sort(modes.begin(), modes.end(),
              [](const Mode& a, const Mode& b) { return a.lambda < b.lambda; });

    SpectrumResult out;
    out.grid = gk.grid;
    out.path_descriptor = gk.path_descriptor;
    for (Mode& m : modes) {
        out.betas.push_back(m.beta);
        out.lambdas.push_back(m.lambda);
        out.eigenfunctions.push_back(std::move(m.fn));
    }
    return out;
}

SpectrumResult dirichlet_reference(int k, const GridPtr& grid) {
    if (k < 1) throw DomainError("k must be positive");
    SpectrumResult out;
    out.grid = grid;
    out.path_descriptor = "dirichlet-reference";
    const double pi = std::numbers::pi;
    for (int j = 1; j <= k; ++j) {
        const double beta = 1.0 / (j * j * pi * pi);
        // store lambda as the literal reciprocal of the stored beta so the
        // pairing invariant holds bitwise across all SpectrumResults
        out.betas.push_back(beta);
        out.lambdas.push_back(1.0 / beta);
        std::vector<double> e(grid->n + 1);
        for (int i = 1; i < grid->n; ++i)
            e[i] = std::sqrt(2.0) * std::sin(j * pi * grid->nodes[i]);
        e.front() = 0.0;
        e.back() = 0.0;
        out.eigenfunctions.emplace_back(grid, std::move(e));
    }
    return out;
}

}  // namespace greenlab
