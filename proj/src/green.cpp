#include "greenlab/green.hpp"

#include <cmath>
#include <utility>

namespace greenlab {

GreenKernel build_green(const HomogeneousSolution& u_sol,
                        const HomogeneousSolution& v_sol, double alpha) {
    if (u_sol.which != Which::u || v_sol.which != Which::v)
        throw DomainError("build_green expects (u, v) in that order");
    if (!same_grid(u_sol.values.grid(), v_sol.values.grid()))
        throw ShapeError("u and v live on different grids");
    if (alpha == 0.0)
        throw DependentSolutionsError("Green kernel undefined for alpha = 0");
    return GreenKernel{u_sol.values.grid_ptr(), u_sol.values, v_sol.values,
                       alpha, ""};
}

GridFunction apply_T(const GreenKernel& gk, const GridFunction& f) {
    if (!same_grid(*gk.grid, f.grid()))
        throw ShapeError("apply_T input on a different grid");
    const Grid& g = *gk.grid;
    const int n = g.n;
    std::vector<double> out(n + 1);

    // prefix[i] = sum_{j<=i} w_j u_j f_j, suffix[i] = sum_{j>i} w_j v_j f_j
    double prefix = 0.0;
    std::vector<double> suffix(n + 2, 0.0);
    for (int j = n; j >= 0; --j)
        suffix[j] = suffix[j + 1] + g.weights[j] * gk.v[j] * f[j];
    for (int i = 0; i <= n; ++i) {
        prefix += g.weights[i] * gk.u[i] * f[i];
        out[i] = (gk.v[i] * prefix + gk.u[i] * suffix[i + 1]) / gk.alpha;
    }
    // u(0) = v(1) = 0 make Tf an H-element; impose the exact zeros
    out[0] = 0.0;
    out[n] = 0.0;
    return GridFunction(gk.grid, std::move(out));
}

NystromMatrix nystrom_matrix(const GreenKernel& gk) {
    const Grid& g = *gk.grid;
    const int n = g.n;
    std::vector<double> s(n + 1);
    for (int i = 0; i <= n; ++i) s[i] = std::sqrt(g.weights[i]);

    NystromMatrix m{gk.grid, Matrix(n + 1, n + 1)};
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double value = s[i] * s[j] * green_value(gk, i, j) / gk.alpha;
            m.entries(i, j) = value;
            m.entries(j, i) = value;
        }
    }
    return m;
}

PathSolution solve_path(const BrownianPath& path, Method method) {
    auto [u_sol, v_sol] = (method == Method::direct) ? solve_direct_pair(path)
                                                     : solve_fredholm_pair(path);
    WronskianResult wr = wronskian(u_sol, v_sol);
    GreenKernel gk = build_green(u_sol, v_sol, wr.alpha);
    gk.path_descriptor = describe(path);
    return PathSolution{std::move(u_sol), std::move(v_sol), wr, std::move(gk)};
}

}  // namespace greenlab
