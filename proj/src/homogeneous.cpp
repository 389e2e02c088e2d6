#include "greenlab/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace greenlab {

double kernel_K(double x, double y) {
    if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0)
        throw DomainError("kernel_K arguments must lie in [0,1]");
    return (x <= y) ? x * (1.0 - y) : y * (1.0 - x);
}

namespace {

constexpr double kPivotTol = 1e-13;
constexpr double kConditionLimit = 1e8;

Vector boundary_rhs(const Grid& g, Which which) {
    Vector rhs(g.n + 1);
    for (int i = 0; i <= g.n; ++i)
        rhs[i] = (which == Which::u) ? g.nodes[i] : 1.0 - g.nodes[i];
    return rhs;
}

Matrix direct_matrix(const BrownianPath& path) {
    const Grid& g = *path.grid;
    const int n = g.n;
    const std::vector<double> db = increments(path);
    Matrix m = Matrix::Identity(n + 1, n + 1);
    for (int i = 1; i < n; ++i) {
        const double xi = g.nodes[i];
        for (int j = 0; j < n; ++j)
            m(i, j) += kernel_K(xi, g.nodes[j]) * db[j];
    }
    return m;
}

HomogeneousSolution direct_solution(const BrownianPath& path, Which which,
                                    const LuFactorization& f, const Vector& rhs) {
    Vector w = f.solve(rhs);
    std::vector<double> vals(w.data(), w.data() + w.size());
    GridFunction gf(path.grid, std::move(vals));
    return HomogeneousSolution{which, Method::direct,
                               gf, derivative_from_integral(path, gf, which)};
}

// Trapezoid tail integrals IB[j] = Int_{x_j}^1 B, accumulated from the right.
std::vector<double> tail_integrals(const BrownianPath& path) {
    const Grid& g = *path.grid;
    std::vector<double> ib(g.n + 1);
    ib[g.n] = 0.0;
    for (int j = g.n - 1; j >= 0; --j)
        ib[j] = ib[j + 1] + 0.5 * g.step * (path.values[j] + path.values[j + 1]);
    return ib;
}

HomogeneousSolution fredholm_solution(const BrownianPath& path, Which which,
                                      const FredholmSystem& sys,
                                      const LuFactorization& f) {
    Vector h = f.solve(sys.rhs);
    std::vector<double> hv(h.data(), h.data() + h.size());
    GridFunction deriv(path.grid, std::move(hv));
    GridFunction integral = cumulative_integral(deriv);
    std::vector<double> vals(integral.values().begin(), integral.values().end());
    if (which == Which::v)
        for (double& x : vals) x += 1.0;  // v(0) = 1
    GridFunction values(path.grid, std::move(vals));
    return HomogeneousSolution{which, Method::fredholm, values, deriv};
}

}  // namespace

DirectSystem build_direct_system(const BrownianPath& path, Which which) {
    if (path.grid->n < 2) throw InvalidGridError("path grid too small");
    return DirectSystem{path.grid, direct_matrix(path),
                        boundary_rhs(*path.grid, which)};
}

FredholmSystem build_fredholm_system(const BrownianPath& path, Which which) {
    const Grid& g = *path.grid;
    const int n = g.n;
    if (n < 2) throw InvalidGridError("path grid too small");
    const std::vector<double>& B = path.values;
    const std::vector<double> ib = tail_integrals(path);

    FredholmSystem sys;
    sys.grid = path.grid;
    sys.kernel.resize(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const double yj = g.nodes[j];
            sys.kernel(i, j) = (j < i) ? B[i] - yj * B[j] - ib[j]
                                       : (1.0 - yj) * B[j] - ib[j];
        }
    }
    sys.system = Matrix::Identity(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            sys.system(i, j) -= sys.kernel(i, j) * g.weights[j];

    const double rho_prime = (which == Which::u) ? 1.0 : -1.0;
    const double w0 = (which == Which::u) ? 0.0 : 1.0;
    sys.rhs.resize(n + 1);
    for (int i = 0; i <= n; ++i)
        sys.rhs[i] = rho_prime + w0 * (B[i] - ib[0]);
    return sys;
}

HomogeneousSolution solve_direct(const BrownianPath& path, Which which) {
    DirectSystem sys = build_direct_system(path, which);
    LuFactorization f(sys.matrix);
    if (f.min_pivot < kPivotTol)
        throw DegeneratePathError(
            "direct system is numerically singular (pivot " +
                std::to_string(f.min_pivot) + ") for path " + describe(path),
            f.min_pivot);
    return direct_solution(path, which, f, sys.rhs);
}

std::pair<HomogeneousSolution, HomogeneousSolution> solve_direct_pair(
    const BrownianPath& path) {
    DirectSystem sys = build_direct_system(path, Which::u);
    LuFactorization f(sys.matrix);
    if (f.min_pivot < kPivotTol)
        throw DegeneratePathError(
            "direct system is numerically singular (pivot " +
                std::to_string(f.min_pivot) + ") for path " + describe(path),
            f.min_pivot);
    return {direct_solution(path, Which::u, f, sys.rhs),
            direct_solution(path, Which::v, f, boundary_rhs(*path.grid, Which::v))};
}

HomogeneousSolution solve_fredholm(const BrownianPath& path, Which which) {
    FredholmSystem sys = build_fredholm_system(path, which);
    LuFactorization f(sys.system);
    sys.condition_estimate = condition_estimate(sys.system, f);
    if (f.min_pivot < kPivotTol || sys.condition_estimate > kConditionLimit)
        throw DegeneratePathError(
            "Fredholm system ill-conditioned (pivot " + std::to_string(f.min_pivot) +
                ", cond~" + std::to_string(sys.condition_estimate) + ") for path " +
                describe(path),
            f.min_pivot);
    return fredholm_solution(path, which, sys, f);
}

std::pair<HomogeneousSolution, HomogeneousSolution> solve_fredholm_pair(
    const BrownianPath& path) {
    FredholmSystem sys_u = build_fredholm_system(path, Which::u);
    LuFactorization f(sys_u.system);
    sys_u.condition_estimate = condition_estimate(sys_u.system, f);
    if (f.min_pivot < kPivotTol || sys_u.condition_estimate > kConditionLimit)
        throw DegeneratePathError(
            "Fredholm system ill-conditioned (pivot " + std::to_string(f.min_pivot) +
                ", cond~" + std::to_string(sys_u.condition_estimate) + ") for path " +
                describe(path),
            f.min_pivot);
    FredholmSystem sys_v = build_fredholm_system(path, Which::v);
    return {fredholm_solution(path, Which::u, sys_u, f),
            fredholm_solution(path, Which::v, sys_v, f)};
}

GridFunction derivative_from_integral(const BrownianPath& path,
                                      const GridFunction& sol_values,
                                      Which which) {
    if (!same_grid(*path.grid, sol_values.grid()))
        throw ShapeError("solution values and path live on different grids");
    const Grid& g = *path.grid;
    const int n = g.n;
    const std::vector<double> db = increments(path);
    const double rho_prime = (which == Which::u) ? 1.0 : -1.0;

    double weighted = 0.0;  // Int_0^1 y w(y) dB(y)
    for (int j = 0; j < n; ++j) weighted += g.nodes[j] * sol_values[j] * db[j];

    // tail[i] = Int_{x_i}^1 w dB as a left-point sum
    std::vector<double> out(n + 1);
    double tail = 0.0;
    out[n] = rho_prime + weighted;
    for (int i = n - 1; i >= 0; --i) {
        tail += sol_values[i] * db[i];
        out[i] = rho_prime + weighted - tail;
    }
    return GridFunction(path.grid, std::move(out));
}

WronskianResult wronskian(const HomogeneousSolution& u_sol,
                          const HomogeneousSolution& v_sol) {
    if (u_sol.which != Which::u || v_sol.which != Which::v)
        throw DomainError("wronskian expects (u, v) in that order");
    if (!same_grid(u_sol.values.grid(), v_sol.values.grid()))
        throw ShapeError("wronskian of solutions on different grids");
    const int n = u_sol.values.grid().n;
    double sum = 0.0, wmin = 0.0, wmax = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double w = u_sol.derivative_values[i] * v_sol.values[i] -
                         u_sol.values[i] * v_sol.derivative_values[i];
        sum += w;
        if (i == 0) { wmin = wmax = w; }
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
    }
    const double alpha = sum / (n + 1);
    if (std::abs(alpha) < 1e-10)
        throw DependentSolutionsError(
            "u and v are numerically dependent (wronskian " +
            std::to_string(alpha) + ")");
    return WronskianResult{alpha, (wmax - wmin) / std::abs(alpha)};
}

}  // namespace greenlab
