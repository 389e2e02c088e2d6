#include "greenlab/weak_form.hpp"

#include <cmath>
#include <numbers>

namespace greenlab {

namespace {

void require_h1(const GridFunction& f, const char* name) {
    if (!f.is_h_element())
        throw DomainError(std::string(name) +
                          " must vanish exactly at both endpoints");
}

double gradient_term(const GridFunction& f, const GridFunction& g) {
    return inner_product(derivative(f), derivative(g));
}

}  // namespace

TestBasis sine_basis(const GridPtr& grid, int m) {
    if (m < 1) throw DomainError("basis size must be positive");
    TestBasis basis;
    const double pi = std::numbers::pi;
    for (int j = 1; j <= m; ++j) {
        std::vector<double> values(grid->n + 1);
        for (int i = 1; i < grid->n; ++i)
            values[i] = std::sin(j * pi * grid->nodes[i]);
        values.front() = 0.0;
        values.back() = 0.0;
        basis.functions.push_back(
            GridFunction::h_element(grid, std::move(values)));
    }
    return basis;
}

double weak_apply(const BrownianPath& path, const GridFunction& f,
                  const GridFunction& g) {
    if (!same_grid(*path.grid, f.grid()) || !same_grid(*path.grid, g.grid()))
        throw ShapeError("weak_apply arguments on different grids");
    require_h1(f, "f");
    require_h1(g, "g");
    const int n = path.grid->n;
    const std::vector<double> db = increments(path);
    double stochastic = 0.0;
    for (int j = 0; j < n; ++j) stochastic += f[j] * g[j] * db[j];
    return gradient_term(f, g) + stochastic;
}

double bilinear_form(const BrownianPath& path, const GridFunction& f,
                     const GridFunction& g) {
    if (!same_grid(*path.grid, f.grid()) || !same_grid(*path.grid, g.grid()))
        throw ShapeError("bilinear_form arguments on different grids");
    require_h1(f, "f");
    require_h1(g, "g");
    const Grid& grid = *path.grid;
    const GridFunction fp = derivative(f);
    const GridFunction gp = derivative(g);
    double drift = 0.0;
    for (int i = 0; i <= grid.n; ++i)
        drift += grid.weights[i] * (fp[i] * g[i] + f[i] * gp[i]) * path.values[i];
    return inner_product(fp, gp) - drift;
}

ResidualReport verify_right_inverse(const BrownianPath& path,
                                    const GreenKernel& gk,
                                    const TestBasis& basis) {
    ResidualReport report;
    double sum = 0.0;
    int count = 0;
    for (const GridFunction& f : basis.functions) {
        const GridFunction tf = apply_T(gk, f);
        for (const GridFunction& h : basis.functions) {
            const double r =
                std::abs(bilinear_form(path, tf, h) - inner_product(f, h));
            report.max_residual = std::max(report.max_residual, r);
            sum += r;
            ++count;
        }
    }
    report.mean_residual = sum / count;
    return report;
}

ResidualReport tilde_domain_check(const BrownianPath& path,
                                  const GreenKernel& gk, const GridFunction& g,
                                  const TestBasis& basis) {
    require_h1(g, "g");
    const GridFunction f = apply_T(gk, g);
    ResidualReport report;
    double sum = 0.0;
    int count = 0;
    for (const GridFunction& h : basis.functions) {
        const double r =
            std::abs(bilinear_form(path, f, h) - inner_product(g, h));
        report.max_residual = std::max(report.max_residual, r);
        sum += r;
        ++count;
    }
    report.mean_residual = sum / count;
    return report;
}

}  // namespace greenlab
