#include "greenlab/grid.hpp"

#include <cmath>
#include <utility>

namespace greenlab {

GridPtr make_grid(int n) {
    if (n < 2)
        throw InvalidGridError("grid needs at least 2 subintervals, got " +
                               std::to_string(n));
    auto g = std::make_shared<Grid>();
    g->n = n;
    g->step = 1.0 / n;
    g->nodes.resize(n + 1);
    g->weights.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        g->nodes[i] = static_cast<double>(i) / n;
        g->weights[i] = (i == 0 || i == n) ? g->step / 2 : g->step;
    }
    g->nodes[0] = 0.0;
    g->nodes[n] = 1.0;
    return g;
}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_->n + 1)
        throw ShapeError("grid function needs " + std::to_string(grid_->n + 1) +
                         " values, got " + std::to_string(values_.size()));
}

GridFunction GridFunction::h_element(GridPtr grid, std::vector<double> values) {
    GridFunction f(std::move(grid), std::move(values));
    if (!f.is_h_element())
        throw DomainError("H-element must vanish exactly at both endpoints");
    return f;
}

GridFunction GridFunction::sample(const GridPtr& grid,
                                  const std::function<double(double)>& fn) {
    std::vector<double> v(grid->n + 1);
    for (int i = 0; i <= grid->n; ++i) v[i] = fn(grid->nodes[i]);
    return GridFunction(grid, std::move(v));
}

bool GridFunction::is_h_element() const {
    return values_.front() == 0.0 && values_.back() == 0.0;
}

double integrate(const GridFunction& f) {
    const Grid& g = f.grid();
    double s = 0.0;
    for (int i = 0; i <= g.n; ++i) s += g.weights[i] * f[i];
    return s;
}

double inner_product(const GridFunction& f, const GridFunction& g) {
    if (!same_grid(f.grid(), g.grid()))
        throw ShapeError("inner product of functions on different grids");
    const Grid& gr = f.grid();
    double s = 0.0;
    for (int i = 0; i <= gr.n; ++i) s += gr.weights[i] * f[i] * g[i];
    return s;
}

GridFunction derivative(const GridFunction& f) {
    const Grid& g = f.grid();
    const int n = g.n;
    const double h = g.step;
    std::vector<double> d(n + 1);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (int i = 1; i < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[n] = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * h);
    return GridFunction(f.grid_ptr(), std::move(d));
}

GridFunction cumulative_integral(const GridFunction& f) {
    const Grid& g = f.grid();
    std::vector<double> out(g.n + 1);
    out[0] = 0.0;
    for (int i = 0; i < g.n; ++i)
        out[i + 1] = out[i] + 0.5 * g.step * (f[i] + f[i + 1]);
    return GridFunction(f.grid_ptr(), std::move(out));
}

}  // namespace greenlab
