#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "greenlab/errors.hpp"

namespace greenlab {

// Uniform partition of [0,1] with trapezoid quadrature weights.
struct Grid {
    int n = 0;        // number of subintervals, nodes are 0..n
    double step = 0;  // 1/n
    std::vector<double> nodes;    // nodes[i] = i/n
    std::vector<double> weights;  // step/2 at the endpoints, step inside

    int size() const { return n + 1; }
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int n);

// Do the two grids describe the same partition?  Uniform grids on [0,1]
// are fully determined by n.
inline bool same_grid(const Grid& a, const Grid& b) { return a.n == b.n; }

// Values sampled at the nodes of a grid.  Immutable after construction.
class GridFunction {
public:
    GridFunction(GridPtr grid, std::vector<double> values);

    // Constructs and checks values[0] == values[n] == 0 exactly, the
    // defining property of an element of H.
    static GridFunction h_element(GridPtr grid, std::vector<double> values);

    // Samples fn at the grid nodes.
    static GridFunction sample(const GridPtr& grid,
                               const std::function<double(double)>& fn);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
    int size() const { return static_cast<int>(values_.size()); }

    bool is_h_element() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

double integrate(const GridFunction& f);
double inner_product(const GridFunction& f, const GridFunction& g);

// Central differences inside, second-order one-sided stencils at the ends.
GridFunction derivative(const GridFunction& f);

// Trapezoidal running integral, output[0] = 0.
GridFunction cumulative_integral(const GridFunction& f);

}  // namespace greenlab
