#pragma once

#include <vector>

#include "greenlab/green.hpp"

namespace greenlab {

// Smooth test functions vanishing at both endpoints; the finite stand-in
// for quantifying over H1.
struct TestBasis {
    std::vector<GridFunction> functions;
};

// First m sine modes sin(j pi x), j = 1..m.
TestBasis sine_basis(const GridPtr& grid, int m = 8);

// <Lf, g> = Int f'g' dx + Int f g dB, trapezoid plus left-point Ito sum.
double weak_apply(const BrownianPath& path, const GridFunction& f,
                  const GridFunction& g);

// Pathwise form with no stochastic integral:
// E(f,g) = Int f'g' dx - Int (f'g + fg') B dx.
double bilinear_form(const BrownianPath& path, const GridFunction& f,
                     const GridFunction& g);

struct ResidualReport {
    double max_residual = 0.0;
    double mean_residual = 0.0;
};

// Residuals |E(Tf, h) - <f, h>| over basis x basis: T is a right inverse,
// so these vanish up to discretization error.
ResidualReport verify_right_inverse(const BrownianPath& path,
                                    const GreenKernel& gk,
                                    const TestBasis& basis);

// For f = T g, checks E(f, h) = <g, h> for all basis h, i.e. f lies in
// the domain of the strong operator and maps back to g.
ResidualReport tilde_domain_check(const BrownianPath& path,
                                  const GreenKernel& gk, const GridFunction& g,
                                  const TestBasis& basis);

}  // namespace greenlab
