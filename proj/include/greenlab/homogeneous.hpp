#pragma once

#include <utility>

#include "greenlab/brownian.hpp"
#include "greenlab/grid.hpp"
#include "greenlab/linalg.hpp"

namespace greenlab {

// Dirichlet Green kernel of -d^2/dx^2:
//   K(x,y) = x(1-y)  for x <= y,   y(1-x)  for y <= x.
// The deterministic backbone of both integral-equation routes.
double kernel_K(double x, double y);

enum class Which { u, v };
enum class Method { direct, fredholm };

// One homogeneous solution of -f'' + B'f = 0 with its derivative.
// u has boundary data (0,1), v has (1,0).
struct HomogeneousSolution {
    Which which;
    Method method;
    GridFunction values;
    GridFunction derivative_values;
};

// Collocation system for w(x) = rho(x) - Int_0^1 K(x,y) w(y) dB(y) with
// left-endpoint Ito sums: matrix = I + A, A(i,j) = K(x_i, y_j) dB_j for
// j < n and 0 for j = n.  K vanishes at x in {0,1}, so rows 0 and n are
// identity rows and the boundary data is imposed exactly.
struct DirectSystem {
    GridPtr grid;
    Matrix matrix;  // I + A
    Vector rhs;     // x_i for u, 1 - x_i for v
};

DirectSystem build_direct_system(const BrownianPath& path, Which which);

// Fredholm system of the second kind for h = w'.  Eliminating w turns the
// integro-differential identity
//   rho' - h(x) = c - Int_x^1 h(y) B(y) dy - w(x) B(x),
//   c = Int_0^1 { y h(y) + w(y) } B(y) dy,
// into
//   h(x) = f(x) + Int_0^1 M(x,y) h(y) dy,
//   M(x,y) = B(x) - y B(y) - IB(y)   for y <= x,
//            (1-y) B(y)   - IB(y)    for y >= x,    IB(y) = Int_y^1 B,
//   f(x)   = rho'(x) + w(0) (B(x) - IB(0)).
// Both branches agree on the diagonal.  With IB taken as the discrete
// trapezoid tail integral, the weighted column sums of M vanish
// identically, which pins Int_0^1 h = w(1) - w(0) up to roundoff.
struct FredholmSystem {
    GridPtr grid;
    Matrix kernel;  // M at the node lattice
    Matrix system;  // I - M * diag(weights)
    Vector rhs;     // f at the nodes
    double condition_estimate = 0.0;  // filled by the solver
};

FredholmSystem build_fredholm_system(const BrownianPath& path, Which which);

HomogeneousSolution solve_direct(const BrownianPath& path, Which which);
HomogeneousSolution solve_fredholm(const BrownianPath& path, Which which);

// u and v share the system matrix; factoring once halves the cost.
std::pair<HomogeneousSolution, HomogeneousSolution> solve_direct_pair(
    const BrownianPath& path);
std::pair<HomogeneousSolution, HomogeneousSolution> solve_fredholm_pair(
    const BrownianPath& path);

// Derivative through the stochastic integral identity
//   w'(x) = rho'(x) + Int_0^1 y w(y) dB(y) - Int_x^1 w(y) dB(y)
// with left-point sums; rho' = 1 for u and -1 for v.
GridFunction derivative_from_integral(const BrownianPath& path,
                                      const GridFunction& sol_values,
                                      Which which);

struct WronskianResult {
    double alpha;            // mean of u'v - uv' over the nodes
    double relative_spread;  // (max - min) / |alpha|
};

WronskianResult wronskian(const HomogeneousSolution& u_sol,
                          const HomogeneousSolution& v_sol);

}  // namespace greenlab
