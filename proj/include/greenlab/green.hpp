#pragma once

#include <string>

#include "greenlab/homogeneous.hpp"

namespace greenlab {

// Green kernel G(x,y) = u(x∧y) v(x∨y) of the operator -d²/dx² + B' with
// Dirichlet conditions; T f = (1/alpha) Int_0^1 G(.,y) f(y) dy is its
// right inverse.  alpha is applied at operator level so the kernel table
// itself is the plain product of the homogeneous solutions.
struct GreenKernel {
    GridPtr grid;
    GridFunction u;
    GridFunction v;
    double alpha = 0.0;
    std::string path_descriptor;

    bool alpha_positive() const { return alpha > 0.0; }
};

GreenKernel build_green(const HomogeneousSolution& u_sol,
                        const HomogeneousSolution& v_sol, double alpha);

inline double green_value(const GreenKernel& gk, int i, int j) {
    return (i <= j) ? gk.u[i] * gk.v[j] : gk.u[j] * gk.v[i];
}

// [Tf](x_i) with the global trapezoid weights; O(n) via the split
//   Tf(x) = v(x)/alpha Int_0^x u f + u(x)/alpha Int_x^1 v f.
// The result vanishes exactly at both endpoints (u(0) = v(1) = 0).
GridFunction apply_T(const GreenKernel& gk, const GridFunction& f);

// Symmetrized Nystrom discretization  M = D^{1/2} (G/alpha) D^{1/2},
// D = diag(weights).  Eigenvectors psi map to eigenfunction samples
// D^{-1/2} psi.
struct NystromMatrix {
    GridPtr grid;
    Matrix entries;
};

NystromMatrix nystrom_matrix(const GreenKernel& gk);

// Full per-path pipeline: solve u and v, form the Wronskian, assemble G.
struct PathSolution {
    HomogeneousSolution u;
    HomogeneousSolution v;
    WronskianResult wronskian;
    GreenKernel kernel;
};

PathSolution solve_path(const BrownianPath& path, Method method);

}  // namespace greenlab
