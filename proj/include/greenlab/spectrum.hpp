#pragma once

#include <string>
#include <vector>

#include "greenlab/green.hpp"

namespace greenlab {

// Spectrum of the operator through its Green operator T: beta eigenvalue
// of T  <->  lambda = 1/beta eigenvalue of the operator, same
// eigenfunction.  Reported ascending in lambda; lambdas[i] is bitwise
// 1.0 / betas[i].
struct SpectrumResult {
    GridPtr grid;
    std::vector<double> betas;
    std::vector<double> lambdas;
    std::vector<GridFunction> eigenfunctions;  // L2-normalized H-elements
    std::string path_descriptor;
};

// k eigenpairs of the Nystrom matrix by decreasing |beta|.
EigenPairs eigendecompose(const NystromMatrix& m, int k);

// Reporting cutoff below which a beta no longer resolves an eigenvalue
// of the operator.
inline constexpr double kBetaCutoff = 1e-12;

SpectrumResult spectrum_of_L(const GreenKernel& gk, int k);

// Analytic Dirichlet reference for the zero potential:
// lambda_j = j^2 pi^2, e_j = sqrt(2) sin(j pi x).
SpectrumResult dirichlet_reference(int k, const GridPtr& grid);

}  // namespace greenlab
