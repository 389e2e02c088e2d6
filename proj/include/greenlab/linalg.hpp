#pragma once

#include <eigen3/Eigen/Dense>

#include <vector>

#include "greenlab/errors.hpp"

namespace greenlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// LU with partial pivoting, keeping the smallest pivot around so callers
// can decide what counts as degenerate.
struct LuFactorization {
    Eigen::PartialPivLU<Matrix> lu;
    double min_pivot = 0.0;

    explicit LuFactorization(const Matrix& a);
    Vector solve(const Vector& rhs) const { return lu.solve(rhs); }
};

// Cheap lower bound on the infinity-norm condition number, from a few
// probe solves.  Good enough to flag a pathological system.
double condition_estimate(const Matrix& a, const LuFactorization& f);

// k eigenpairs of a symmetric matrix, ordered by decreasing |value|.
// Householder tridiagonalization, implicit-shift QL for the full set of
// eigenvalues, inverse iteration plus back-transform for the requested
// eigenvectors.  Each returned pair satisfies
//   ||M psi - beta psi||_2 <= 1e-10 * ||M||_2,
// otherwise a SolverError is raised.
struct EigenPairs {
    std::vector<double> values;  // decreasing |value|
    Matrix vectors;              // column i pairs with values[i], unit norm
    double max_residual = 0.0;
    double matrix_norm = 0.0;  // spectral norm = max |eigenvalue|
};

EigenPairs symmetric_eigen_topk(const Matrix& m, int k);

// All eigenvalues of a symmetric tridiagonal matrix (implicit-shift QL),
// unordered.  diag has size n, offdiag size n-1.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag,
                                            std::vector<double> offdiag);

}  // namespace greenlab
