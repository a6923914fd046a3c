#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace llec {

using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Smallest eigenpairs of a symmetric matrix, eigenvalues increasing,
/// eigenvectors unit-norm columns.
struct EigenPairs
{
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    int iterations = 0;
    double max_residual = 0.0; ///< max ||A v - theta v|| over returned pairs
};

class EigenSolverError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct LanczosOptions
{
    /// Shift used for (A - sigma I)^-1 is sigma = -shift_scale * ||A||_inf.
    double shift_scale = 1e-12;
    /// Convergence on the inverted operator: |beta * s_last| <= tol * |theta|.
    double tol = 1e-12;
    /// Krylov basis cap; 0 picks min(p, max(40, 8 * count)) and grows to p.
    int max_basis = 0;
    std::uint64_t seed = 0x11ec;
};

/// Full dense symmetric eigendecomposition, keeping the `count` smallest.
EigenPairs smallest_eigenpairs_dense(const SparseMatrix& a, int count);

/// All eigenvalues of a symmetric matrix (dense), increasing.
Eigen::VectorXd all_eigenvalues_dense(const SparseMatrix& a);

/**
 * Shift-invert Lanczos with full reorthogonalization for the `count`
 * smallest eigenpairs of a symmetric positive semidefinite sparse matrix.
 *
 * The start vector is drawn from a fixed-seed generator. The operator is
 * applied through a sparse LDL^T factorization of A - sigma I with a small
 * negative sigma, so A may be singular. Throws EigenSolverError when the
 * Ritz pairs have not converged after the basis cap is reached.
 */
EigenPairs smallest_eigenpairs_lanczos(const SparseMatrix& a, int count,
                                       const LanczosOptions& options = {});

/// Max absolute row sum; upper bound on the spectral radius.
double inf_norm(const SparseMatrix& a);

} // namespace llec
