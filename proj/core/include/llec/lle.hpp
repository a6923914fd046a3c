#pragma once

#include "llec/eigensolver.hpp"
#include "llec/geometry.hpp"

#include <cstdint>

namespace llec {

/// Row-stochastic reconstruction weights; row i is supported on N_i.
struct SparseWeights
{
    Eigen::SparseMatrix<double, Eigen::RowMajor> W;
};

/// Shape of the zero-row-sum perturbation matrix T.
enum class PerturbationShape
{
    Path,  ///< tridiagonal, diagonal (1, 2, ..., 2, 1)
    Cycle, ///< circulant: diagonal all 2, corners (0, p-1) and (p-1, 0) are -1
};

/// M = (I - W)^T (I - W), optionally plus lambda * T.
struct EmbedCostMatrix
{
    SparseMatrix M;
    double lambda = 0.0;
    bool perturbed = false;
};

enum class EigenSolverKind
{
    Auto,    ///< dense up to dense_limit points, Lanczos above
    Dense,
    Lanczos,
};

struct EmbedOptions
{
    EigenSolverKind solver = EigenSolverKind::Auto;
    Index dense_limit = 500;
    /// Relative deviation from constant allowed for the discarded eigenvector.
    double constant_tolerance = 1e-3;
    /// Corank threshold for unperturbed matrices, relative to ||M||.
    double null_tolerance = 1e-10;
    LanczosOptions lanczos;
};

/// d x p embedding; rows are unit-norm eigenvectors orthogonal to the constant.
struct Embedding
{
    Eigen::MatrixXd Y;
    Eigen::VectorXd eigenvalues;  ///< the d retained eigenvalues, increasing
    double null_eigenvalue = 0.0; ///< eigenvalue of the discarded constant vector
    int d = 0;
    int solver_iterations = 0;
};

/**
 * Local reconstruction weights. For every point the k x k Gram matrix of
 * neighbor offsets is regularized by reg_tol * trace (always), solved
 * against the ones vector, and normalized to sum to one.
 */
SparseWeights solve_weights(const PointCloud& cloud, const NeighborGraph& graph, double reg_tol = 1e-3);

EmbedCostMatrix build_cost_matrix(const SparseWeights& weights);

SparseMatrix cycle_laplacian(Index p, PerturbationShape shape = PerturbationShape::Path);

/// M + lambda * T, lambda > 0.
EmbedCostMatrix perturb(const EmbedCostMatrix& m, double lambda,
                        PerturbationShape shape = PerturbationShape::Path);

/**
 * Dimension of the numerical null space of M: the number of eigenvalues
 * below tol * lambda_max. Matrices larger than `dense_limit` are counted
 * structurally (connected components of the sparsity graph of M).
 */
Index count_components(const EmbedCostMatrix& m, double tol = 1e-10, Index dense_limit = 1000);

/**
 * Bottom d+1 eigenvectors of M; the first (constant) one is discarded.
 *
 * Throws EigenSolverError if the solver does not converge, if M is
 * unperturbed with corank > 1, or if the discarded vector is not constant.
 */
Embedding embed(const EmbedCostMatrix& m, int d, const EmbedOptions& options = {});

struct LleParams
{
    int k = 4;
    int d = 2;
    double lambda = 1e-9; ///< 0 disables the perturbation
    double reg_tol = 1e-3;
    PerturbationShape shape = PerturbationShape::Path;
    EmbedOptions embed;
};

/// knn -> solve_weights -> build_cost_matrix -> perturb (lambda > 0) -> embed.
Embedding run_lle(const PointCloud& cloud, const LleParams& params = {});

} // namespace llec
