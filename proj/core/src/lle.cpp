#include "llec/lle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

namespace llec {

SparseWeights solve_weights(const PointCloud& cloud, const NeighborGraph& graph, double reg_tol)
{
    if (!(reg_tol > 0.0))
        throw std::invalid_argument("solve_weights: reg_tol must be positive");
    if (graph.size() != cloud.size())
        throw std::invalid_argument("solve_weights: neighbor graph does not match the cloud");

    const Index p = cloud.size();
    const int k = graph.k();
    const Eigen::MatrixXd& X = cloud.data();
    std::vector<double> values(static_cast<std::size_t>(p) * k);
    Index failed = p;

#pragma omp parallel
    {
        Eigen::MatrixXd offsets(X.rows(), k);
        Eigen::MatrixXd gram(k, k);

#pragma omp for schedule(static)
        for (Index i = 0; i < p; ++i) {
            const auto nbrs = graph.neighbors(i);
            for (int a = 0; a < k; ++a)
                offsets.col(a) = X.col(i) - X.col(nbrs[a]);
            gram.noalias() = offsets.transpose() * offsets;
            const double trace = gram.trace();
            gram.diagonal().array() += reg_tol * trace;

            Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
            Eigen::VectorXd w = ldlt.solve(Eigen::VectorXd::Ones(k));
            const double total = w.sum();
            if (ldlt.info() != Eigen::Success || !(trace > 0.0) || !std::isfinite(total) ||
                total == 0.0) {
#pragma omp critical(llec_weights_error)
                failed = std::min(failed, i);
                continue;
            }
            w /= total;
            for (int a = 0; a < k; ++a)
                values[static_cast<std::size_t>(i) * k + a] = w(a);
        }
    }
    if (failed < p)
        throw std::runtime_error("solve_weights: singular local Gram matrix at point " +
                                 std::to_string(failed));

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(values.size());
    for (Index i = 0; i < p; ++i) {
        const auto nbrs = graph.neighbors(i);
        for (int a = 0; a < k; ++a)
            triplets.emplace_back(i, nbrs[a], values[static_cast<std::size_t>(i) * k + a]);
    }
    SparseWeights out;
    out.W.resize(p, p);
    out.W.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

EmbedCostMatrix build_cost_matrix(const SparseWeights& weights)
{
    const Index p = weights.W.rows();
    SparseMatrix eye(p, p);
    eye.setIdentity();
    const SparseMatrix residual = eye - SparseMatrix(weights.W);
    EmbedCostMatrix out;
    out.M = SparseMatrix(residual.transpose()) * residual;
    out.M.prune(0.0);
    return out;
}

SparseMatrix cycle_laplacian(Index p, PerturbationShape shape)
{
    if (p < 2)
        throw std::invalid_argument("cycle_laplacian: p must be at least 2");
    std::vector<Eigen::Triplet<double>> t;
    auto edge = [&](Index a, Index b) {
        t.emplace_back(a, a, 1.0);
        t.emplace_back(b, b, 1.0);
        t.emplace_back(a, b, -1.0);
        t.emplace_back(b, a, -1.0);
    };
    for (Index i = 0; i + 1 < p; ++i)
        edge(i, i + 1);
    if (shape == PerturbationShape::Cycle)
        edge(p - 1, 0);
    SparseMatrix T(p, p);
    T.setFromTriplets(t.begin(), t.end());
    return T;
}

EmbedCostMatrix perturb(const EmbedCostMatrix& m, double lambda, PerturbationShape shape)
{
    if (!(lambda > 0.0))
        throw std::invalid_argument("perturb: lambda must be positive");
    EmbedCostMatrix out;
    out.M = m.M + lambda * cycle_laplacian(m.M.rows(), shape);
    out.lambda = m.lambda + lambda;
    out.perturbed = true;
    return out;
}

Index count_components(const EmbedCostMatrix& m, double tol, Index dense_limit)
{
    const Index p = m.M.rows();
    if (p <= dense_limit) {
        const Eigen::VectorXd ev = all_eigenvalues_dense(m.M);
        const double top = ev(ev.size() - 1);
        if (!(top > 0.0))
            return p;
        return static_cast<Index>((ev.array() < tol * top).count());
    }

    // Structural count: M_ij != 0 exactly when i and j share a weight row.
    std::vector<Index> parent(static_cast<std::size_t>(p));
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    Index components = p;
    for (Index col = 0; col < m.M.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(m.M, col); it; ++it) {
            if (it.value() == 0.0)
                continue;
            const Index a = find(it.row()), b = find(it.col());
            if (a != b) {
                parent[std::max(a, b)] = std::min(a, b);
                --components;
            }
        }
    return components;
}

namespace {

EigenPairs bottom_pairs(const SparseMatrix& M, int count, const EmbedOptions& options)
{
    const bool dense = options.solver == EigenSolverKind::Dense ||
                       (options.solver == EigenSolverKind::Auto && M.rows() <= options.dense_limit);
    return dense ? smallest_eigenpairs_dense(M, count)
                 : smallest_eigenpairs_lanczos(M, count, options.lanczos);
}

} // namespace

Embedding embed(const EmbedCostMatrix& m, int d, const EmbedOptions& options)
{
    const Index p = m.M.rows();
    if (d < 1 || d >= p)
        throw std::invalid_argument("embed: need 1 <= d < p");

    const EigenPairs pairs = bottom_pairs(m.M, d + 1, options);
    const double norm = inf_norm(m.M);

    if (!m.perturbed) {
        if (pairs.values(1) <= options.null_tolerance * norm) {
            std::ostringstream msg;
            msg << "embed: cost matrix has corank > 1 (second eigenvalue " << pairs.values(1)
                << "); the neighbor graph is disconnected, perturb M with lambda > 0";
            throw EigenSolverError(msg.str());
        }
    } else if (pairs.values(1) <= 64.0 * std::numeric_limits<double>::epsilon() * norm) {
        std::ostringstream msg;
        msg << "embed: perturbed cost matrix is still numerically singular beyond the constant "
               "vector (second eigenvalue "
            << pairs.values(1) << "); increase lambda";
        throw EigenSolverError(msg.str());
    }

    const Eigen::VectorXd bottom = pairs.vectors.col(0);
    const double mean = bottom.mean();
    const double deviation = (bottom.array() - mean).abs().maxCoeff() / std::abs(mean);
    if (!(deviation < options.constant_tolerance)) {
        std::ostringstream msg;
        msg << "embed: bottom eigenvector is not constant (relative deviation " << deviation
            << "); corank of M is likely > 1";
        throw EigenSolverError(msg.str());
    }

    // project out the constant, re-orthonormalize, Rayleigh-Ritz in the span
    Eigen::MatrixXd Q = pairs.vectors.rightCols(d);
    Q.rowwise() -= Q.colwise().mean();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Q);
    Q = qr.householderQ() * Eigen::MatrixXd::Identity(p, d);
    Q.rowwise() -= Q.colwise().mean();
    const Eigen::MatrixXd H = Q.transpose() * (m.M * Q);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(0.5 * (H + H.transpose()));
    Q = Q * small.eigenvectors();

    Embedding out;
    out.d = d;
    out.eigenvalues = small.eigenvalues();
    out.null_eigenvalue = pairs.values(0);
    out.solver_iterations = pairs.iterations;
    out.Y = Q.transpose();
    for (int r = 0; r < d; ++r) {
        out.Y.row(r).normalize();
        Index arg = 0;
        out.Y.row(r).cwiseAbs().maxCoeff(&arg);
        if (out.Y(r, arg) < 0.0)
            out.Y.row(r) *= -1.0;
    }
    return out;
}

Embedding run_lle(const PointCloud& cloud, const LleParams& params)
{
    if (params.lambda < 0.0)
        throw std::invalid_argument("run_lle: lambda must be nonnegative");
    const NeighborGraph graph = knn(cloud, params.k);
    const SparseWeights weights = solve_weights(cloud, graph, params.reg_tol);
    EmbedCostMatrix m = build_cost_matrix(weights);
    if (params.lambda > 0.0)
        m = perturb(m, params.lambda, params.shape);
    return embed(m, params.d, params.embed);
}

} // namespace llec
