#include "llec/eigensolver.hpp"

#include "llec/rng.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace llec {

double inf_norm(const SparseMatrix& a)
{
    Eigen::VectorXd rows = Eigen::VectorXd::Zero(a.rows());
    for (Index k = 0; k < a.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(a, k); it; ++it)
            rows(it.row()) += std::abs(it.value());
    return rows.size() ? rows.maxCoeff() : 0.0;
}

EigenPairs smallest_eigenpairs_dense(const SparseMatrix& a, int count)
{
    if (count < 1 || count > a.rows())
        throw std::invalid_argument("dense eigensolver: requested count out of range");
    const Eigen::MatrixXd dense(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success)
        throw EigenSolverError("dense eigensolver failed to converge");

    EigenPairs out;
    out.values = es.eigenvalues().head(count);
    out.vectors = es.eigenvectors().leftCols(count);
    out.iterations = 1;
    for (int i = 0; i < count; ++i)
        out.max_residual = std::max(
            out.max_residual, (dense * out.vectors.col(i) - out.values(i) * out.vectors.col(i)).norm());
    return out;
}

Eigen::VectorXd all_eigenvalues_dense(const SparseMatrix& a)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(a), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw EigenSolverError("dense eigensolver failed to converge");
    return es.eigenvalues();
}

namespace {

Eigen::VectorXd random_unit(Index n, Rng& rng)
{
    Eigen::VectorXd v(n);
    for (Index i = 0; i < n; ++i)
        v(i) = uniform01(rng) - 0.5;
    return v.normalized();
}

// Two passes of classical Gram-Schmidt against the first `cols` basis vectors.
void orthogonalize(Eigen::VectorXd& w, const Eigen::MatrixXd& basis, Index cols)
{
    for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd h = basis.leftCols(cols).transpose() * w;
        w.noalias() -= basis.leftCols(cols) * h;
    }
}

} // namespace

EigenPairs smallest_eigenpairs_lanczos(const SparseMatrix& a, int count, const LanczosOptions& options)
{
    const Index n = a.rows();
    if (a.cols() != n)
        throw std::invalid_argument("lanczos: matrix must be square");
    if (count < 1 || count > n)
        throw std::invalid_argument("lanczos: requested count out of range");

    const double norm = std::max(inf_norm(a), 1e-300);
    const double sigma = -options.shift_scale * norm;

    SparseMatrix shifted = a;
    {
        SparseMatrix eye(n, n);
        eye.setIdentity();
        shifted -= sigma * eye;
    }
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(shifted);
    if (ldlt.info() != Eigen::Success)
        throw EigenSolverError("lanczos: factorization of the shifted matrix failed");

    const Index cap = options.max_basis > 0 ? std::min<Index>(options.max_basis, n)
                                            : std::min<Index>(n, std::max<Index>(600, 8 * count));
    const Index first_check = std::min<Index>(cap, std::max<Index>(40, 8 * count));

    Rng rng(options.seed);
    Eigen::MatrixXd basis(n, cap + 1);
    std::vector<double> alpha;
    std::vector<double> beta; // beta[j] couples basis j and j+1
    basis.col(0) = random_unit(n, rng);

    Eigen::VectorXd theta;
    Eigen::MatrixXd ritz;
    Index steps = 0;
    bool converged = false;
    double worst_estimate = 0.0;

    for (Index j = 0; j < cap; ++j) {
        Eigen::VectorXd w = ldlt.solve(basis.col(j));
        const double aj = basis.col(j).dot(w);
        w -= aj * basis.col(j);
        if (j > 0)
            w -= beta[j - 1] * basis.col(j - 1);
        orthogonalize(w, basis, j + 1);
        alpha.push_back(aj);
        double bj = w.norm();
        steps = j + 1;

        const bool exhausted = (j + 1 == n);
        if (!exhausted && bj <= 1e-13 * std::abs(aj)) {
            // Invariant subspace found: continue from a fresh orthogonal direction.
            Eigen::VectorXd fresh = random_unit(n, rng);
            orthogonalize(fresh, basis, j + 1);
            fresh.normalize();
            w = fresh;
            bj = 0.0;
        }
        beta.push_back(bj);
        if (!exhausted)
            basis.col(j + 1) = bj > 0.0 ? Eigen::VectorXd(w / bj) : w;

        const bool check = exhausted || j + 1 == cap ||
                           (j + 1 >= first_check && (j + 1 - first_check) % 10 == 0);
        if (!check || steps < count)
            continue;

        const Index m = steps;
        Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
        Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        if (tri.info() != Eigen::Success)
            throw EigenSolverError("lanczos: tridiagonal eigensolve failed");

        // Largest theta of the inverse are the smallest eigenvalues of A.
        theta = tri.eigenvalues().tail(count).reverse();
        const Eigen::MatrixXd s = tri.eigenvectors().rightCols(count).rowwise().reverse();
        worst_estimate = 0.0;
        converged = true;
        for (int i = 0; i < count; ++i) {
            const double est = exhausted ? 0.0 : std::abs(bj * s(m - 1, i));
            worst_estimate = std::max(worst_estimate, est / std::abs(theta(i)));
            if (est > options.tol * std::abs(theta(i)))
                converged = false;
        }
        if (converged || exhausted) {
            ritz = basis.leftCols(m) * s;
            converged = true;
            break;
        }
    }

    if (!converged) {
        std::ostringstream msg;
        msg << "lanczos: no convergence after " << steps << " iterations (basis cap " << cap
            << "), worst relative residual estimate " << worst_estimate << ", tol " << options.tol;
        throw EigenSolverError(msg.str());
    }

    EigenPairs out;
    out.iterations = static_cast<int>(steps);
    std::vector<std::pair<double, Index>> order;
    Eigen::MatrixXd vecs(n, count);
    Eigen::VectorXd vals(count);
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd u = ritz.col(i).normalized();
        vals(i) = u.dot(a * u);
        vecs.col(i) = u;
        order.emplace_back(vals(i), i);
    }
    std::sort(order.begin(), order.end());
    out.values.resize(count);
    out.vectors.resize(n, count);
    for (int i = 0; i < count; ++i) {
        const Index src = order[i].second;
        out.values(i) = vals(src);
        out.vectors.col(i) = vecs.col(src);
        out.max_residual = std::max(out.max_residual,
                                    (a * vecs.col(src) - vals(src) * vecs.col(src)).norm());
    }
    if (out.max_residual > 1e-8 * norm) {
        std::ostringstream msg;
        msg << "lanczos: Ritz residual " << out.max_residual << " exceeds 1e-8 * ||A|| after "
            << steps << " iterations";
        throw EigenSolverError(msg.str());
    }
    return out;
}

} // namespace llec
