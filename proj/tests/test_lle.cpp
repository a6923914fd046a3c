#include "oracles.hpp"

#include "llec/lle.hpp"
#include "llec/synthetic.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace llec;

namespace {

Eigen::MatrixXd dense(const SparseMatrix& m)
{
    return Eigen::MatrixXd(m);
}

PointCloud random_cloud(Index dim, Index p, std::uint64_t seed)
{
    Rng rng(seed);
    return PointCloud(oracle::random_matrix(dim, p, rng));
}

} // namespace

TEST(Weights, MatchKktOracle)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const PointCloud c = random_cloud(3, 40, seed);
        for (int k : {2, 5, 8}) {
            const Eigen::MatrixXd W = dense(solve_weights(c, knn(c, k)).W);
            const Eigen::MatrixXd ref = oracle::weight_matrix(c.data(), k, 1e-3);
            EXPECT_LT((W - ref).cwiseAbs().maxCoeff(), 1e-9) << "k=" << k;
        }
    }
}

TEST(Weights, TwoNeighborsCramer)
{
    const PointCloud c = random_cloud(2, 20, 4);
    const NeighborGraph g = knn(c, 2);
    const Eigen::MatrixXd W = dense(solve_weights(c, g).W);
    for (Index i = 0; i < 20; ++i) {
        const auto nb = g.neighbors(i);
        const auto [u, v] = oracle::weights2(c.point(i), c.point(nb[0]), c.point(nb[1]), 1e-3);
        EXPECT_NEAR(W(i, nb[0]), u, 1e-12);
        EXPECT_NEAR(W(i, nb[1]), v, 1e-12);
    }
}

TEST(Weights, ScaleInvariant)
{
    const PointCloud c = random_cloud(3, 30, 8);
    const PointCloud s(c.data() * 123.0);
    EXPECT_LT((dense(solve_weights(c, knn(c, 4)).W) - dense(solve_weights(s, knn(s, 4)).W)).cwiseAbs().maxCoeff(),
              1e-10);
}

TEST(Weights, RejectsBadInput)
{
    const PointCloud c = random_cloud(2, 10, 1);
    EXPECT_THROW(solve_weights(c, knn(c, 3), 0.0), std::invalid_argument);
    const PointCloud other = random_cloud(2, 11, 1);
    EXPECT_THROW(solve_weights(c, knn(other, 3)), std::invalid_argument);
}

TEST(CostMatrix, SymmetricPsdZeroRowSums)
{
    const PointCloud c = random_cloud(3, 50, 2);
    const EmbedCostMatrix m = build_cost_matrix(solve_weights(c, knn(c, 6)));
    const Eigen::MatrixXd M = dense(m.M);
    EXPECT_FALSE(m.perturbed);
    EXPECT_LT((M - M.transpose()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT(M.rowwise().sum().cwiseAbs().maxCoeff(), 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10);
    const Eigen::MatrixXd ref = oracle::cost_matrix(oracle::weight_matrix(c.data(), 6, 1e-3));
    EXPECT_LT((M - ref).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Perturbation, PathAndCycleShapes)
{
    const Eigen::MatrixXd path = dense(cycle_laplacian(5));
    EXPECT_EQ(path, oracle::path_laplacian(5));
    const Eigen::MatrixXd cyc = dense(cycle_laplacian(5, PerturbationShape::Cycle));
    EXPECT_EQ(cyc.diagonal(), Eigen::VectorXd::Constant(5, 2.0));
    EXPECT_EQ(cyc(0, 4), -1.0);
    EXPECT_EQ(cyc(4, 0), -1.0);
    EXPECT_LT(cyc.rowwise().sum().cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW(cycle_laplacian(1), std::invalid_argument);

    const PointCloud c = random_cloud(2, 12, 3);
    const EmbedCostMatrix m = build_cost_matrix(solve_weights(c, knn(c, 3)));
    EXPECT_THROW(perturb(m, 0.0), std::invalid_argument);
    const EmbedCostMatrix mp = perturb(m, 1e-3);
    EXPECT_TRUE(mp.perturbed);
    EXPECT_DOUBLE_EQ(mp.lambda, 1e-3);
    EXPECT_LT((dense(mp.M) - dense(m.M) - 1e-3 * oracle::path_laplacian(12)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Components, StructuralCountAboveDenseLimit)
{
    // two far-apart arcs, 2 neighbors each: two components either way
    Eigen::MatrixXd X(2, 40);
    for (int i = 0; i < 40; ++i) {
        const double t = 0.1 * (i / 2);
        X.col(i) << 50.0 * (i % 2) + std::cos(t), std::sin(t);
    }
    const PointCloud c(X);
    const EmbedCostMatrix m = build_cost_matrix(solve_weights(c, knn(c, 2)));
    EXPECT_EQ(count_components(m), 2);
    EXPECT_EQ(count_components(m, 1e-10, 10), 2);
    EXPECT_EQ(count_components(perturb(m, 1e-9)), 1);
}

TEST(Embed, UnperturbedCorankIsAnError)
{
    Eigen::MatrixXd X(2, 40);
    for (int i = 0; i < 40; ++i) {
        const double t = 0.1 * (i / 2);
        X.col(i) << 50.0 * (i % 2) + std::cos(t), std::sin(t);
    }
    const PointCloud c(X);
    LleParams p;
    p.k = 2;
    p.lambda = 0.0;
    EXPECT_THROW(run_lle(c, p), EigenSolverError);
    p.lambda = 1e-9;
    EXPECT_NO_THROW(run_lle(c, p));
    p.lambda = -1.0;
    EXPECT_THROW(run_lle(c, p), std::invalid_argument);
}

TEST(Embed, NormalizationAndSolverAgreement)
{
    const PointCloud c = random_cloud(3, 120, 11);
    LleParams p;
    p.k = 6;
    p.d = 3;
    p.embed.solver = EigenSolverKind::Dense;
    const Embedding a = run_lle(c, p);
    p.embed.solver = EigenSolverKind::Lanczos;
    const Embedding b = run_lle(c, p);
    ASSERT_EQ(a.Y.rows(), 3);
    ASSERT_EQ(a.Y.cols(), 120);
    for (const Embedding* e : {&a, &b}) {
        EXPECT_LT(e->Y.rowwise().mean().cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((e->Y * e->Y.transpose() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_TRUE(std::is_sorted(e->eigenvalues.data(), e->eigenvalues.data() + 3));
    }
    EXPECT_LT(oracle::principal_angle(a.Y.transpose(), b.Y.transpose()), 1e-6);
    EXPECT_THROW(embed(build_cost_matrix(solve_weights(c, knn(c, 6))), 0), std::invalid_argument);
}

TEST(Embed, SignCanonicalAndDeterministic)
{
    const PointCloud c = random_cloud(3, 80, 12);
    const Embedding a = run_lle(c);
    const Embedding b = run_lle(c);
    EXPECT_EQ(a.Y, b.Y);
    for (Index r = 0; r < a.Y.rows(); ++r) {
        Index arg;
        a.Y.row(r).cwiseAbs().maxCoeff(&arg);
        EXPECT_GT(a.Y(r, arg), 0.0);
    }
}

TEST(Embed, PermutationEquivariantUpToSubspace)
{
    const PointCloud c = random_cloud(3, 60, 21);
    std::vector<Index> perm(60);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(2);
    std::shuffle(perm.begin(), perm.end(), rng);
    LleParams p;
    p.lambda = 0.0; // the path perturbation depends on index order
    p.k = 8;
    const Embedding a = run_lle(c, p);
    const Embedding b = run_lle(c.subset(perm), p);
    Eigen::MatrixXd back(2, 60);
    for (Index j = 0; j < 60; ++j)
        back.col(perm[j]) = b.Y.col(j);
    EXPECT_LT(oracle::principal_angle(a.Y.transpose(), back.transpose()), 1e-6);
}

TEST(Embed, RigidMotionInvariant)
{
    Rng rng(31);
    const Eigen::MatrixXd X = oracle::random_matrix(3, 70, rng);
    const Eigen::MatrixXd R = oracle::random_rotation(3, rng);
    const PointCloud a(X), b((R * X).array() + 4.0);
    const Embedding ea = run_lle(a), eb = run_lle(b);
    EXPECT_LT(oracle::principal_angle(ea.Y.transpose(), eb.Y.transpose()), 1e-6);
}

TEST(Embed, TorusEmbeddingKeepsAdjacentFramesClose)
{
    TorusSpec spec;
    spec.seed = 3;
    LleParams p;
    p.d = 3;
    const Embedding e = run_lle(torus_dataset(spec), p);
    const auto nbrs = oracle::knn(e.Y, 8);
    Index good = 0;
    for (Index i = 0; i < e.Y.cols(); ++i) {
        int hits = 0;
        for (Index a : torus_adjacent(spec, i))
            hits += std::count(nbrs[i].begin(), nbrs[i].end(), a) > 0;
        good += hits >= 2;
    }
    EXPECT_GE(good, 320);
}
