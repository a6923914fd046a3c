#include "llec/segmentation.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace llec {

namespace {

Index bth_neighbor_seed(const Eigen::MatrixXd& Y, std::span<const Index> active, int b)
{
    const auto n = static_cast<Index>(active.size());
    const Index rank = (n <= b) ? (n + 1) / 2 : b;
    std::vector<double> d2(static_cast<std::size_t>(n - 1));
    double best = std::numeric_limits<double>::infinity();
    Index best_idx = active[0];
    for (Index a = 0; a < n; ++a) {
        Index t = 0;
        for (Index c = 0; c < n; ++c)
            if (c != a)
                d2[t++] = (Y.col(active[c]) - Y.col(active[a])).squaredNorm();
        std::nth_element(d2.begin(), d2.begin() + (rank - 1), d2.end());
        if (d2[rank - 1] < best) {
            best = d2[rank - 1];
            best_idx = active[a];
        }
    }
    return best_idx;
}

Index densest_ball_seed(const Eigen::MatrixXd& Y, std::span<const Index> active, double radius)
{
    const double r2 = radius * radius;
    Index best_count = -1;
    Index best_idx = active[0];
    for (Index a : active) {
        Index count = 0;
        for (Index c : active)
            if ((Y.col(c) - Y.col(a)).squaredNorm() <= r2)
                ++count;
        if (count > best_count) {
            best_count = count;
            best_idx = a;
        }
    }
    return best_idx;
}

Index min_sv_ratio_seed(const Eigen::MatrixXd& Y, std::span<const Index> active, double radius)
{
    const double r2 = radius * radius;
    double best = std::numeric_limits<double>::infinity();
    Index best_idx = active[0];
    std::vector<Index> ball;
    for (Index a : active) {
        ball.clear();
        for (Index c : active)
            if ((Y.col(c) - Y.col(a)).squaredNorm() <= r2)
                ball.push_back(c);
        if (ball.size() < 2)
            continue;
        Eigen::MatrixXd A(static_cast<Index>(ball.size()), Y.rows());
        for (std::size_t r = 0; r < ball.size(); ++r)
            A.row(static_cast<Index>(r)) = Y.col(ball[r]).transpose();
        A.rowwise() -= A.colwise().mean();
        const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues();
        if (!(sv(0) > 0.0))
            continue;
        const double ratio = sv.size() > 1 ? sv(1) / sv(0) : 0.0;
        if (ratio < best) {
            best = ratio;
            best_idx = a;
        }
    }
    return best_idx;
}

} // namespace

Index select_seed(const Eigen::MatrixXd& Y, const Eigen::MatrixXd& X, std::span<const Index> active,
                  const SeedStrategy& strategy, double default_eps_ball, Rng& rng)
{
    (void)X; // all strategies work on embedding positions only
    if (active.empty())
        throw std::invalid_argument("select_seed: no active points");
    if (strategy.b < 1)
        throw std::invalid_argument("select_seed: b must be at least 1");
    const double radius = strategy.eps_ball.value_or(default_eps_ball);
    if (!(radius > 0.0))
        throw std::invalid_argument("select_seed: ball radius must be positive");
    if (active.size() == 1)
        return active[0];

    switch (strategy.kind) {
    case SeedKind::Random:
        return active[uniform_index(rng, active.size())];
    case SeedKind::DensestBall:
        return densest_ball_seed(Y, active, radius);
    case SeedKind::BthNeighbor:
        return bth_neighbor_seed(Y, active, strategy.b);
    case SeedKind::MinSvRatio:
        return min_sv_ratio_seed(Y, active, radius);
    }
    throw std::invalid_argument("select_seed: unknown strategy");
}

Subspace principal_subspace(const Eigen::MatrixXd& points, int m)
{
    if (m < 1)
        throw std::invalid_argument("principal_subspace: m must be positive");
    if (points.cols() < 2)
        throw std::invalid_argument("principal_subspace: need at least two points");

    Subspace out;
    out.center = points.rowwise().mean();
    const Eigen::MatrixXd A = (points.colwise() - out.center).transpose();
    if (A.cwiseAbs().maxCoeff() == 0.0)
        throw std::invalid_argument("principal_subspace: all points coincide");

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    out.basis = svd.matrixV().leftCols(std::min<Index>(m, points.rows()));
    return out;
}

std::vector<Index> assign_to_subspace(const Eigen::MatrixXd& Y, const Eigen::MatrixXd& X,
                                      std::span<const Index> active, const Subspace& subspace,
                                      const Eigen::Ref<const Eigen::VectorXd>& seed_color,
                                      double eps1, double eps2)
{
    std::vector<Index> out;
    const Eigen::MatrixXd& B = subspace.basis;
    for (Index i : active) {
        const Eigen::VectorXd r = Y.col(i) - subspace.center;
        const double residual = B.cols() ? (r - B * (B.transpose() * r)).norm() : r.norm();
        if (residual < eps1 && (X.col(i) - seed_color).norm() < eps2)
            out.push_back(i);
    }
    return out;
}

Clustering segment(const Eigen::MatrixXd& Y, const PointCloud& colors, const SegmentParams& params)
{
    const Index p = Y.cols();
    if (colors.size() != p)
        throw std::invalid_argument("segment: embedding and colors differ in point count");
    if (!(params.eps1 > 0.0) || !(params.eps2 > 0.0))
        throw std::invalid_argument("segment: eps1 and eps2 must be positive");
    if (params.m < 1)
        throw std::invalid_argument("segment: m must be positive");
    const double ball_radius = params.eps_ball.value_or(params.eps1);
    if (!(ball_radius > 0.0))
        throw std::invalid_argument("segment: eps_ball must be positive");

    const Eigen::MatrixXd& X = colors.data();
    Rng rng(params.strategy.seed);
    std::vector<Index> active(static_cast<std::size_t>(p));
    std::iota(active.begin(), active.end(), Index{0});

    Clustering out;
    out.assignment.assign(static_cast<std::size_t>(p), -1);
    const double r2 = ball_radius * ball_radius;

    while (!active.empty()) {
        const Index seed = select_seed(Y, X, active, params.strategy, ball_radius, rng);

        std::vector<Index> ball;
        for (Index i : active)
            if ((Y.col(i) - Y.col(seed)).squaredNorm() <= r2)
                ball.push_back(i);
        bool degenerate = ball.size() < 2;
        if (!degenerate) {
            degenerate = std::all_of(ball.begin(), ball.end(),
                                     [&](Index i) { return Y.col(i) == Y.col(seed); });
        }

        SubspaceCluster cluster;
        cluster.seed = seed;
        if (degenerate) {
            // Zero-dimensional subspace: only exact embedding matches qualify.
            cluster.subspace.basis.resize(Y.rows(), 0);
            cluster.subspace.center = Y.col(seed);
            cluster.members = assign_to_subspace(Y, X, active, cluster.subspace, X.col(seed),
                                                 std::numeric_limits<double>::denorm_min(),
                                                 params.eps2);
        } else {
            Eigen::MatrixXd pts(Y.rows(), static_cast<Index>(ball.size()));
            for (std::size_t c = 0; c < ball.size(); ++c)
                pts.col(static_cast<Index>(c)) = Y.col(ball[c]);
            cluster.subspace = principal_subspace(pts, params.m);
            cluster.members = assign_to_subspace(Y, X, active, cluster.subspace, X.col(seed),
                                                 params.eps1, params.eps2);
        }
        // seed always joins its own cluster
        if (!std::binary_search(cluster.members.begin(), cluster.members.end(), seed))
            cluster.members.insert(
                std::lower_bound(cluster.members.begin(), cluster.members.end(), seed), seed);

        cluster.prototype = Eigen::VectorXd::Zero(X.rows());
        cluster.embedding_mean = Eigen::VectorXd::Zero(Y.rows());
        for (Index i : cluster.members) {
            cluster.prototype += X.col(i);
            cluster.embedding_mean += Y.col(i);
            out.assignment[i] = out.size();
        }
        cluster.prototype /= static_cast<double>(cluster.members.size());
        cluster.embedding_mean /= static_cast<double>(cluster.members.size());

        std::vector<Index> rest;
        rest.reserve(active.size() - cluster.members.size());
        std::set_difference(active.begin(), active.end(), cluster.members.begin(),
                            cluster.members.end(), std::back_inserter(rest));
        active.swap(rest);
        out.clusters.push_back(std::move(cluster));
    }
    return out;
}

Clustering llec_cluster(const PointCloud& cloud, const LlecParams& params)
{
    const Embedding embedding = run_lle(cloud, params.lle);
    return segment(embedding.Y, cloud, params.segment);
}

PointCloud reconstruct(const PointCloud& cloud, const Clustering& clustering)
{
    if (static_cast<Index>(clustering.assignment.size()) != cloud.size())
        throw std::invalid_argument("reconstruct: assignment does not cover the cloud");
    Eigen::MatrixXd out(cloud.dim(), cloud.size());
    for (Index i = 0; i < cloud.size(); ++i)
        out.col(i) = clustering.clusters.at(static_cast<std::size_t>(clustering.assignment[i])).prototype;
    return PointCloud(std::move(out));
}

} // namespace llec
