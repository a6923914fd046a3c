#pragma once

#include "llec/geometry.hpp"
#include "llec/lle.hpp"
#include "llec/rng.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace llec {

enum class SeedKind
{
    Random,
    DensestBall,
    BthNeighbor,
    MinSvRatio,
};

/// How the seed point y* of each segmentation round is chosen.
struct SeedStrategy
{
    SeedKind kind = SeedKind::BthNeighbor;
    /// Ball radius for DensestBall and MinSvRatio; unset means "use the
    /// segmentation ball radius".
    std::optional<double> eps_ball;
    int b = 50;
    std::uint64_t seed = 0;

    static SeedStrategy random(std::uint64_t seed) { return {SeedKind::Random, {}, 50, seed}; }
    static SeedStrategy densest_ball(std::optional<double> r = {}) { return {SeedKind::DensestBall, r, 50, 0}; }
    static SeedStrategy bth_neighbor(int b = 50) { return {SeedKind::BthNeighbor, {}, b, 0}; }
    static SeedStrategy min_sv_ratio(std::optional<double> r = {}) { return {SeedKind::MinSvRatio, r, 50, 0}; }
};

/// Affine subspace center + span(basis). Basis columns are orthonormal; an
/// empty basis is the zero-dimensional subspace {center}.
struct Subspace
{
    Eigen::MatrixXd basis;
    Eigen::VectorXd center;
};

struct SubspaceCluster
{
    std::vector<Index> members; ///< sorted point indices
    Subspace subspace;
    Index seed = 0;
    Eigen::VectorXd prototype;      ///< mean original color of the members
    Eigen::VectorXd embedding_mean; ///< mean embedding vector of the members
};

struct Clustering
{
    std::vector<SubspaceCluster> clusters;
    std::vector<Index> assignment; ///< point -> cluster
    Index size() const { return static_cast<Index>(clusters.size()); }
};

/**
 * Choose y* among `active` (indices into the columns of Y and X).
 *
 * BthNeighbor replaces b by ceil(n/2) when n = |active| <= b. Ties go to the
 * lower index. `rng` is consumed only by SeedKind::Random.
 */
Index select_seed(const Eigen::MatrixXd& Y, const Eigen::MatrixXd& X, std::span<const Index> active,
                  const SeedStrategy& strategy, double default_eps_ball, Rng& rng);

/// Top-m principal directions of points (columns) centered at their mean.
Subspace principal_subspace(const Eigen::MatrixXd& points, int m);

/**
 * Active points within eps1 of the affine subspace and within eps2 (color
 * distance) of seed_color. Both comparisons are strict.
 */
std::vector<Index> assign_to_subspace(const Eigen::MatrixXd& Y, const Eigen::MatrixXd& X,
                                      std::span<const Index> active, const Subspace& subspace,
                                      const Eigen::Ref<const Eigen::VectorXd>& seed_color,
                                      double eps1, double eps2);

struct SegmentParams
{
    double eps1 = 0.4;
    double eps2 = 0.4;
    std::optional<double> eps_ball; ///< defaults to eps1
    int m = 1;
    SeedStrategy strategy;
};

/// Iterative subspace segmentation of an embedding Y (d x p) whose columns
/// correspond to the columns of `colors`.
Clustering segment(const Eigen::MatrixXd& Y, const PointCloud& colors, const SegmentParams& params);

struct LlecParams
{
    LleParams lle;
    SegmentParams segment;
};

/// run_lle followed by segment.
Clustering llec_cluster(const PointCloud& cloud, const LlecParams& params = {});

/// Every column replaced by its cluster's prototype.
PointCloud reconstruct(const PointCloud& cloud, const Clustering& clustering);

} // namespace llec
