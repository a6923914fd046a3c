#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace llec {

using Index = Eigen::Index;

/**
 * D x p collection of points, one point per column.
 *
 * Construction validates shape (D >= 1, p >= 1) and finiteness. Clouds built
 * from images additionally hold values in [0, 1]; that is checked by the
 * imaging layer, not here, since synthetic clouds (torus frames, line
 * positions) are not bounded.
 */
class PointCloud
{
public:
    PointCloud() = default;
    explicit PointCloud(Eigen::MatrixXd data);

    Index dim() const { return data_.rows(); }
    Index size() const { return data_.cols(); }
    bool empty() const { return data_.cols() == 0; }

    const Eigen::MatrixXd& data() const { return data_; }
    auto point(Index i) const { return data_.col(i); }

    /// Columns selected by `indices`, in order.
    PointCloud subset(std::span<const Index> indices) const;

    bool in_unit_cube() const;

    friend bool operator==(const PointCloud& a, const PointCloud& b)
    {
        return a.data_.rows() == b.data_.rows() && a.data_.cols() == b.data_.cols() &&
               a.data_ == b.data_;
    }

private:
    Eigen::MatrixXd data_;
};

enum class Metric
{
    Euclidean,
};

double distance(const Eigen::Ref<const Eigen::VectorXd>& a,
                const Eigen::Ref<const Eigen::VectorXd>& b, Metric metric = Metric::Euclidean);

/// k nearest neighbors per point, flat row-per-point storage.
class NeighborGraph
{
public:
    NeighborGraph() = default;
    NeighborGraph(Index points, int k, std::vector<Index> indices);

    int k() const { return k_; }
    Index size() const { return points_; }

    /// Neighbors of point i sorted by nondecreasing distance.
    std::span<const Index> neighbors(Index i) const
    {
        return {indices_.data() + static_cast<std::size_t>(i) * k_, static_cast<std::size_t>(k_)};
    }

    const std::vector<Index>& flat() const { return indices_; }

private:
    Index points_ = 0;
    int k_ = 0;
    std::vector<Index> indices_;
};

/// Thrown when some point has fewer than k candidates at positive distance.
class NeighborSearchError : public std::runtime_error
{
public:
    NeighborSearchError(Index point, Index available, int k);

    Index point() const { return point_; }
    Index available() const { return available_; }

private:
    Index point_;
    Index available_;
};

/**
 * Brute-force k-nearest-neighbor search.
 *
 * Candidates at distance exactly zero (duplicates, including the point
 * itself) are never neighbors. Equidistant candidates are ordered by lower
 * index, so the result is fully deterministic.
 */
NeighborGraph knn(const PointCloud& cloud, int k, Metric metric = Metric::Euclidean);

/// Connected components of the symmetrized neighbor graph, labels 0..c-1.
std::vector<Index> neighbor_components(const NeighborGraph& graph, Index* count = nullptr);

} // namespace llec
