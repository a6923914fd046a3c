#include "llec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace llec {

PointCloud::PointCloud(Eigen::MatrixXd data) : data_(std::move(data))
{
    if (data_.rows() < 1 || data_.cols() < 1)
        throw std::invalid_argument("point cloud needs at least one dimension and one point");
    if (!data_.allFinite())
        throw std::invalid_argument("point cloud contains non-finite values");
}

PointCloud PointCloud::subset(std::span<const Index> indices) const
{
    Eigen::MatrixXd out(dim(), static_cast<Index>(indices.size()));
    for (std::size_t j = 0; j < indices.size(); ++j)
        out.col(static_cast<Index>(j)) = data_.col(indices[j]);
    return PointCloud(std::move(out));
}

bool PointCloud::in_unit_cube() const
{
    return (data_.array() >= 0.0).all() && (data_.array() <= 1.0).all();
}

double distance(const Eigen::Ref<const Eigen::VectorXd>& a,
                const Eigen::Ref<const Eigen::VectorXd>& b, Metric metric)
{
    if (a.size() != b.size())
        throw std::invalid_argument("distance: dimension mismatch (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
    switch (metric) {
    case Metric::Euclidean:
        return (a - b).norm();
    }
    throw std::invalid_argument("distance: unknown metric");
}

NeighborGraph::NeighborGraph(Index points, int k, std::vector<Index> indices)
    : points_(points), k_(k), indices_(std::move(indices))
{
    if (static_cast<Index>(indices_.size()) != points_ * k_)
        throw std::invalid_argument("neighbor graph: index storage does not match p * k");
}

NeighborSearchError::NeighborSearchError(Index point, Index available, int k)
    : std::runtime_error("knn: point " + std::to_string(point) + " has only " +
                         std::to_string(available) +
                         " neighbors at positive distance, k = " + std::to_string(k)),
      point_(point), available_(available)
{
}

NeighborGraph knn(const PointCloud& cloud, int k, Metric metric)
{
    if (k < 1)
        throw std::invalid_argument("knn: k must be positive");
    if (metric != Metric::Euclidean)
        throw std::invalid_argument("knn: unsupported metric");

    const Index p = cloud.size();
    const Eigen::MatrixXd& X = cloud.data();
    std::vector<Index> out(static_cast<std::size_t>(p) * k);

    // Errors inside the parallel region are recorded, lowest point wins.
    Index bad_point = p;
    Index bad_count = 0;

#pragma omp parallel
    {
        std::vector<std::pair<double, Index>> cand;
        cand.reserve(static_cast<std::size_t>(p));

#pragma omp for schedule(static)
        for (Index i = 0; i < p; ++i) {
            cand.clear();
            for (Index j = 0; j < p; ++j) {
                if (j == i)
                    continue;
                const double d2 = (X.col(j) - X.col(i)).squaredNorm();
                if (d2 > 0.0)
                    cand.emplace_back(d2, j);
            }
            if (static_cast<Index>(cand.size()) < k) {
#pragma omp critical(llec_knn_error)
                if (i < bad_point) {
                    bad_point = i;
                    bad_count = static_cast<Index>(cand.size());
                }
                continue;
            }
            // Lexicographic (distance, index) gives the lower-index tie rule.
            std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
            for (int r = 0; r < k; ++r)
                out[static_cast<std::size_t>(i) * k + r] = cand[r].second;
        }
    }

    if (bad_point < p)
        throw NeighborSearchError(bad_point, bad_count, k);
    return NeighborGraph(p, k, std::move(out));
}

std::vector<Index> neighbor_components(const NeighborGraph& graph, Index* count)
{
    const Index p = graph.size();
    std::vector<Index> parent(static_cast<std::size_t>(p));
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (Index i = 0; i < p; ++i)
        for (Index j : graph.neighbors(i)) {
            const Index a = find(i), b = find(j);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }

    std::vector<Index> label(static_cast<std::size_t>(p), -1);
    std::vector<Index> root_label(static_cast<std::size_t>(p), -1);
    Index next = 0;
    for (Index i = 0; i < p; ++i) {
        const Index r = find(i);
        if (root_label[r] < 0)
            root_label[r] = next++;
        label[i] = root_label[r];
    }
    if (count)
        *count = next;
    return label;
}

} // namespace llec
