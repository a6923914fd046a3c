#include "llec/vq.hpp"

#include "llec/rng.hpp"
#include "llec/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace llec {

Eigen::MatrixXd default_hand_colors()
{
    // Same table as config/hand_colors.txt, in 0..255.
    static const int table[17][3] = {
        {34, 139, 34},   {0, 100, 0},     {107, 142, 35}, {124, 170, 60},  {60, 110, 50},
        {255, 215, 0},   {230, 200, 60},  {240, 230, 140},
        {30, 60, 160},   {70, 110, 200},  {100, 149, 237},
        {245, 245, 245}, {220, 220, 225}, {200, 205, 210},
        {15, 15, 15},    {35, 35, 30},    {55, 50, 45},
    };
    Eigen::MatrixXd out(3, 17);
    for (int j = 0; j < 17; ++j)
        for (int c = 0; c < 3; ++c)
            out(c, j) = table[j][c] / 255.0;
    return out;
}

Eigen::MatrixXd hand_identified_centers(const Eigen::MatrixXd& named)
{
    if (named.rows() != 3)
        throw std::invalid_argument("hand-identified colors must be RGB triples");
    Eigen::MatrixXd out(3, 8 + named.cols());
    for (int corner = 0; corner < 8; ++corner)
        for (int c = 0; c < 3; ++c)
            out(c, corner) = (corner >> (2 - c)) & 1;
    out.rightCols(named.cols()) = named;
    return out;
}

Codebook init_centers(const PointCloud& cloud, const Initializer& init)
{
    if (cloud.empty())
        throw std::invalid_argument("init_centers: empty cloud");
    Codebook out;
    switch (init.kind) {
    case InitKind::LlecPalette:
        if (init.colors.cols() < 1 || init.colors.rows() != cloud.dim())
            throw std::invalid_argument("init_centers: palette must hold at least one center of the cloud's dimension");
        out.centers = init.colors;
        out.origin = "llec-palette";
        break;
    case InitKind::HandIdentified:
        if (cloud.dim() != 3)
            throw std::invalid_argument("init_centers: hand-identified centers need RGB data");
        out.centers = hand_identified_centers(init.colors.size() ? init.colors : default_hand_colors());
        out.origin = "hand-identified";
        break;
    case InitKind::RandomRgb: {
        if (init.n < 1)
            throw std::invalid_argument("init_centers: n must be positive");
        Rng rng(init.seed);
        out.centers.resize(cloud.dim(), init.n);
        for (Index j = 0; j < init.n; ++j)
            for (Index c = 0; c < cloud.dim(); ++c)
                out.centers(c, j) = uniform01(rng);
        out.origin = "random-rgb";
        break;
    }
    case InitKind::RandomFromData: {
        if (init.n < 1)
            throw std::invalid_argument("init_centers: n must be positive");
        if (init.n > cloud.size())
            throw std::invalid_argument("init_centers: n = " + std::to_string(init.n) +
                                        " exceeds the number of points " + std::to_string(cloud.size()));
        // Partial Fisher-Yates draw without replacement.
        Rng rng(init.seed);
        std::vector<Index> idx(static_cast<std::size_t>(cloud.size()));
        std::iota(idx.begin(), idx.end(), Index{0});
        out.centers.resize(cloud.dim(), init.n);
        for (Index j = 0; j < init.n; ++j) {
            const auto pick = j + static_cast<Index>(uniform_index(rng, cloud.size() - j));
            std::swap(idx[j], idx[pick]);
            out.centers.col(j) = cloud.point(idx[j]);
        }
        out.origin = "random-from-data";
        break;
    }
    }
    return out;
}

Codebook codebook_from_clustering(const Clustering& clustering)
{
    if (clustering.clusters.empty())
        throw std::invalid_argument("codebook_from_clustering: no clusters");
    Codebook out;
    out.centers.resize(clustering.clusters.front().prototype.size(), clustering.size());
    for (Index j = 0; j < clustering.size(); ++j)
        out.centers.col(j) = clustering.clusters[j].prototype;
    out.origin = "llec-palette";
    return out;
}

std::vector<Index> nearest_centers(const PointCloud& cloud, const Codebook& codebook)
{
    if (codebook.size() < 1 || codebook.centers.rows() != cloud.dim())
        throw std::invalid_argument("nearest_centers: codebook does not match the cloud");
    const Index p = cloud.size();
    std::vector<Index> out(static_cast<std::size_t>(p));
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < p; ++i) {
        Index best = 0;
        double best_d2 = (cloud.point(i) - codebook.centers.col(0)).squaredNorm();
        for (Index j = 1; j < codebook.size(); ++j) {
            const double d2 = (cloud.point(i) - codebook.centers.col(j)).squaredNorm();
            if (d2 < best_d2) {
                best_d2 = d2;
                best = j;
            }
        }
        out[i] = best;
    }
    return out;
}

double squared_residual(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Xstar)
{
    if (X.rows() != Xstar.rows() || X.cols() != Xstar.cols())
        throw std::invalid_argument("squared_residual: shape mismatch");
    double total = 0.0;
    for (Index i = 0; i < X.cols(); ++i)
        total += (X.col(i) - Xstar.col(i)).squaredNorm();
    return total;
}

PointCloud quantize(const PointCloud& cloud, const Codebook& codebook, std::span<const Index> assignment)
{
    if (static_cast<Index>(assignment.size()) != cloud.size())
        throw std::invalid_argument("quantize: assignment does not cover the cloud");
    Eigen::MatrixXd out(cloud.dim(), cloud.size());
    for (Index i = 0; i < cloud.size(); ++i) {
        if (assignment[i] < 0 || assignment[i] >= codebook.size())
            throw std::invalid_argument("quantize: assignment refers to a missing center");
        out.col(i) = codebook.centers.col(assignment[i]);
    }
    return PointCloud(std::move(out));
}

double distortion(const PointCloud& cloud, const Codebook& codebook, std::span<const Index> assignment)
{
    const PointCloud xstar = quantize(cloud, codebook, assignment);
    return squared_residual(cloud.data(), xstar.data()) / static_cast<double>(cloud.size());
}

LbgResult lbg(const PointCloud& cloud, Codebook codebook, const LbgOptions& options)
{
    if (options.max_iters < 1)
        throw std::invalid_argument("lbg: max_iters must be at least 1");
    if (options.stop_tol < 0.0)
        throw std::invalid_argument("lbg: stop_tol must be nonnegative");

    LbgResult out;
    const Index dim = cloud.dim();
    for (int iter = 0; iter < options.max_iters; ++iter) {
        const std::vector<Index> assignment = nearest_centers(cloud, codebook);
        const double D = distortion(cloud, codebook, assignment);
        out.history.push_back(D);
        out.iterations = iter + 1;

        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(dim, codebook.size());
        std::vector<Index> counts(static_cast<std::size_t>(codebook.size()), 0);
        for (Index i = 0; i < cloud.size(); ++i) {
            sums.col(assignment[i]) += cloud.point(i);
            ++counts[assignment[i]];
        }

        Eigen::MatrixXd next = codebook.centers;
        for (Index j = 0; j < codebook.size(); ++j) {
            if (counts[j] > 0) {
                next.col(j) = sums.col(j) / static_cast<double>(counts[j]);
            } else if (options.empty_region == EmptyRegionPolicy::ReseedFarthest) {
                Index far = 0;
                double far_d2 = -1.0;
                for (Index i = 0; i < cloud.size(); ++i) {
                    const double d2 = (cloud.point(i) - codebook.centers.col(assignment[i])).squaredNorm();
                    if (d2 > far_d2) {
                        far_d2 = d2;
                        far = i;
                    }
                }
                next.col(j) = cloud.point(far);
            }
        }

        const bool fixed_point = (next == codebook.centers);
        codebook.centers = std::move(next);
        if (fixed_point)
            break;
        if (options.stop_tol > 0.0 && out.history.size() >= 2) {
            const double prev = out.history[out.history.size() - 2];
            if (prev > 0.0 && (prev - D) / prev < options.stop_tol)
                break;
        }
    }

    out.assignment = nearest_centers(cloud, codebook);
    out.final_distortion = distortion(cloud, codebook, out.assignment);
    out.codebook = std::move(codebook);
    return out;
}

} // namespace llec
