#pragma once

#include "llec/geometry.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace llec {

struct Clustering;

/// Prototype vectors, one per column.
struct Codebook
{
    Eigen::MatrixXd centers;
    std::string origin;

    Index size() const { return centers.cols(); }
};

enum class InitKind
{
    LlecPalette,
    HandIdentified,
    RandomRgb,
    RandomFromData,
};

struct Initializer
{
    InitKind kind = InitKind::RandomFromData;
    Index n = 25;
    std::uint64_t seed = 0;
    /// LlecPalette: the palette centers (3 x S). HandIdentified: optional
    /// override of the named colors (3 x q); empty uses the default table.
    Eigen::MatrixXd colors;
};

/// The default 17 named colors (greens, yellows, blues, whites, blacks), 3 x 17 in [0, 1].
Eigen::MatrixXd default_hand_colors();

/// The 8 corners of the unit color cube followed by the named colors.
Eigen::MatrixXd hand_identified_centers(const Eigen::MatrixXd& named = default_hand_colors());

Codebook init_centers(const PointCloud& cloud, const Initializer& init);

/// Prototypes of a segmentation as a codebook.
Codebook codebook_from_clustering(const Clustering& clustering);

enum class EmptyRegionPolicy
{
    KeepCenter,
    ReseedFarthest,
};

struct LbgOptions
{
    int max_iters = 15;
    double stop_tol = 0.0;
    EmptyRegionPolicy empty_region = EmptyRegionPolicy::KeepCenter;
};

struct LbgResult
{
    Codebook codebook;
    std::vector<Index> assignment;  ///< nearest center under the final codebook
    std::vector<double> history;    ///< D after each assignment step
    double final_distortion = 0.0;
    int iterations = 0;
};

/// Nearest center per point, lowest center index on ties.
std::vector<Index> nearest_centers(const PointCloud& cloud, const Codebook& codebook);

/**
 * Linde-Buzo-Gray iteration: assign to nearest center, move every nonempty
 * center to its region mean. Stops after max_iters, at a fixed point, or
 * when the relative improvement of D drops below stop_tol (when > 0).
 */
LbgResult lbg(const PointCloud& cloud, Codebook codebook, const LbgOptions& options = {});

/// ||X - X*||_F^2 summed column by column.
double squared_residual(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Xstar);

/// Columns replaced by their assigned centers.
PointCloud quantize(const PointCloud& cloud, const Codebook& codebook, std::span<const Index> assignment);

/// D(X, J) = (1/p) sum ||x - c_j||^2 over the assignment.
double distortion(const PointCloud& cloud, const Codebook& codebook, std::span<const Index> assignment);

} // namespace llec
