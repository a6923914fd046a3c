#pragma once

#include "llec/geometry.hpp"
#include "llec/imaging.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace llec {

/// A zero block translated over a fixed noise background, with wrapping.
struct TorusSpec
{
    int bg_size = 20;
    int block_size = 10;
    std::uint64_t seed = 0;
};

/**
 * bg_size^2 frames of dimension bg_size^2. Frame r * bg_size + c holds the
 * shared uniform [0, 1) background with the block zeroed at rows r.. and
 * columns c.. (mod bg_size); frames are flattened row-major.
 */
PointCloud torus_dataset(const TorusSpec& spec);

/// The 4 frames whose block offsets differ by one step (toroidally).
std::array<Index, 4> torus_adjacent(const TorusSpec& spec, Index frame);

/// Noisy samples along affine lines, one color per line.
struct LineCloudSpec
{
    int num_lines = 3;
    int points_per_line = 100;
    int ambient_dim = 3;
    double noise_sigma = 0.0;
    double length = 1.0;
    /// Default placement: line l is anchored at separation * l along the
    /// last axis, its direction drawn in the span of the other axes, so any
    /// two lines are at least `separation` apart.
    double separation = 1.0;
    /// Optional explicit geometry (ambient_dim x num_lines each).
    Eigen::MatrixXd anchors;
    Eigen::MatrixXd directions;
    /// D x num_lines; empty gives distinct corners of the unit cube.
    Eigen::MatrixXd colors;
    std::uint64_t seed = 0;
};

struct LineCloud
{
    PointCloud colors;
    PointCloud positions;
    std::vector<Index> labels;
};

LineCloud line_cloud(const LineCloudSpec& spec);

/// Flat color regions (vertical bands of equal width) plus uniform noise.
struct RegionImageSpec
{
    int width = 64;
    int height = 64;
    /// 3 x regions in [0, 1].
    Eigen::MatrixXd colors;
    /// Each channel gets an independent uniform offset in [-noise, noise].
    double noise = 0.02;
    std::uint64_t seed = 0;
};

struct RegionImage
{
    RasterImage image;
    std::vector<Index> labels; ///< region of every pixel, row-major
};

RegionImage region_image(const RegionImageSpec& spec);

/// Five well-separated colors used by the default region image.
Eigen::MatrixXd five_region_colors();

} // namespace llec
